#pragma once

#include "casimir/thermo.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace casimir
{
    inline constexpr const char *kVersion = "1.0.0";

    enum class SweepAxis
    {
        T,
        a,
        A // mapped to T at the fixed separation
    };

    enum class Spacing
    {
        Linear,
        Log
    };

    std::string_view to_string(SweepAxis a);
    SweepAxis sweep_axis_from_string(std::string_view s);
    std::string_view to_string(Spacing s);
    Spacing spacing_from_string(std::string_view s);

    struct SweepSpec
    {
        SweepAxis axis = SweepAxis::T;
        double min = 1.0;
        double max = 80.0;
        int count = 2;
        Spacing spacing = Spacing::Linear;
        double fixed_a = 300e-9; // m, held when axis != a
        double fixed_T = 50.0;   // K, held when axis == a
        std::vector<Prescription> prescriptions = {Prescription::IdealStatic};
        ModelKind model = ModelKind::Impedance;
        ThermoConfig thermo;
        EvaluateOptions observables{false, false, std::nullopt};
        unsigned threads = 0; // 0: hardware concurrency

        /// Throws std::invalid_argument unless min < max and count >= 2.
        void validate() const;
    };

    /// Grid points in axis order. Log spacing hits both ends exactly.
    std::vector<double> sweep_points(const SweepSpec &spec);

    struct SweepRow
    {
        double axis_value = 0.0;
        Prescription prescription = Prescription::IdealStatic;
        std::optional<CorrectionResult> result;
        std::string error;
    };

    /// Evaluates every (point, prescription) pair, concurrently; rows come
    /// back ordered by point, then by prescription as listed.
    std::vector<SweepRow> run_sweep(const SweepSpec &spec, const MaterialParams &m);

    bool any_failed(const std::vector<SweepRow> &rows);

    /// '#' header lines describing the inputs, then one CSV row per result.
    /// `timestamp` is printed on its own header line when non-empty.
    // Quotes a CSV field; empty input stays empty.
    std::string csv_escape(const std::string &s);

    void write_sweep_csv(std::ostream &os, const SweepSpec &spec, const MaterialParams &m,
                         const std::vector<SweepRow> &rows, const std::string &timestamp);

    /// Header lines shared by every CSV writer.
    void write_material_header(std::ostream &os, const MaterialParams &m);

    /// Runs fn(i) for i in [0, n) on up to `threads` workers.
    void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)> &fn);

    /// Current UTC time as ISO 8601.
    std::string utc_timestamp();
} // namespace casimir
