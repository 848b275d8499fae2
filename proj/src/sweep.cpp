#include "casimir/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fmt/format.h>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace casimir
{
    std::string_view to_string(SweepAxis a)
    {
        switch (a) {
        case SweepAxis::T:
            return "T";
        case SweepAxis::a:
            return "a";
        case SweepAxis::A:
            return "A";
        }
        return "?";
    }

    SweepAxis sweep_axis_from_string(std::string_view s)
    {
        if (s == "T")
            return SweepAxis::T;
        if (s == "a")
            return SweepAxis::a;
        if (s == "A")
            return SweepAxis::A;
        throw std::invalid_argument(fmt::format("unknown sweep axis '{}' (T, a or A)", s));
    }

    std::string_view to_string(Spacing s)
    {
        return s == Spacing::Log ? "log" : "linear";
    }

    Spacing spacing_from_string(std::string_view s)
    {
        if (s == "linear")
            return Spacing::Linear;
        if (s == "log")
            return Spacing::Log;
        throw std::invalid_argument(fmt::format("unknown spacing '{}' (linear or log)", s));
    }

    void SweepSpec::validate() const
    {
        if (!(min < max))
            throw std::invalid_argument("SweepSpec: min must be below max");
        if (count < 2)
            throw std::invalid_argument("SweepSpec: count must be at least 2");
        if (spacing == Spacing::Log && !(min > 0.0))
            throw std::invalid_argument("SweepSpec: log spacing needs min > 0");
        if (axis != SweepAxis::T && !(min > 0.0))
            throw std::invalid_argument("SweepSpec: a and A must be positive");
        if (axis == SweepAxis::T && !(min >= 0.0))
            throw std::invalid_argument("SweepSpec: temperatures must be non-negative");
        if (axis != SweepAxis::a && !(fixed_a > 0.0))
            throw std::invalid_argument("SweepSpec: fixed separation must be positive");
        if (axis == SweepAxis::a && !(fixed_T >= 0.0))
            throw std::invalid_argument("SweepSpec: fixed temperature must be non-negative");
        if (prescriptions.empty())
            throw std::invalid_argument("SweepSpec: at least one prescription required");
        thermo.validate();
    }

    std::vector<double> sweep_points(const SweepSpec &spec)
    {
        spec.validate();
        std::vector<double> pts(spec.count);
        for (int i = 0; i < spec.count; ++i) {
            const double f = static_cast<double>(i) / (spec.count - 1);
            if (spec.spacing == Spacing::Log)
                pts[i] = std::exp(std::log(spec.min) + f * (std::log(spec.max) - std::log(spec.min)));
            else
                pts[i] = spec.min + f * (spec.max - spec.min);
        }
        pts.front() = spec.min;
        pts.back() = spec.max;
        return pts;
    }

    void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)> &fn)
    {
        if (threads == 0)
            threads = std::max(1u, std::thread::hardware_concurrency());
        threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
        if (threads <= 1) {
            for (std::size_t i = 0; i < n; ++i)
                fn(i);
            return;
        }
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++)
                    fn(i);
            });
    }

    std::vector<SweepRow> run_sweep(const SweepSpec &spec, const MaterialParams &m)
    {
        m.validate();
        const auto pts = sweep_points(spec);
        const std::size_t np = spec.prescriptions.size();
        std::vector<SweepRow> rows(pts.size() * np);

        parallel_for(rows.size(), spec.threads, [&](std::size_t k) {
            SweepRow &row = rows[k];
            row.axis_value = pts[k / np];
            row.prescription = spec.prescriptions[k % np];
            try {
                double a = spec.fixed_a, T = spec.fixed_T;
                switch (spec.axis) {
                case SweepAxis::T:
                    T = row.axis_value;
                    break;
                case SweepAxis::a:
                    a = row.axis_value;
                    break;
                case SweepAxis::A:
                    T = temperature_for_A(row.axis_value, a, m.omega_p, m.v());
                    break;
                }
                row.result = evaluate(a, T, m, PrescriptionKind{row.prescription, {}}, spec.model, spec.thermo,
                                      spec.observables);
            } catch (const std::exception &e) {
                row.error = e.what();
            }
        });
        return rows;
    }

    bool any_failed(const std::vector<SweepRow> &rows)
    {
        for (const auto &r : rows)
            if (!r.error.empty())
                return true;
        return false;
    }

    std::string utc_timestamp()
    {
        const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        std::tm tm{};
        gmtime_r(&now, &tm);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
        return buf;
    }

    void write_material_header(std::ostream &os, const MaterialParams &m)
    {
        os << fmt::format("# material: {}\n", m.name);
        os << fmt::format("#   omega_p = {:.10g} rad/s, v_F = {:.10g} m/s, beta = {:.10g}, T_D = {:.10g} K\n", m.omega_p,
                          m.v_F, m.beta, m.T_D);
        os << fmt::format("#   omega_tau(T0) = {:.10g} rad/s, T0 = {:.10g} K, omega_tau_0 = {:.10g}, C_e = {:.10g}, "
                          "C_ph = {:.10g}\n",
                          m.reference_relaxation(), m.T0, m.omega_tau_0, m.C_e, m.C_ph);
    }

    namespace
    {
        std::string opt(const std::optional<double> &v)
        {
            return v ? fmt::format("{:.10e}", *v) : std::string();
        }
    } // namespace

    std::string csv_escape(const std::string &s)
    {
        if (s.empty())
            return {};
        std::string out = "\"";
        for (char c : s) {
            if (c == '"')
                out += '"';
            out += (c == '\n' ? ' ' : c);
        }
        return out + "\"";
    }

    void write_sweep_csv(std::ostream &os, const SweepSpec &spec, const MaterialParams &m,
                         const std::vector<SweepRow> &rows, const std::string &timestamp)
    {
        os << fmt::format("# casimir_cli sweep, version {}\n", kVersion);
        if (!timestamp.empty())
            os << "# generated: " << timestamp << "\n";
        write_material_header(os, m);
        os << fmt::format("# axis = {}, range = [{:.10g}, {:.10g}], count = {}, spacing = {}\n", to_string(spec.axis),
                          spec.min, spec.max, spec.count, to_string(spec.spacing));
        if (spec.axis != SweepAxis::a)
            os << fmt::format("# fixed a = {:.10g} m\n", spec.fixed_a);
        else
            os << fmt::format("# fixed T = {:.10g} K\n", spec.fixed_T);
        os << fmt::format("# model = {}, relaxation = {}, method = {}, abs_tol = {:.3g}, ase_threshold = {:.3g}\n",
                          to_string(spec.model), to_string(spec.thermo.relaxation), to_string(spec.thermo.method),
                          spec.thermo.quad.abs_tol, spec.thermo.ase_threshold);

        os << "axis_value,a_m,T_K,tau,A,B,AB_over_tau2_minus_1,G,delta_F_J_m2,F0_J_m2,alpha,S_J_K_m2,F_pp_N_m2,"
              "prescription,model,method,l_over_delta,ase_valid,impedance_form_valid,below_debye,error\n";
        for (const auto &row : rows) {
            os << fmt::format("{:.10g},", row.axis_value);
            if (!row.result) {
                os << fmt::format(",,,,,,,,,,,,{},{},,,,,,{}\n", to_string(row.prescription), to_string(spec.model),
                                  csv_escape(row.error));
                continue;
            }
            const auto &r = *row.result;
            const auto &s = r.state;
            const double identity = s.tau > 0.0 ? s.A * s.B / (s.tau * s.tau) - 1.0 : 0.0;
            os << fmt::format("{:.10e},{:.10e},{:.10e},{:.10e},{:.10e},{:.3e},{:.10e},{:.10e},{:.10e},{:.10g},{},{},",
                              r.a, r.T, s.tau, s.A, s.B, identity, r.G, r.delta_F, r.F0, r.alpha, opt(r.S),
                              opt(r.F_pp));
            os << fmt::format("{},{},{},", to_string(row.prescription), to_string(r.model), to_string(r.method));
            if (r.applicability) {
                const auto &ap = *r.applicability;
                os << fmt::format("{:.6g},{},{},{},", ap.l_over_delta, ap.ase_valid ? 1 : 0,
                                  ap.impedance_form_valid ? 1 : 0, ap.below_debye ? 1 : 0);
            } else {
                os << ",,,,";
            }
            os << csv_escape(row.error) << "\n";
        }
    }
} // namespace casimir
