#pragma once

#include "casimir/asymptotics.hpp"
#include "casimir/integrals.hpp"
#include "casimir/materials.hpp"
#include "casimir/reflection.hpp"

#include <optional>

namespace casimir
{
    enum class MethodPolicy
    {
        Numeric, // always the six integrals
        Auto     // closed forms inside their trusted ranges
    };

    std::string_view to_string(MethodPolicy p);
    MethodPolicy method_policy_from_string(std::string_view s);

    struct ThermoConfig
    {
        QuadratureConfig quad;
        RelaxationModel relaxation = RelaxationModel::BlochGruneisen;
        MethodPolicy method = MethodPolicy::Numeric;
        RegimeBounds bounds;
        double ase_threshold = 5.0;

        // Central differences. The T step is max(rel T, floor), kept below
        // T_step_cap T; the a step is a_step_relative a.
        double T_step_relative = 1e-3;
        double T_step_floor = 1e-3; // K
        double T_step_cap = 1e-2;
        double a_step_relative = 1e-4;
        // Quadrature tolerance of the shifted evaluations, relative to quad.abs_tol.
        double derivative_tol_factor = 1e-3;

        // The plasma-like hook is fed omega_tau(T) unless this is set, in
        // which case the residual omega_tau_0 is used.
        bool plasma_like_residual_relaxation = false;

        void validate() const;
    };

    /// G = -(1/2)(I1' + I1'' + 2 zeta(3)) + (I2' + I2'' + 2 zeta(3)) - (I3' + I3'').
    double assemble_G(double I1_sum, double I2_sum, double I3_sum);

    struct GEstimate
    {
        double G = 0.0;
        double abs_error = 0.0;
        IntegralSet integrals;
    };

    GEstimate compute_G(const DimensionlessState &state, const ReflectionModel &model, const QuadratureConfig &cfg = {});

    struct CorrectionResult
    {
        double a = 0.0;
        double T = 0.0;
        double delta_F = 0.0;   // J/m^2
        double G = 0.0;
        double F0 = 0.0;        // n = 0 term, J/m^2
        double alpha = 1.0;
        double prefactor = 0.0; // kT / (8 pi a^2)
        double abs_error = 0.0; // J/m^2, from the quadrature estimate

        std::optional<double> S;          // J/K/m^2, finite difference
        std::optional<double> S_analytic; // small-A closed form
        std::optional<double> F_pp;       // N/m^2, finite difference
        std::optional<double> F_pp_closed;
        std::optional<double> F_sp;       // N

        AsymptoticRegime method = AsymptoticRegime::Numeric;
        std::optional<ApplicabilityReport> applicability; // absent at T = 0
        PrescriptionKind prescription;
        ModelKind model = ModelKind::Impedance;
        DimensionlessState state;
        double omega_tau = 0.0;
        Notes notes;
    };

    /// Delta F = F(a,T) - F(a,0) = kT/(8 pi a^2) [(1 - alpha) zeta(3) - G].
    CorrectionResult delta_free_energy(double a, double T, const MaterialParams &m, const PrescriptionKind &prescription,
                                       ModelKind model, const ThermoConfig &cfg = {});

    struct EntropyResult
    {
        double numeric = 0.0;             // -d(Delta F)/dT, J/K/m^2
        std::optional<double> analytic;   // impedance model only
        bool analytic_trusted = false;    // A inside the small-A range
        double step = 0.0;                // K
    };

    EntropyResult entropy(double a, double T, const MaterialParams &m, const PrescriptionKind &prescription,
                          ModelKind model, const ThermoConfig &cfg = {});

    struct ForceResult
    {
        double numeric = 0.0;             // -d(Delta F)/da, N/m^2
        std::optional<double> closed_form;
        bool closed_form_trusted = false; // A inside the large-A range
        double step = 0.0;                // m
    };

    ForceResult force_plate_plate(double a, double T, const MaterialParams &m, const PrescriptionKind &prescription,
                                  ModelKind model, const ThermoConfig &cfg = {});

    /// Proximity-force sphere-plate correction 2 pi R Delta F. A note is
    /// added when R < 100 a.
    double force_sphere_plate(double a, double T, double R_sphere, const MaterialParams &m,
                              const PrescriptionKind &prescription, ModelKind model, const ThermoConfig &cfg = {},
                              Notes *notes = nullptr);

    struct EvaluateOptions
    {
        bool entropy = true;
        bool force = true;
        std::optional<double> sphere_radius;
    };

    /// delta_free_energy plus the requested derived observables.
    CorrectionResult evaluate(double a, double T, const MaterialParams &m, const PrescriptionKind &prescription,
                              ModelKind model, const ThermoConfig &cfg = {}, const EvaluateOptions &opts = {});
} // namespace casimir
