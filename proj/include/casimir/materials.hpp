#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace casimir
{
    /// Everything that defines a metal. All fields in SI units.
    struct MaterialParams
    {
        std::string name = "unnamed";
        double omega_p = 0.0;                 // plasma frequency, rad/s
        std::optional<double> omega_tau_ref;  // relaxation frequency at T0, rad/s
        double T0 = 273.15;                   // reference temperature, K
        double omega_tau_0 = 0.0;             // residual relaxation frequency, rad/s
        double C_e = 0.0;                     // electron-electron coefficient, rad/s/K^2
        double C_ph = 0.0;                    // phonon coefficient, rad/s/K^5
        double v_F = 0.0;                     // Fermi velocity, m/s
        double beta = 1.0;                    // v = beta * v_F enters the impedance
        double T_D = 0.0;                     // Debye temperature, K
        std::optional<double> rho_ref;        // resistivity at T0, Ohm m

        /// Velocity entering the strong anomalous-skin-effect impedance.
        double v() const { return beta * v_F; }

        /// Relaxation frequency at T0, taken from omega_tau_ref or rebuilt
        /// from rho_ref. Throws if neither is set.
        double reference_relaxation() const;

        /// Throws std::invalid_argument naming the first offending field.
        void validate() const;
    };

    /// Built-in gold parameters (the same values as data/materials/gold.cfg).
    MaterialParams gold_preset();

    enum class RelaxationModel
    {
        Polynomial,
        BlochGruneisen
    };

    std::string_view to_string(RelaxationModel m);
    RelaxationModel relaxation_model_from_string(std::string_view s);

    /// omega_tau(0) + C_e T^2 + C_ph T^5.
    double omega_tau_poly(double T, const MaterialParams &m);

    /// Bloch-Gruneisen integral F5(x) = int_0^x u^5 / ((e^u - 1)(1 - e^-u)) du.
    double bloch_gruneisen_integral(double x);

    /// Phonon-limited relaxation frequency scaled from its value at T0.
    double omega_tau_bloch_gruneisen(double T, const MaterialParams &m);

    /// omega_tau = eps0 omega_p^2 rho.
    double omega_tau_from_resistivity(double rho, double omega_p);

    double omega_tau(double T, const MaterialParams &m, RelaxationModel model);

    struct ApplicabilityReport
    {
        double T = 0.0;
        double omega_tau = 0.0;      // rad/s at T
        double mean_free_path = 0.0; // m
        double penetration_depth = 0.0; // c / omega_p, m
        double l_over_delta = 0.0;
        double Omega = 0.0;          // (v_F / c) omega_p, rad/s
        double xi_limit = 0.0;       // Omega / omega_a, upper Matsubara frequency for the impedance form
        double ase_threshold = 5.0;
        bool ase_valid = false;
        bool impedance_form_valid = false;
        bool below_debye = false;

        bool all_valid() const { return ase_valid && impedance_form_valid && below_debye; }
    };

    /// Always returns a report, valid or not.
    ApplicabilityReport applicability(double T, double a, const MaterialParams &m, RelaxationModel relaxation,
                                      double ase_threshold = 5.0);

    /// Temperature above which 2 pi k T >= hbar Omega.
    double impedance_form_limit_temperature(const MaterialParams &m);

    /// Temperature at which l/delta falls to the given ratio, found by
    /// bisection on (t_lo, t_hi). Throws if the ratio is not bracketed.
    double temperature_for_l_over_delta(double ratio, const MaterialParams &m, RelaxationModel relaxation,
                                        double t_lo = 1e-3, double t_hi = 1e4);
} // namespace casimir
