#pragma once

#include "casimir/materials.hpp"

#include <string_view>

namespace casimir
{
    struct ThermoConfig;

    enum class AsymptoticRegime
    {
        Numeric,
        SmallA,
        LargeA,
        Ideal,
        Trivial // T = 0
    };

    std::string_view to_string(AsymptoticRegime r);

    /// Where the closed forms are trusted. Between the two A bounds only the
    /// numeric path is used. Both expansions also assume tau << 1.
    struct RegimeBounds
    {
        double small_A_max = 0.03;
        double large_A_min = 150.0;
        double tau_max = 1e-2;
        double ideal_tau_max = 0.3;

        void validate() const;

        /// SmallA, LargeA or Numeric for the impedance model.
        AsymptoticRegime classify(double A, double tau) const;
    };

    // Perpendicular-polarization integrals in the A << 1 limit, tau -> 0.
    double small_A_I1(double A);
    double small_A_I2(double A);
    double small_A_I3(double A);

    // The same for A >> 1.
    double large_A_I1(double A);
    double large_A_I2(double A);
    double large_A_I3(double A);

    /// G = -A ((1/2 + 4 q1) ln A + ln 2 - 7/8 + 4 q2).
    double g_small_A(double A);

    /// G = 8 zeta(3) ((1 - 2 p1)/A - (15 - 12 p2)/A^2).
    double g_large_A(double A);

    /// Ideal-metal correction zeta(3) (tau/2pi)^2 - (pi^3/45) (tau/2pi)^3.
    double g_ideal(double tau);

    /// Ratio of the 1/A^2 to the 1/A term of g_large_A.
    double large_A_next_term_ratio(double A);

    /// prefactor [(1 - alpha) zeta(3) - g_small_A(A)], prefactor = kT / (8 pi a^2).
    double delta_F_small_A(double A, double alpha, double prefactor);

    /// prefactor zeta(3) [(1 - alpha) - 8 ((1 - 2 p1)/A - (15 - 12 p2)/A^2)].
    double delta_F_large_A(double A, double alpha, double prefactor);

    /// Small-A entropy as a closed form, with prefactor = k / (8 pi a^2):
    /// prefactor [(alpha - 1) zeta(3) - (4/3) A ((1/2 + 4 q1) ln A + ln 2 - 3/4 + 4 q2 + q1)].
    double entropy_small_A(double A, double alpha, double prefactor);

    /// -d/dT of delta_F_small_A with A proportional to T^(1/3), evaluated
    /// term by term from the free-energy coefficients.
    double entropy_small_A_from_free_energy(double A, double alpha, double prefactor);

    /// Plate-plate force from the large-A free energy, prefactor = kT / (4 pi a^3):
    /// prefactor zeta(3) [(1 - alpha) - 8 ((3/2)(1 - 2 p1)/A - 2 (15 - 12 p2)/A^2)].
    double force_pp_large_A(double A, double alpha, double prefactor);

    /// Coefficients c1 ln A + c0 of an expansion, printed against assembled
    /// from the component integrals.
    struct CoefficientCheck
    {
        double printed_first, assembled_first;
        double printed_second, assembled_second;
        bool consistent(double tol = 1e-12) const;
    };

    /// Small A: G = -A (c1 ln A + c0).
    CoefficientCheck small_A_coefficient_check();

    /// Large A: G = 8 zeta(3) (c1/A - c0/A^2).
    CoefficientCheck large_A_coefficient_check();

    struct MaxCorrection
    {
        double T_m = 0.0;
        double G_max = 0.0;
        double A_m = 0.0;
        double T_m_estimate = 0.0; // 18 (hbar omega_a / 2pi)(v/c)(omega_a/omega_p)^2 / k
        int evaluations = 0;
    };

    /// kT_m ~ 18 (hbar omega_a / 2 pi)(v/c)(omega_a^2/omega_p^2), i.e. A = 18^(1/3).
    double max_correction_temperature_estimate(double a, const MaterialParams &m);

    /// Maximizes the numeric G(a, T) of the impedance model over
    /// T in (0, T_upper], T_upper the impedance-form limit unless given.
    /// Coarse log scan followed by golden-section refinement to relative
    /// T tolerance 1e-3. Throws std::runtime_error without an interior maximum.
    MaxCorrection find_max_correction(double a, const MaterialParams &m, const ThermoConfig &cfg,
                                      double T_upper = 0.0);
} // namespace casimir
