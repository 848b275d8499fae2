#pragma once

#include "casimir/materials.hpp"

#include <complex>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace casimir
{
    using Complex = std::complex<double>;

    /// Non-fatal diagnostics collected along a computation.
    using Notes = std::vector<std::string>;

    /// Dimensionless variables of the Lifshitz sum at separation a and
    /// temperature T:
    ///   omega_a = c / 2a,  k T_eff = hbar omega_a,  tau = 2 pi T / T_eff,
    ///   xi_n = n tau,
    ///   A = (c/v  omega_p^2/omega_a^2  tau)^(1/3),
    ///   B = (v/c  omega_a^2/omega_p^2  tau^5)^(1/3) = tau^2 / A.
    struct DimensionlessState
    {
        double a = 0.0;       // m (NaN when built from A and tau)
        double T = 0.0;       // K (NaN when built from A and tau)
        double omega_a = 0.0; // rad/s
        double T_eff = 0.0;   // K
        double tau = 0.0;
        double A = 0.0;
        double B = 0.0;
        double kappa = 0.0; // Z(i xi) = kappa xi^(2/3); equals tau^(1/3) / A

        double xi(int n) const { return n * tau; }

        static DimensionlessState from_physical(double a, double T, double omega_p, double v);
        static DimensionlessState from_A_tau(double A, double tau);
    };

    /// Temperature at which the state for separation a reaches parameter A.
    double temperature_for_A(double A, double a, double omega_p, double v);

    enum class Prescription
    {
        Unmodified,  // r1^2(0,y) = 0, r2^2(0,y) = 1
        IdealStatic, // r1^2(0,y) = r2^2(0,y) = 1
        PlasmaLike   // r1^2(0,y) -> r1^2(y,y) of the plasma model
    };

    std::string_view to_string(Prescription p);
    Prescription prescription_from_string(std::string_view s);

    /// Rule for the zero-frequency term. The optional hook supplies the
    /// slowly varying function entering the omega_tau correction of the
    /// plasma-like alpha; without it that term is dropped.
    struct PrescriptionKind
    {
        Prescription variant = Prescription::IdealStatic;
        std::function<double(double)> external_I2_hook;
    };

    /// 1 + omega_p^2 / (zeta (zeta + omega_tau)) at imaginary frequency i zeta.
    double drude_permittivity(double zeta, const MaterialParams &m, double omega_tau);

    /// R(xi) = (omega_p/omega_a) sqrt(xi / (xi + omega_tau/omega_a)).
    double drude_R(double xi, double omega_p_over_omega_a, double omega_tau_over_omega_a);

    /// Drude amplitudes (r1, r2) for given xi, y and R.
    std::pair<double, double> drude_reflection(double xi, double y, double R);

    /// Strong anomalous-skin-effect impedance at imaginary frequency:
    /// Z = (v/c  omega_a^2/omega_p^2  xi^2)^(1/3). Outside xi < Omega/omega_a
    /// a note is appended (if notes is given) but the value is still returned.
    double impedance_ase(double xi, const MaterialParams &m, double omega_a, Notes *notes = nullptr);

    /// Leontovich amplitudes r1 = (xi - yZ)/(xi + yZ), r2 = (y - xi Z)/(y + xi Z).
    /// A note is appended when |Z| >= 0.3.
    std::pair<double, double> impedance_reflection(double xi, double y, double Z, Notes *notes = nullptr);

    /// Complex continuation of the Leontovich amplitudes.
    std::pair<Complex, Complex> impedance_reflection(Complex xi, Complex y, Complex Z);

    /// alpha in F0 = -alpha kT zeta(3) / (8 pi a^2).
    double alpha_coefficient(const PrescriptionKind &p, const MaterialParams &m, double omega_a, double omega_tau,
                             Notes *notes = nullptr);

    /// Zero-frequency term F0 = -alpha kT zeta(3) / (8 pi a^2), J/m^2.
    double zero_term_free_energy(double alpha, double a, double T);

    enum class ModelKind
    {
        Impedance,
        Drude,
        Ideal
    };

    std::string_view to_string(ModelKind m);
    ModelKind model_from_string(std::string_view s);

    enum class Polarization
    {
        Perpendicular, // r1
        Parallel       // r2
    };

    /// Squared reflection amplitudes for the n >= 1 Matsubara terms, as an
    /// analytic function of complex (xi, y) in units of omega_a.
    class ReflectionModel
    {
      public:
        static ReflectionModel ideal();
        /// Z(i xi) = kappa xi^(2/3); kappa = 0 reproduces the ideal metal.
        static ReflectionModel impedance(double kappa);
        static ReflectionModel drude(double omega_p_over_omega_a, double omega_tau_over_omega_a);

        /// Model for a physical state; the Drude variant needs omega_tau(T).
        static ReflectionModel for_state(ModelKind kind, const DimensionlessState &s, const MaterialParams &m,
                                         double omega_tau);

        ModelKind kind() const { return kind_; }

        Complex r_squared(Polarization p, Complex xi, Complex y) const;
        double r_squared(Polarization p, double xi, double y) const;

        /// True when both polarizations vanish identically (used by tests).
        static ReflectionModel transparent();
        bool is_transparent() const { return transparent_; }

      private:
        ModelKind kind_ = ModelKind::Ideal;
        double kappa_ = 0.0;
        double wp_ = 0.0;
        double wtau_ = 0.0;
        bool transparent_ = false;
    };
} // namespace casimir
