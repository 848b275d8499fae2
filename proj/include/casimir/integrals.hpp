#pragma once

#include "casimir/quadrature.hpp"
#include "casimir/reflection.hpp"

#include <stdexcept>
#include <string>

namespace casimir
{
    struct QuadratureConfig
    {
        double abs_tol = 1e-6;
        // Semi-infinite y ranges are cut where an analytic bound on the
        // discarded tail falls below y_cutoff_fraction * abs_tol.
        double y_cutoff_fraction = 0.1;
        // Upper limit of the e^(-2 pi t) weighted t-integral of I3; 0 picks
        // it from the same tail bound.
        double t_cutoff = 0.0;
        int max_subdivisions = 4000;

        void validate() const;
        QuadratureConfig tightened(double factor) const;
    };

    /// 1 - r^2 e^(-y - i tau t) reached the negative real axis somewhere on
    /// the I3 contour: the principal logarithm would jump there.
    class BranchError : public std::runtime_error
    {
      public:
        BranchError(double t, double y, Complex one_minus_x);
        double t() const { return t_; }
        double y() const { return y_; }

      private:
        double t_, y_;
    };

    struct PolarizationPair
    {
        double perpendicular = 0.0; // r1
        double parallel = 0.0;      // r2
        double sum() const { return perpendicular + parallel; }
    };

    struct IntegralSet
    {
        PolarizationPair I1, I2, I3;
        double abs_tol_achieved = 0.0; // summed error estimate over all six
        ModelKind model = ModelKind::Impedance;
    };

    /// I1 = int_tau^inf dy y ln(1 - r^2(tau, y) e^-y).
    Estimate integral_I1(Polarization p, const DimensionlessState &s, const ReflectionModel &model,
                         const QuadratureConfig &cfg = {});

    /// I2 = int_0^1 dt int_(tau t)^inf dy y ln(1 - r^2(tau t, y) e^-y).
    Estimate integral_I2(Polarization p, const DimensionlessState &s, const ReflectionModel &model,
                         const QuadratureConfig &cfg = {});

    /// Abel-Plana remainder of the shifted Matsubara sum,
    ///   I3 = 2 Im int_0^inf dt / (e^(2 pi t) - 1) int_tau^inf dy (y + w) ln(1 - r^2(tau + w, y + w) e^(-y - w))
    /// with w = -i tau t. With this orientation the n >= 1 sum equals
    /// (1/tau) int f + I1/2 - I2 + I3, and I3 -> 4A(q1 ln A + q2) for the
    /// impedance model at small A.
    Estimate integral_I3(Polarization p, const DimensionlessState &s, const ReflectionModel &model,
                         const QuadratureConfig &cfg = {});

    IntegralSet integral_set(const DimensionlessState &s, const ReflectionModel &model,
                             const QuadratureConfig &cfg = {});

    struct ConstantPair
    {
        double first = 0.0;
        double second = 0.0;
    };

    /// Small-A constants with theta = arctan(t) / 3:
    ///   q1 = int dt (1+t^2)^(1/6) sin(theta) / (e^(2 pi t) - 1)
    ///   q2 = int dt (1+t^2)^(1/6) [sin(theta)(ln(4 (1+t^2)^(1/6)) - 1) + theta cos(theta)] / (e^(2 pi t) - 1)
    ConstantPair constants_q(const QuadratureConfig &cfg = {});

    /// Large-A constants:
    ///   p1 = int dt sin(theta) / ((e^(2 pi t) - 1)(1+t^2)^(1/6))
    ///   p2 = int dt sin(2 theta) / ((e^(2 pi t) - 1)(1+t^2)^(1/3))
    ConstantPair constants_p(const QuadratureConfig &cfg = {});

    /// Integrands of q1, q2, p1, p2, continuous at t = 0.
    double q1_integrand(double t);
    double q2_integrand(double t);
    double p1_integrand(double t);
    double p2_integrand(double t);

    struct AsymptoticConstants
    {
        double q1, q2, p1, p2;
    };

    /// q1, q2, p1, p2 at abs_tol 1e-13, computed once per process.
    const AsymptoticConstants &asymptotic_constants();

    /// Dimensionless T = 0 double integral
    ///   J = int_0^inf dxi int_0^inf dy (xi + y) [ln(1 - r1^2(xi, y + xi) e^(-y - xi)) + (r1 -> r2)].
    Estimate free_energy_T0_integral(const ReflectionModel &model, const QuadratureConfig &cfg = {});

    /// Temperature-independent free energy hbar c J / (32 pi^2 a^3), J/m^2.
    /// The model must describe separation a. The normalization is fixed by
    /// the T -> 0 limit of the Matsubara sum and gives -pi^2 hbar c / (720 a^3)
    /// for the ideal metal.
    double free_energy_T0(double a, const ReflectionModel &model, const QuadratureConfig &cfg = {});

    /// Convenience overload building the model from a material; the Drude
    /// variant uses the residual relaxation frequency omega_tau_0.
    double free_energy_T0(double a, ModelKind kind, const MaterialParams &m, const QuadratureConfig &cfg = {});

    /// -pi^2 hbar c / (720 a^3).
    double ideal_free_energy_T0(double a);
} // namespace casimir
