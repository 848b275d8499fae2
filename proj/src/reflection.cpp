#include "casimir/reflection.hpp"

#include "casimir/constants.hpp"

#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <stdexcept>

namespace casimir
{
    DimensionlessState DimensionlessState::from_physical(double a, double T, double omega_p, double v)
    {
        if (!(a > 0.0))
            throw std::invalid_argument("DimensionlessState: separation must be positive");
        if (!(T >= 0.0))
            throw std::invalid_argument("DimensionlessState: temperature must be non-negative");
        if (!(omega_p > 0.0) || !(v > 0.0))
            throw std::invalid_argument("DimensionlessState: omega_p and v must be positive");
        DimensionlessState s;
        s.a = a;
        s.T = T;
        s.omega_a = kSpeedOfLight / (2.0 * a);
        s.T_eff = kHbar * s.omega_a / kBoltzmann;
        s.tau = 2.0 * kPi * T / s.T_eff;
        const double ratio = s.omega_a / omega_p;
        s.kappa = std::cbrt((v / kSpeedOfLight) * ratio * ratio);
        if (s.tau > 0.0) {
            s.A = std::cbrt((kSpeedOfLight / v) * s.tau / (ratio * ratio));
            s.B = s.tau * s.tau / s.A;
        }
        return s;
    }

    DimensionlessState DimensionlessState::from_A_tau(double A, double tau)
    {
        if (!(A > 0.0) || !(tau > 0.0))
            throw std::invalid_argument("DimensionlessState: A and tau must be positive");
        DimensionlessState s;
        s.a = std::numeric_limits<double>::quiet_NaN();
        s.T = std::numeric_limits<double>::quiet_NaN();
        s.omega_a = std::numeric_limits<double>::quiet_NaN();
        s.T_eff = std::numeric_limits<double>::quiet_NaN();
        s.tau = tau;
        s.A = A;
        s.B = tau * tau / A;
        s.kappa = std::cbrt(tau) / A;
        return s;
    }

    double temperature_for_A(double A, double a, double omega_p, double v)
    {
        const double omega_a = kSpeedOfLight / (2.0 * a);
        const double ratio = omega_a / omega_p;
        const double tau = A * A * A * (v / kSpeedOfLight) * ratio * ratio;
        const double T_eff = kHbar * omega_a / kBoltzmann;
        return tau * T_eff / (2.0 * kPi);
    }

    std::string_view to_string(Prescription p)
    {
        switch (p) {
        case Prescription::Unmodified:
            return "unmodified";
        case Prescription::IdealStatic:
            return "ideal-static";
        case Prescription::PlasmaLike:
            return "plasma-like";
        }
        return "?";
    }

    Prescription prescription_from_string(std::string_view s)
    {
        if (s == "unmodified")
            return Prescription::Unmodified;
        if (s == "ideal-static")
            return Prescription::IdealStatic;
        if (s == "plasma-like")
            return Prescription::PlasmaLike;
        throw std::invalid_argument(fmt::format("unknown prescription '{}'", s));
    }

    std::string_view to_string(ModelKind m)
    {
        switch (m) {
        case ModelKind::Impedance:
            return "impedance";
        case ModelKind::Drude:
            return "drude";
        case ModelKind::Ideal:
            return "ideal";
        }
        return "?";
    }

    ModelKind model_from_string(std::string_view s)
    {
        if (s == "impedance")
            return ModelKind::Impedance;
        if (s == "drude")
            return ModelKind::Drude;
        if (s == "ideal")
            return ModelKind::Ideal;
        throw std::invalid_argument(fmt::format("unknown reflection model '{}'", s));
    }

    double drude_permittivity(double zeta, const MaterialParams &m, double omega_tau)
    {
        if (!(zeta > 0.0))
            throw std::invalid_argument(
                "drude_permittivity: zeta must be positive; the zero-frequency term belongs to the prescription");
        return 1.0 + m.omega_p * m.omega_p / (zeta * (zeta + omega_tau));
    }

    double drude_R(double xi, double omega_p_over_omega_a, double omega_tau_over_omega_a)
    {
        return omega_p_over_omega_a * std::sqrt(xi / (xi + omega_tau_over_omega_a));
    }

    std::pair<double, double> drude_reflection(double xi, double y, double R)
    {
        if (!(xi > 0.0) || !(y > 0.0))
            throw std::invalid_argument("drude_reflection: xi and y must be positive");
        const double s = std::hypot(R, y);
        const double k = 1.0 + (R / xi) * (R / xi);
        // s - y = R^2 / (s + y) avoids cancellation for R << y.
        return {R * R / ((s + y) * (s + y)), (s - k * y) / (s + k * y)};
    }

    double impedance_ase(double xi, const MaterialParams &m, double omega_a, Notes *notes)
    {
        if (!(xi >= 0.0))
            throw std::invalid_argument("impedance_ase: xi must be non-negative");
        const double xi_limit = (m.v_F / kSpeedOfLight) * m.omega_p / omega_a;
        if (notes && xi >= xi_limit)
            notes->push_back(fmt::format("impedance_ase: xi = {:.4g} is outside the strong-ASE range xi < {:.4g}", xi,
                                         xi_limit));
        const double ratio = omega_a / m.omega_p;
        return std::cbrt((m.v() / kSpeedOfLight) * ratio * ratio * xi * xi);
    }

    std::pair<double, double> impedance_reflection(double xi, double y, double Z, Notes *notes)
    {
        if (!(xi > 0.0))
            throw std::invalid_argument("impedance_reflection: xi must be positive");
        if (!(Z >= 0.0))
            throw std::invalid_argument("impedance_reflection: Z must be non-negative");
        if (notes && Z >= 0.3)
            notes->push_back(fmt::format("impedance_reflection: |Z| = {:.3g} is not small; Leontovich condition suspect", Z));
        if (y == 0.0)
            return {1.0, 1.0};
        return {(xi - y * Z) / (xi + y * Z), (y - xi * Z) / (y + xi * Z)};
    }

    std::pair<Complex, Complex> impedance_reflection(Complex xi, Complex y, Complex Z)
    {
        return {(xi - y * Z) / (xi + y * Z), (y - xi * Z) / (y + xi * Z)};
    }

    double alpha_coefficient(const PrescriptionKind &p, const MaterialParams &m, double omega_a, double omega_tau,
                             Notes *notes)
    {
        switch (p.variant) {
        case Prescription::Unmodified:
            return 0.5;
        case Prescription::IdealStatic:
            return 1.0;
        case Prescription::PlasmaLike: {
            const double ratio = omega_a / m.omega_p;
            if (!(ratio < 0.25))
                throw std::invalid_argument(fmt::format(
                    "alpha_coefficient: omega_a/omega_p = {:.4g} too large for the plasma-like expansion", ratio));
            double alpha = 1.0 - 4.0 * ratio;
            if (p.external_I2_hook) {
                alpha -= (omega_tau / m.omega_p) * (2.0 / kZeta3) * p.external_I2_hook(omega_tau / omega_a);
            } else if (notes) {
                notes->push_back("plasma-like alpha: omega_tau correction omitted (no I2 hook supplied)");
            }
            return alpha;
        }
        }
        throw std::logic_error("alpha_coefficient: unhandled prescription");
    }

    double zero_term_free_energy(double alpha, double a, double T)
    {
        if (!(a > 0.0))
            throw std::invalid_argument("zero_term_free_energy: separation must be positive");
        if (!(T >= 0.0))
            throw std::invalid_argument("zero_term_free_energy: temperature must be non-negative");
        return -alpha * kBoltzmann * T / (8.0 * kPi * a * a) * kZeta3;
    }

    ReflectionModel ReflectionModel::ideal()
    {
        return {};
    }

    ReflectionModel ReflectionModel::impedance(double kappa)
    {
        if (!(kappa >= 0.0))
            throw std::invalid_argument("ReflectionModel::impedance: kappa must be non-negative");
        ReflectionModel r;
        r.kind_ = ModelKind::Impedance;
        r.kappa_ = kappa;
        return r;
    }

    ReflectionModel ReflectionModel::drude(double omega_p_over_omega_a, double omega_tau_over_omega_a)
    {
        if (!(omega_p_over_omega_a > 0.0) || !(omega_tau_over_omega_a >= 0.0))
            throw std::invalid_argument("ReflectionModel::drude: invalid frequency ratios");
        ReflectionModel r;
        r.kind_ = ModelKind::Drude;
        r.wp_ = omega_p_over_omega_a;
        r.wtau_ = omega_tau_over_omega_a;
        return r;
    }

    ReflectionModel ReflectionModel::transparent()
    {
        ReflectionModel r;
        r.transparent_ = true;
        return r;
    }

    ReflectionModel ReflectionModel::for_state(ModelKind kind, const DimensionlessState &s, const MaterialParams &m,
                                               double omega_tau)
    {
        switch (kind) {
        case ModelKind::Ideal:
            return ideal();
        case ModelKind::Impedance:
            return impedance(s.kappa);
        case ModelKind::Drude:
            if (!std::isfinite(s.omega_a))
                throw std::invalid_argument("Drude model needs a physical state (a, T)");
            return drude(m.omega_p / s.omega_a, omega_tau / s.omega_a);
        }
        throw std::logic_error("ReflectionModel::for_state: unhandled kind");
    }

    Complex ReflectionModel::r_squared(Polarization p, Complex xi, Complex y) const
    {
        if (transparent_)
            return 0.0;
        switch (kind_) {
        case ModelKind::Ideal:
            return 1.0;
        case ModelKind::Impedance: {
            if (kappa_ == 0.0)
                return 1.0;
            if (p == Polarization::Perpendicular) {
                // (xi - y Z)/(xi + y Z) with Z = kappa xi^(2/3), divided through by xi^(2/3).
                const Complex c = std::pow(xi, 1.0 / 3.0);
                const Complex r = (c - kappa_ * y) / (c + kappa_ * y);
                return r * r;
            }
            const Complex xz = kappa_ * std::pow(xi, 5.0 / 3.0);
            const Complex r = (y - xz) / (y + xz);
            return r * r;
        }
        case ModelKind::Drude: {
            const Complex R2 = wp_ * wp_ * xi / (xi + wtau_);
            const Complex s = std::sqrt(R2 + y * y);
            if (p == Polarization::Perpendicular) {
                const Complex r = R2 / ((s + y) * (s + y));
                return r * r;
            }
            const Complex eps = 1.0 + wp_ * wp_ / (xi * (xi + wtau_));
            const Complex r = (s - eps * y) / (s + eps * y);
            return r * r;
        }
        }
        return 1.0;
    }

    double ReflectionModel::r_squared(Polarization p, double xi, double y) const
    {
        if (transparent_)
            return 0.0;
        switch (kind_) {
        case ModelKind::Ideal:
            return 1.0;
        case ModelKind::Impedance: {
            if (kappa_ == 0.0)
                return 1.0;
            if (p == Polarization::Perpendicular) {
                const double c = std::cbrt(xi);
                const double r = (c - kappa_ * y) / (c + kappa_ * y);
                return r * r;
            }
            const double c = std::cbrt(xi);
            const double xz = kappa_ * xi * c * c;
            const double r = (y - xz) / (y + xz);
            return r * r;
        }
        case ModelKind::Drude: {
            const double R2 = wp_ * wp_ * xi / (xi + wtau_);
            const double s = std::sqrt(R2 + y * y);
            if (p == Polarization::Perpendicular) {
                const double r = R2 / ((s + y) * (s + y));
                return r * r;
            }
            const double eps = 1.0 + wp_ * wp_ / (xi * (xi + wtau_));
            const double r = (s - eps * y) / (s + eps * y);
            return r * r;
        }
        }
        return 1.0;
    }
} // namespace casimir
