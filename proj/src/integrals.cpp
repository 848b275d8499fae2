#include "casimir/integrals.hpp"

#include "casimir/constants.hpp"

#include <array>
#include <cmath>
#include <fmt/format.h>
#include <vector>

namespace casimir
{
    namespace
    {
        // Fixed marks that seed the adaptive y-subdivision; the reflection
        // amplitudes vary on scales down to A and B, which can be tiny.
        constexpr std::array<double, 14> kScaleMarks = {1e-12, 1e-10, 1e-8, 1e-6, 1e-5, 1e-4, 1e-3,
                                                        1e-2,  3e-2,  0.1,  0.3,  1.0,  3.0,  10.0};

        std::vector<double> seeded_breakpoints(double lo, double hi)
        {
            std::vector<double> pts{lo};
            for (double m : kScaleMarks)
                if (m > lo * (1.0 + 1e-9) && m > lo && m < hi)
                    pts.push_back(m);
            pts.push_back(hi);
            return pts;
        }

        // ln(1 - x) without losing digits for small |x|.
        double log1m(double x)
        {
            return std::log1p(-x);
        }

        Complex log1m(Complex x)
        {
            if (std::abs(x) < 1e-3) {
                const Complex x2 = x * x;
                return -(x + x2 / 2.0 + x2 * x / 3.0 + x2 * x2 / 4.0 + x2 * x2 * x / 5.0);
            }
            return std::log(1.0 - x);
        }

        // Smallest Y >= lo + 1 with 2 (Y + 1 + shift) e^-Y <= target, which
        // bounds int_Y^inf |y + w| |ln(1 - x)| dy when |x| <= e^-y <= 1/2.
        double y_cutoff(double lo, double shift, double target)
        {
            double Y = std::max(lo + 1.0, 2.0);
            while (2.0 * (Y + 1.0 + shift) * std::exp(-Y) > target)
                Y += 0.25;
            return Y;
        }

        double y_tail_bound(double Y, double shift)
        {
            return 2.0 * (Y + 1.0 + shift) * std::exp(-Y);
        }

        // Bound on the t > T tail of the I3 outer integral (before the factor 2).
        double t_tail_bound(double T, double tau)
        {
            const double e = std::exp(-2.0 * kPi * T);
            const double pi2_6 = kPi * kPi / 6.0;
            return (kZeta3 * e / (2.0 * kPi) + tau * pi2_6 * (T / (2.0 * kPi) + 1.0 / (4.0 * kPi * kPi)) * e) /
                   (1.0 - e);
        }

        Estimate inner_real(Polarization p, const ReflectionModel &model, double xi, double lo, double tol,
                            const QuadratureConfig &cfg)
        {
            const double Y = y_cutoff(lo, 0.0, cfg.y_cutoff_fraction * tol);
            auto f = [&](double y) { return y * log1m(model.r_squared(p, xi, y) * std::exp(-y)); };
            const auto pts = seeded_breakpoints(lo, Y);
            auto e = integrate_adaptive(f, std::span<const double>(pts), (1.0 - cfg.y_cutoff_fraction) * tol,
                                        cfg.max_subdivisions);
            e.abs_error += y_tail_bound(Y, 0.0);
            return e;
        }

        // The q and p integrands fall off like e^(-2 pi t); beyond t = 12 they are below 1e-31.
        template <class F> double constant_integral(F &&f, const QuadratureConfig &cfg)
        {
            constexpr std::array<double, 7> pts = {0.0, 0.1, 0.5, 1.0, 2.0, 4.0, 12.0};
            return integrate_adaptive(f, std::span<const double>(pts), cfg.abs_tol, cfg.max_subdivisions).value;
        }
    } // namespace

    void QuadratureConfig::validate() const
    {
        if (!(abs_tol > 0.0))
            throw std::invalid_argument("QuadratureConfig: abs_tol must be positive");
        if (!(y_cutoff_fraction > 0.0 && y_cutoff_fraction < 1.0))
            throw std::invalid_argument("QuadratureConfig: y_cutoff_fraction must lie in (0, 1)");
        if (t_cutoff < 0.0)
            throw std::invalid_argument("QuadratureConfig: t_cutoff must be non-negative");
        if (max_subdivisions < 1)
            throw std::invalid_argument("QuadratureConfig: max_subdivisions must be positive");
    }

    QuadratureConfig QuadratureConfig::tightened(double factor) const
    {
        QuadratureConfig c = *this;
        c.abs_tol *= factor;
        return c;
    }

    BranchError::BranchError(double t, double y, Complex one_minus_x)
        : std::runtime_error(fmt::format("I3 branch violation: 1 - r^2 e^(-y-i tau t) = ({:.6g}, {:.6g}) is on the "
                                         "principal branch cut at t = {:.6g}, y = {:.6g}",
                                         one_minus_x.real(), one_minus_x.imag(), t, y)),
          t_(t), y_(y)
    {
    }

    Estimate integral_I1(Polarization p, const DimensionlessState &s, const ReflectionModel &model,
                         const QuadratureConfig &cfg)
    {
        cfg.validate();
        if (!(s.tau > 0.0))
            throw std::invalid_argument("integral_I1: tau must be positive");
        return inner_real(p, model, s.tau, s.tau, cfg.abs_tol, cfg);
    }

    Estimate integral_I2(Polarization p, const DimensionlessState &s, const ReflectionModel &model,
                         const QuadratureConfig &cfg)
    {
        cfg.validate();
        if (!(s.tau > 0.0))
            throw std::invalid_argument("integral_I2: tau must be positive");
        const double inner_tol = 0.1 * cfg.abs_tol;
        double inner_error = 0.0;
        auto outer = [&](double t) {
            const double xi = s.tau * t;
            auto e = inner_real(p, model, xi, xi, inner_tol, cfg);
            inner_error = std::max(inner_error, e.abs_error);
            return e.value;
        };
        constexpr std::array<double, 8> pts = {0.0, 1e-9, 1e-6, 1e-3, 1e-2, 0.1, 0.5, 1.0};
        auto e = integrate_adaptive(outer, std::span<const double>(pts), 0.9 * cfg.abs_tol, cfg.max_subdivisions);
        e.abs_error += inner_error;
        return e;
    }

    Estimate integral_I3(Polarization p, const DimensionlessState &s, const ReflectionModel &model,
                         const QuadratureConfig &cfg)
    {
        cfg.validate();
        const double tau = s.tau;
        if (!(tau > 0.0))
            throw std::invalid_argument("integral_I3: tau must be positive");

        // The factor 2 in front doubles every error; budget accordingly.
        const double budget = 0.5 * cfg.abs_tol;
        double t_max = cfg.t_cutoff;
        if (t_max == 0.0) {
            t_max = 1.0;
            while (t_tail_bound(t_max, tau) > cfg.y_cutoff_fraction * budget)
                t_max += 0.25;
        }

        double inner_error = 0.0;
        auto outer = [&](double t) {
            const Complex w(0.0, -tau * t);
            const Complex xi = tau + w;
            // The weight grows like 1/(2 pi t) at small t while the imaginary
            // part vanishes like t; scale the inner tolerance with t.
            const double tol = 0.1 * budget * std::min(1.0, 2.0 * kPi * t);
            const double Y = y_cutoff(tau, tau * t, cfg.y_cutoff_fraction * tol);
            auto f = [&](double y) {
                const Complex yw = y + w;
                const Complex x = model.r_squared(p, xi, yw) * std::exp(-yw);
                const Complex one_minus = 1.0 - x;
                // |x| may exceed 1 (Re(kappa xi^(5/3)) < 0 for the parallel
                // amplitude at large t); the principal log stays continuous
                // unless 1 - x reaches the negative real axis.
                if (!std::isfinite(x.real()) || !std::isfinite(x.imag()) ||
                    (one_minus.real() <= 0.0 && std::abs(one_minus.imag()) <= 1e-2 * -one_minus.real()))
                    throw BranchError(t, y, one_minus);
                return std::imag(yw * log1m(x));
            };
            const auto pts = seeded_breakpoints(tau, Y);
            auto e = integrate_adaptive(f, std::span<const double>(pts), (1.0 - cfg.y_cutoff_fraction) * tol,
                                        cfg.max_subdivisions);
            const double weight = 1.0 / std::expm1(2.0 * kPi * t);
            inner_error = std::max(inner_error, (e.abs_error + y_tail_bound(Y, tau * t)) * std::min(weight, 1.0 / (2.0 * kPi * t)));
            return e.value * weight;
        };

        std::vector<double> pts = {0.0};
        for (double m : {0.02, 0.1, 0.3, 0.6, 1.0, 2.0, 3.0, 4.0, 6.0})
            if (m < t_max)
                pts.push_back(m);
        pts.push_back(t_max);
        auto e = integrate_adaptive(outer, std::span<const double>(pts), 0.8 * budget, cfg.max_subdivisions);
        return {2.0 * e.value, 2.0 * (e.abs_error + inner_error * t_max + t_tail_bound(t_max, tau))};
    }

    IntegralSet integral_set(const DimensionlessState &s, const ReflectionModel &model, const QuadratureConfig &cfg)
    {
        IntegralSet out;
        out.model = model.kind();
        double err = 0.0;
        auto take = [&err](const Estimate &e) {
            err += e.abs_error;
            return e.value;
        };
        out.I1.perpendicular = take(integral_I1(Polarization::Perpendicular, s, model, cfg));
        out.I1.parallel = take(integral_I1(Polarization::Parallel, s, model, cfg));
        out.I2.perpendicular = take(integral_I2(Polarization::Perpendicular, s, model, cfg));
        out.I2.parallel = take(integral_I2(Polarization::Parallel, s, model, cfg));
        out.I3.perpendicular = take(integral_I3(Polarization::Perpendicular, s, model, cfg));
        out.I3.parallel = take(integral_I3(Polarization::Parallel, s, model, cfg));
        out.abs_tol_achieved = err;
        return out;
    }

    double q1_integrand(double t)
    {
        if (t == 0.0)
            return 1.0 / (6.0 * kPi);
        const double th = std::atan(t) / 3.0;
        return std::pow(1.0 + t * t, 1.0 / 6.0) * std::sin(th) / std::expm1(2.0 * kPi * t);
    }

    double q2_integrand(double t)
    {
        if (t == 0.0)
            return std::log(4.0) / (6.0 * kPi);
        const double th = std::atan(t) / 3.0;
        const double g = std::pow(1.0 + t * t, 1.0 / 6.0);
        return g * (std::sin(th) * (std::log(4.0 * g) - 1.0) + th * std::cos(th)) / std::expm1(2.0 * kPi * t);
    }

    double p1_integrand(double t)
    {
        if (t == 0.0)
            return 1.0 / (6.0 * kPi);
        const double th = std::atan(t) / 3.0;
        return std::sin(th) / (std::expm1(2.0 * kPi * t) * std::pow(1.0 + t * t, 1.0 / 6.0));
    }

    double p2_integrand(double t)
    {
        if (t == 0.0)
            return 1.0 / (3.0 * kPi);
        const double th = std::atan(t) / 3.0;
        return std::sin(2.0 * th) / (std::expm1(2.0 * kPi * t) * std::cbrt(1.0 + t * t));
    }

    ConstantPair constants_q(const QuadratureConfig &cfg)
    {
        cfg.validate();
        return {constant_integral(q1_integrand, cfg), constant_integral(q2_integrand, cfg)};
    }

    ConstantPair constants_p(const QuadratureConfig &cfg)
    {
        cfg.validate();
        return {constant_integral(p1_integrand, cfg), constant_integral(p2_integrand, cfg)};
    }

    const AsymptoticConstants &asymptotic_constants()
    {
        static const AsymptoticConstants cached = [] {
            QuadratureConfig cfg;
            cfg.abs_tol = 1e-13;
            const auto q = constants_q(cfg);
            const auto p = constants_p(cfg);
            return AsymptoticConstants{q.first, q.second, p.first, p.second};
        }();
        return cached;
    }

    Estimate free_energy_T0_integral(const ReflectionModel &model, const QuadratureConfig &cfg)
    {
        cfg.validate();
        // Tail of the xi-integral: 4 (X + 2) e^-X bounds both polarizations.
        const double target = cfg.y_cutoff_fraction * cfg.abs_tol;
        double X = 2.0;
        while (4.0 * (X + 2.0) * std::exp(-X) > target)
            X += 0.25;
        const double inner_tol = 0.1 * cfg.abs_tol / X;

        auto outer = [&](double xi) {
            double Y = 2.0;
            // 4 e^-xi (xi + Y + 1) e^-Y bounds the y-tail for both polarizations.
            while (4.0 * std::exp(-xi) * (xi + Y + 1.0) * std::exp(-Y) > cfg.y_cutoff_fraction * inner_tol)
                Y += 0.25;
            auto f = [&](double y) {
                const double q = y + xi;
                const double e = std::exp(-q);
                return q * (log1m(model.r_squared(Polarization::Perpendicular, xi, q) * e) +
                            log1m(model.r_squared(Polarization::Parallel, xi, q) * e));
            };
            const auto pts = seeded_breakpoints(0.0, Y);
            return integrate_adaptive(f, std::span<const double>(pts), (1.0 - cfg.y_cutoff_fraction) * inner_tol,
                                      cfg.max_subdivisions)
                .value;
        };
        const auto pts = seeded_breakpoints(0.0, X);
        auto e = integrate_adaptive(outer, std::span<const double>(pts), 0.8 * cfg.abs_tol, cfg.max_subdivisions);
        e.abs_error += 0.2 * cfg.abs_tol;
        return e;
    }

    double free_energy_T0(double a, const ReflectionModel &model, const QuadratureConfig &cfg)
    {
        if (!(a > 0.0))
            throw std::invalid_argument("free_energy_T0: separation must be positive");
        const double prefactor = kHbar * kSpeedOfLight / (32.0 * kPi * kPi * a * a * a);
        return prefactor * free_energy_T0_integral(model, cfg).value;
    }

    double free_energy_T0(double a, ModelKind kind, const MaterialParams &m, const QuadratureConfig &cfg)
    {
        const auto s = DimensionlessState::from_physical(a, 0.0, m.omega_p, m.v());
        return free_energy_T0(a, ReflectionModel::for_state(kind, s, m, m.omega_tau_0), cfg);
    }

    double ideal_free_energy_T0(double a)
    {
        return -kPi * kPi * kHbar * kSpeedOfLight / (720.0 * a * a * a);
    }
} // namespace casimir
