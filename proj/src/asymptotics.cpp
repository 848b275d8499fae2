#include "casimir/asymptotics.hpp"

#include "casimir/constants.hpp"
#include "casimir/integrals.hpp"
#include "casimir/thermo.hpp"

#include <cmath>
#include <fmt/format.h>
#include <stdexcept>
#include <vector>

namespace casimir
{
    namespace
    {
        const double kLn2 = std::log(2.0);

        // Small A: G = -A (c1 ln A + c0).
        double small_c1() { return 0.5 + 4.0 * asymptotic_constants().q1; }
        double small_c0() { return kLn2 - 7.0 / 8.0 + 4.0 * asymptotic_constants().q2; }

        // Large A: G = 8 zeta(3) (d1/A - d2/A^2).
        double large_d1() { return 1.0 - 2.0 * asymptotic_constants().p1; }
        double large_d2() { return 15.0 - 12.0 * asymptotic_constants().p2; }

        void require_positive(double A, const char *who)
        {
            if (!(A > 0.0))
                throw std::invalid_argument(fmt::format("{}: A must be positive", who));
        }
    } // namespace

    std::string_view to_string(AsymptoticRegime r)
    {
        switch (r) {
        case AsymptoticRegime::Numeric:
            return "numeric";
        case AsymptoticRegime::SmallA:
            return "small-A";
        case AsymptoticRegime::LargeA:
            return "large-A";
        case AsymptoticRegime::Ideal:
            return "ideal";
        case AsymptoticRegime::Trivial:
            return "trivial";
        }
        return "?";
    }

    void RegimeBounds::validate() const
    {
        if (!(small_A_max > 0.0) || !(large_A_min > small_A_max))
            throw std::invalid_argument("RegimeBounds: need 0 < small_A_max < large_A_min");
        if (!(tau_max > 0.0) || !(ideal_tau_max > 0.0))
            throw std::invalid_argument("RegimeBounds: tau bounds must be positive");
    }

    AsymptoticRegime RegimeBounds::classify(double A, double tau) const
    {
        if (tau > tau_max)
            return AsymptoticRegime::Numeric;
        if (A <= small_A_max)
            return AsymptoticRegime::SmallA;
        if (A >= large_A_min)
            return AsymptoticRegime::LargeA;
        return AsymptoticRegime::Numeric;
    }

    double small_A_I1(double A)
    {
        require_positive(A, "small_A_I1");
        return -kZeta3 - 2.0 * A * (std::log(A) + 2.0 * kLn2 - 1.0);
    }

    double small_A_I2(double A)
    {
        require_positive(A, "small_A_I2");
        return -kZeta3 - 1.5 * A * (std::log(A) + 2.0 * kLn2 - 1.25);
    }

    double small_A_I3(double A)
    {
        require_positive(A, "small_A_I3");
        const auto &c = asymptotic_constants();
        return 4.0 * A * (c.q1 * std::log(A) + c.q2);
    }

    double large_A_I1(double A)
    {
        require_positive(A, "large_A_I1");
        return -kZeta3 + 8.0 * kZeta3 * (1.0 / A - 6.0 / (A * A));
    }

    double large_A_I2(double A)
    {
        require_positive(A, "large_A_I2");
        return -kZeta3 + 12.0 * kZeta3 * (1.0 / A - 12.0 / (A * A));
    }

    double large_A_I3(double A)
    {
        require_positive(A, "large_A_I3");
        const auto &c = asymptotic_constants();
        return 16.0 * kZeta3 * (c.p1 / A - 6.0 * c.p2 / (A * A));
    }

    double g_small_A(double A)
    {
        if (A == 0.0)
            return 0.0;
        require_positive(A, "g_small_A");
        return -A * (small_c1() * std::log(A) + small_c0());
    }

    double g_large_A(double A)
    {
        require_positive(A, "g_large_A");
        return 8.0 * kZeta3 * (large_d1() / A - large_d2() / (A * A));
    }

    double g_ideal(double tau)
    {
        if (!(tau >= 0.0))
            throw std::invalid_argument("g_ideal: tau must be non-negative");
        const double x = tau / (2.0 * kPi);
        return kZeta3 * x * x - (kPi * kPi * kPi / 45.0) * x * x * x;
    }

    double large_A_next_term_ratio(double A)
    {
        require_positive(A, "large_A_next_term_ratio");
        return large_d2() / (A * large_d1());
    }

    double delta_F_small_A(double A, double alpha, double prefactor)
    {
        if (!(A >= 0.0))
            throw std::invalid_argument("delta_F_small_A: A must be non-negative");
        return prefactor * ((1.0 - alpha) * kZeta3 - g_small_A(A));
    }

    double delta_F_large_A(double A, double alpha, double prefactor)
    {
        require_positive(A, "delta_F_large_A");
        return prefactor * ((1.0 - alpha) * kZeta3 - g_large_A(A));
    }

    double entropy_small_A(double A, double alpha, double prefactor)
    {
        const auto &c = asymptotic_constants();
        const double bracket =
            A > 0.0 ? A * ((0.5 + 4.0 * c.q1) * std::log(A) + kLn2 - 0.75 + 4.0 * c.q2 + c.q1) : 0.0;
        return prefactor * ((alpha - 1.0) * kZeta3 - (4.0 / 3.0) * bracket);
    }

    double entropy_small_A_from_free_energy(double A, double alpha, double prefactor)
    {
        // Delta F = (k/8 pi a^2) T h(A), h = (1 - alpha) zeta(3) + A (c1 ln A + c0),
        // dA/dT = A / 3T, so -dF/dT = -(k/8 pi a^2) (h + A h'(A) / 3).
        if (A == 0.0)
            return prefactor * (alpha - 1.0) * kZeta3;
        const double c1 = small_c1(), c0 = small_c0();
        const double h = (1.0 - alpha) * kZeta3 + A * (c1 * std::log(A) + c0);
        const double dh = c1 * std::log(A) + c0 + c1;
        return -prefactor * (h + A * dh / 3.0);
    }

    double force_pp_large_A(double A, double alpha, double prefactor)
    {
        require_positive(A, "force_pp_large_A");
        return prefactor * kZeta3 * ((1.0 - alpha) - 8.0 * (1.5 * large_d1() / A - 2.0 * large_d2() / (A * A)));
    }

    bool CoefficientCheck::consistent(double tol) const
    {
        return std::abs(printed_first - assembled_first) <= tol * std::max(1.0, std::abs(printed_first)) &&
               std::abs(printed_second - assembled_second) <= tol * std::max(1.0, std::abs(printed_second));
    }

    CoefficientCheck small_A_coefficient_check()
    {
        // Each component is linear in A and in A ln A; pull the two
        // coefficients out of G assembled at two values of A.
        const auto G_at = [](double A) {
            return assemble_G(small_A_I1(A) - kZeta3, small_A_I2(A) - kZeta3, small_A_I3(A));
        };
        const double A1 = 1e-3, A2 = 1e-2;
        const double g1 = -G_at(A1) / A1, g2 = -G_at(A2) / A2; // c1 ln A + c0
        const double c1 = (g2 - g1) / (std::log(A2) - std::log(A1));
        const double c0 = g1 - c1 * std::log(A1);
        return {small_c1(), c1, small_c0(), c0};
    }

    CoefficientCheck large_A_coefficient_check()
    {
        const auto G_at = [](double A) {
            return assemble_G(large_A_I1(A) - kZeta3, large_A_I2(A) - kZeta3, large_A_I3(A));
        };
        // G / (8 zeta(3)) = d1 x - d2 x^2 with x = 1/A.
        const double x1 = 1e-2, x2 = 2e-2;
        const double h1 = G_at(1.0 / x1) / (8.0 * kZeta3 * x1), h2 = G_at(1.0 / x2) / (8.0 * kZeta3 * x2);
        const double d2 = -(h2 - h1) / (x2 - x1);
        const double d1 = h1 + d2 * x1;
        return {large_d1(), d1, large_d2(), d2};
    }

    double max_correction_temperature_estimate(double a, const MaterialParams &m)
    {
        if (!(a > 0.0))
            throw std::invalid_argument("max_correction_temperature_estimate: separation must be positive");
        const double omega_a = kSpeedOfLight / (2.0 * a);
        const double ratio = omega_a / m.omega_p;
        return 18.0 * (kHbar * omega_a / (2.0 * kPi)) * (m.v() / kSpeedOfLight) * ratio * ratio / kBoltzmann;
    }

    MaxCorrection find_max_correction(double a, const MaterialParams &m, const ThermoConfig &cfg, double T_upper)
    {
        m.validate();
        if (!(a > 0.0))
            throw std::invalid_argument("find_max_correction: separation must be positive");
        if (T_upper <= 0.0)
            T_upper = impedance_form_limit_temperature(m);

        MaxCorrection out;
        out.T_m_estimate = max_correction_temperature_estimate(a, m);

        const auto G_of_logT = [&](double logT) {
            ++out.evaluations;
            const auto s = DimensionlessState::from_physical(a, std::exp(logT), m.omega_p, m.v());
            return compute_G(s, ReflectionModel::impedance(s.kappa), cfg.quad).G;
        };

        // The maximum sits near A ~ 3; scan from A = 1e-2 up to T_upper.
        const double T_lo = std::min(temperature_for_A(1e-2, a, m.omega_p, m.v()), 1e-3 * T_upper);
        const double lo = std::log(T_lo), hi = std::log(T_upper);
        const int n = 48;
        std::vector<double> xs(n + 1), gs(n + 1);
        int best = 0;
        for (int i = 0; i <= n; ++i) {
            xs[i] = lo + (hi - lo) * i / n;
            gs[i] = G_of_logT(xs[i]);
            if (gs[i] > gs[best])
                best = i;
        }
        if (best == 0 || best == n)
            throw std::runtime_error(fmt::format(
                "find_max_correction: no interior maximum of G for T in ({:.4g}, {:.4g}] K at a = {:.4g} m", T_lo,
                T_upper, a));

        // Golden section on log T.
        const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
        double x0 = xs[best - 1], x3 = xs[best + 1];
        double x1 = x3 - invphi * (x3 - x0), x2 = x0 + invphi * (x3 - x0);
        double g1 = G_of_logT(x1), g2 = G_of_logT(x2);
        const double tol = std::log1p(1e-3);
        while (x3 - x0 > tol) {
            if (g1 > g2) {
                x3 = x2;
                x2 = x1;
                g2 = g1;
                x1 = x3 - invphi * (x3 - x0);
                g1 = G_of_logT(x1);
            } else {
                x0 = x1;
                x1 = x2;
                g1 = g2;
                x2 = x0 + invphi * (x3 - x0);
                g2 = G_of_logT(x2);
            }
        }
        const double x = g1 > g2 ? x1 : x2;
        out.T_m = std::exp(x);
        out.G_max = std::max(std::max(g1, g2), gs[best]);
        if (gs[best] > std::max(g1, g2))
            out.T_m = std::exp(xs[best]);
        out.A_m = DimensionlessState::from_physical(a, out.T_m, m.omega_p, m.v()).A;
        return out;
    }
} // namespace casimir
