#include "casimir/materials.hpp"

#include "casimir/constants.hpp"
#include "casimir/quadrature.hpp"

#include <cmath>
#include <fmt/format.h>
#include <stdexcept>

namespace casimir
{
    namespace
    {
        void require(bool ok, const char *field, const std::string &why)
        {
            if (!ok)
                throw std::invalid_argument(fmt::format("material field '{}': {}", field, why));
        }

        // 120 zeta(5): F5 at infinite argument.
        constexpr double kF5Infinity = 124.43133061720439;
    } // namespace

    double MaterialParams::reference_relaxation() const
    {
        if (omega_tau_ref)
            return *omega_tau_ref;
        if (rho_ref)
            return omega_tau_from_resistivity(*rho_ref, omega_p);
        throw std::invalid_argument(
            fmt::format("material '{}': neither omega_tau_ref nor rho_ref is set", name));
    }

    void MaterialParams::validate() const
    {
        require(std::isfinite(omega_p) && omega_p > 0.0, "omega_p", "must be positive");
        require(std::isfinite(v_F) && v_F > 0.0, "v_F", "must be positive");
        require(v_F < kSpeedOfLight, "v_F", "must be below the speed of light");
        require(std::isfinite(T_D) && T_D > 0.0, "T_D", "must be positive");
        require(std::isfinite(beta) && beta > 0.0, "beta", "must be positive");
        require(std::isfinite(T0) && T0 > 0.0, "T0", "must be positive");
        require(omega_tau_0 >= 0.0, "omega_tau_0", "must be non-negative");
        require(C_e >= 0.0, "C_e", "must be non-negative");
        require(C_ph >= 0.0, "C_ph", "must be non-negative");
        if (omega_tau_ref)
            require(*omega_tau_ref >= 0.0, "omega_tau_ref", "must be non-negative");
        if (rho_ref)
            require(*rho_ref >= 0.0, "rho_ref", "must be non-negative");
        if (omega_tau_ref && rho_ref) {
            const double rebuilt = omega_tau_from_resistivity(*rho_ref, omega_p);
            const double scale = std::max(std::abs(rebuilt), std::abs(*omega_tau_ref));
            require(std::abs(rebuilt - *omega_tau_ref) <= 0.01 * scale, "omega_tau_ref",
                    fmt::format("disagrees with eps0*omega_p^2*rho_ref = {:.6e} by more than 1%", rebuilt));
        }
    }

    MaterialParams gold_preset()
    {
        MaterialParams m;
        m.name = "gold";
        m.omega_p = 1.37e16;
        m.T0 = 273.15;
        m.rho_ref = 2.06e-8;
        m.v_F = 1.4e6;
        m.beta = 15.0 / 14.0; // v = 1.5e6 m/s
        m.T_D = 165.0;
        m.omega_tau_0 = 0.0;
        m.C_e = 0.0;
        m.C_ph = 85878.155790271; // low-T limit of the Bloch-Gruneisen law
        return m;
    }

    std::string_view to_string(RelaxationModel m)
    {
        return m == RelaxationModel::Polynomial ? "poly" : "bloch_gruneisen";
    }

    RelaxationModel relaxation_model_from_string(std::string_view s)
    {
        if (s == "poly" || s == "polynomial")
            return RelaxationModel::Polynomial;
        if (s == "bloch_gruneisen" || s == "bloch-gruneisen" || s == "bg")
            return RelaxationModel::BlochGruneisen;
        throw std::invalid_argument(fmt::format("unknown relaxation model '{}'", s));
    }

    double omega_tau_poly(double T, const MaterialParams &m)
    {
        if (!(T >= 0.0))
            throw std::invalid_argument("omega_tau_poly: temperature must be non-negative");
        const double T2 = T * T;
        return m.omega_tau_0 + m.C_e * T2 + m.C_ph * T2 * T2 * T;
    }

    double bloch_gruneisen_integral(double x)
    {
        if (!(x >= 0.0))
            throw std::invalid_argument("bloch_gruneisen_integral: negative argument");
        if (x < 1e-3) {
            const double x2 = x * x;
            return x2 * x2 * (0.25 - x2 / 72.0);
        }
        // Beyond u = 200 the integrand is below 1e-75.
        const double upper = std::min(x, 200.0);
        auto integrand = [](double u) {
            const double s = 2.0 * std::sinh(0.5 * u);
            return u * u * u * u * u / (s * s);
        };
        const double scale = std::min(0.25 * x * x * x * x, kF5Infinity);
        return integrate_adaptive(integrand, 0.0, upper, 1e-9 * scale).value;
    }

    double omega_tau_bloch_gruneisen(double T, const MaterialParams &m)
    {
        if (!(T > 0.0) || !(m.T0 > 0.0) || !(m.T_D > 0.0))
            throw std::invalid_argument("omega_tau_bloch_gruneisen: temperatures must be positive");
        const double ratio = T / m.T0;
        const double r5 = ratio * ratio * ratio * ratio * ratio;
        return m.reference_relaxation() * r5 * bloch_gruneisen_integral(m.T_D / T) /
               bloch_gruneisen_integral(m.T_D / m.T0);
    }

    double omega_tau_from_resistivity(double rho, double omega_p)
    {
        if (!(rho >= 0.0))
            throw std::invalid_argument("omega_tau_from_resistivity: resistivity must be non-negative");
        return kEpsilon0 * omega_p * omega_p * rho;
    }

    double omega_tau(double T, const MaterialParams &m, RelaxationModel model)
    {
        if (model == RelaxationModel::Polynomial)
            return omega_tau_poly(T, m);
        if (T == 0.0)
            return 0.0;
        return omega_tau_bloch_gruneisen(T, m);
    }

    ApplicabilityReport applicability(double T, double a, const MaterialParams &m, RelaxationModel relaxation,
                                      double ase_threshold)
    {
        if (!(T > 0.0) || !(a > 0.0))
            throw std::invalid_argument("applicability: T and a must be positive");
        ApplicabilityReport r;
        r.T = T;
        r.ase_threshold = ase_threshold;
        r.omega_tau = omega_tau(T, m, relaxation);
        r.penetration_depth = kSpeedOfLight / m.omega_p;
        r.mean_free_path = r.omega_tau > 0.0 ? m.v_F / r.omega_tau : INFINITY;
        r.l_over_delta = r.mean_free_path / r.penetration_depth;
        r.Omega = (m.v_F / kSpeedOfLight) * m.omega_p;
        const double omega_a = kSpeedOfLight / (2.0 * a);
        r.xi_limit = r.Omega / omega_a;
        r.ase_valid = r.l_over_delta > ase_threshold;
        r.impedance_form_valid = 2.0 * kPi * kBoltzmann * T < kHbar * r.Omega;
        r.below_debye = T < m.T_D;
        return r;
    }

    double impedance_form_limit_temperature(const MaterialParams &m)
    {
        const double Omega = (m.v_F / kSpeedOfLight) * m.omega_p;
        return kHbar * Omega / (2.0 * kPi * kBoltzmann);
    }

    double temperature_for_l_over_delta(double ratio, const MaterialParams &m, RelaxationModel relaxation,
                                        double t_lo, double t_hi)
    {
        auto excess = [&](double T) {
            const double wt = omega_tau(T, m, relaxation);
            const double l_over_delta = (m.v_F / wt) * (m.omega_p / kSpeedOfLight);
            return std::log(l_over_delta / ratio);
        };
        double f_lo = excess(t_lo);
        const double f_hi = excess(t_hi);
        if (f_lo * f_hi > 0.0)
            throw std::runtime_error(fmt::format("l/delta = {} is not bracketed by [{}, {}] K", ratio, t_lo, t_hi));
        // Bisection in log T; l/delta is monotone in T.
        double lo = std::log(t_lo), hi = std::log(t_hi);
        for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
            const double mid = 0.5 * (lo + hi);
            const double f_mid = excess(std::exp(mid));
            if ((f_mid > 0.0) == (f_lo > 0.0)) {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
            }
        }
        return std::exp(0.5 * (lo + hi));
    }
} // namespace casimir
