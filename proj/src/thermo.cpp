#include "casimir/thermo.hpp"

#include "casimir/constants.hpp"

#include <cmath>
#include <fmt/format.h>
#include <stdexcept>

namespace casimir
{
    std::string_view to_string(MethodPolicy p)
    {
        return p == MethodPolicy::Auto ? "auto" : "numeric";
    }

    MethodPolicy method_policy_from_string(std::string_view s)
    {
        if (s == "numeric")
            return MethodPolicy::Numeric;
        if (s == "auto")
            return MethodPolicy::Auto;
        throw std::invalid_argument(fmt::format("unknown method policy '{}'", s));
    }

    void ThermoConfig::validate() const
    {
        quad.validate();
        bounds.validate();
        if (!(ase_threshold > 0.0))
            throw std::invalid_argument("ThermoConfig: ase_threshold must be positive");
        if (!(T_step_relative > 0.0) || !(T_step_floor >= 0.0) || !(T_step_cap > 0.0) || !(T_step_cap < 0.5))
            throw std::invalid_argument("ThermoConfig: invalid temperature step settings");
        if (!(a_step_relative > 0.0) || !(a_step_relative < 0.1))
            throw std::invalid_argument("ThermoConfig: a_step_relative must be in (0, 0.1)");
        if (!(derivative_tol_factor > 0.0) || derivative_tol_factor > 1.0)
            throw std::invalid_argument("ThermoConfig: derivative_tol_factor must be in (0, 1]");
    }

    double assemble_G(double I1_sum, double I2_sum, double I3_sum)
    {
        return -0.5 * (I1_sum + 2.0 * kZeta3) + (I2_sum + 2.0 * kZeta3) - I3_sum;
    }

    GEstimate compute_G(const DimensionlessState &state, const ReflectionModel &model, const QuadratureConfig &cfg)
    {
        if (!(state.tau > 0.0))
            throw std::invalid_argument("compute_G: tau must be positive");
        GEstimate out;
        out.integrals = integral_set(state, model, cfg);
        const auto &I = out.integrals;
        out.G = assemble_G(I.I1.sum(), I.I2.sum(), I.I3.sum());
        out.abs_error = I.abs_tol_achieved;
        return out;
    }

    namespace
    {
        double entropy_prefactor(double a)
        {
            return kBoltzmann / (8.0 * kPi * a * a);
        }

        ThermoConfig derivative_config(const ThermoConfig &cfg)
        {
            ThermoConfig c = cfg;
            c.quad = cfg.quad.tightened(cfg.derivative_tol_factor);
            c.method = MethodPolicy::Numeric;
            return c;
        }

        double temperature_step(double T, const ThermoConfig &cfg)
        {
            return std::min(std::max(cfg.T_step_relative * T, cfg.T_step_floor), cfg.T_step_cap * T);
        }
    } // namespace

    CorrectionResult delta_free_energy(double a, double T, const MaterialParams &m, const PrescriptionKind &prescription,
                                       ModelKind model, const ThermoConfig &cfg)
    {
        m.validate();
        cfg.validate();
        if (!(a > 0.0))
            throw std::invalid_argument("delta_free_energy: separation must be positive");
        if (!(T >= 0.0))
            throw std::invalid_argument("delta_free_energy: temperature must be non-negative");

        CorrectionResult r;
        r.a = a;
        r.T = T;
        r.prescription = prescription;
        r.model = model;
        r.state = DimensionlessState::from_physical(a, T, m.omega_p, m.v());
        r.omega_tau = omega_tau(T, m, cfg.relaxation);
        r.prefactor = kBoltzmann * T / (8.0 * kPi * a * a);

        const double hook_tau = cfg.plasma_like_residual_relaxation ? m.omega_tau_0 : r.omega_tau;
        r.alpha = alpha_coefficient(prescription, m, r.state.omega_a, hook_tau, &r.notes);

        if (T == 0.0) {
            r.method = AsymptoticRegime::Trivial;
            return r;
        }

        r.applicability = applicability(T, a, m, cfg.relaxation, cfg.ase_threshold);
        if (model == ModelKind::Impedance) {
            const auto &ap = *r.applicability;
            if (!ap.ase_valid)
                r.notes.push_back(fmt::format("l/delta = {:.3g} below the anomalous-skin-effect threshold {:.3g}",
                                              ap.l_over_delta, ap.ase_threshold));
            if (!ap.impedance_form_valid)
                r.notes.push_back("2 pi k T >= hbar Omega: strong-ASE impedance form not valid");
            if (!ap.below_debye)
                r.notes.push_back("T >= T_D");
        }

        const auto &s = r.state;
        if (cfg.method == MethodPolicy::Auto) {
            if (model == ModelKind::Impedance)
                r.method = cfg.bounds.classify(s.A, s.tau);
            else if (model == ModelKind::Ideal && s.tau <= cfg.bounds.ideal_tau_max)
                r.method = AsymptoticRegime::Ideal;
        }

        switch (r.method) {
        case AsymptoticRegime::SmallA:
            r.G = g_small_A(s.A);
            break;
        case AsymptoticRegime::LargeA:
            r.G = g_large_A(s.A);
            break;
        case AsymptoticRegime::Ideal:
            r.G = g_ideal(s.tau);
            break;
        default: {
            const auto est = compute_G(s, ReflectionModel::for_state(model, s, m, r.omega_tau), cfg.quad);
            r.G = est.G;
            r.abs_error = r.prefactor * est.abs_error;
            r.method = AsymptoticRegime::Numeric;
        }
        }

        r.F0 = zero_term_free_energy(r.alpha, a, T);
        r.delta_F = r.prefactor * ((1.0 - r.alpha) * kZeta3 - r.G);
        return r;
    }

    EntropyResult entropy(double a, double T, const MaterialParams &m, const PrescriptionKind &prescription,
                          ModelKind model, const ThermoConfig &cfg)
    {
        if (!(T > 0.0))
            throw std::invalid_argument("entropy: temperature must be positive");
        const ThermoConfig dc = derivative_config(cfg);
        EntropyResult out;
        out.step = temperature_step(T, cfg);
        const double up = delta_free_energy(a, T + out.step, m, prescription, model, dc).delta_F;
        const double down = delta_free_energy(a, T - out.step, m, prescription, model, dc).delta_F;
        out.numeric = -(up - down) / (2.0 * out.step);

        if (model == ModelKind::Impedance) {
            const auto s = DimensionlessState::from_physical(a, T, m.omega_p, m.v());
            const double hook_tau = cfg.plasma_like_residual_relaxation ? m.omega_tau_0 : omega_tau(T, m, cfg.relaxation);
            const double alpha = alpha_coefficient(prescription, m, s.omega_a, hook_tau);
            out.analytic = entropy_small_A(s.A, alpha, entropy_prefactor(a));
            out.analytic_trusted = s.A <= cfg.bounds.small_A_max && s.tau <= cfg.bounds.tau_max;
        }
        return out;
    }

    ForceResult force_plate_plate(double a, double T, const MaterialParams &m, const PrescriptionKind &prescription,
                                  ModelKind model, const ThermoConfig &cfg)
    {
        if (!(a > 0.0))
            throw std::invalid_argument("force_plate_plate: separation must be positive");
        ForceResult out;
        if (T == 0.0) {
            out.closed_form = 0.0;
            return out;
        }
        const ThermoConfig dc = derivative_config(cfg);
        out.step = cfg.a_step_relative * a;
        const double up = delta_free_energy(a + out.step, T, m, prescription, model, dc).delta_F;
        const double down = delta_free_energy(a - out.step, T, m, prescription, model, dc).delta_F;
        out.numeric = -(up - down) / (2.0 * out.step);

        if (model == ModelKind::Impedance) {
            const auto s = DimensionlessState::from_physical(a, T, m.omega_p, m.v());
            const double hook_tau = cfg.plasma_like_residual_relaxation ? m.omega_tau_0 : omega_tau(T, m, cfg.relaxation);
            const double alpha = alpha_coefficient(prescription, m, s.omega_a, hook_tau);
            out.closed_form = force_pp_large_A(s.A, alpha, kBoltzmann * T / (4.0 * kPi * a * a * a));
            out.closed_form_trusted = s.A >= cfg.bounds.large_A_min && s.tau <= cfg.bounds.tau_max;
        }
        return out;
    }

    double force_sphere_plate(double a, double T, double R_sphere, const MaterialParams &m,
                              const PrescriptionKind &prescription, ModelKind model, const ThermoConfig &cfg,
                              Notes *notes)
    {
        if (!(R_sphere > 0.0))
            throw std::invalid_argument("force_sphere_plate: sphere radius must be positive");
        if (notes && R_sphere < 100.0 * a)
            notes->push_back(fmt::format("sphere radius {:.3g} m < 100 a: proximity-force approximation suspect",
                                         R_sphere));
        return 2.0 * kPi * R_sphere * delta_free_energy(a, T, m, prescription, model, cfg).delta_F;
    }

    CorrectionResult evaluate(double a, double T, const MaterialParams &m, const PrescriptionKind &prescription,
                              ModelKind model, const ThermoConfig &cfg, const EvaluateOptions &opts)
    {
        CorrectionResult r = delta_free_energy(a, T, m, prescription, model, cfg);
        if (opts.entropy && T > 0.0) {
            const auto s = entropy(a, T, m, prescription, model, cfg);
            r.S = s.numeric;
            r.S_analytic = s.analytic;
        }
        if (opts.force) {
            const auto f = force_plate_plate(a, T, m, prescription, model, cfg);
            r.F_pp = f.numeric;
            r.F_pp_closed = f.closed_form;
        }
        if (opts.sphere_radius) {
            const double R = *opts.sphere_radius;
            if (!(R > 0.0))
                throw std::invalid_argument("evaluate: sphere radius must be positive");
            if (R < 100.0 * a)
                r.notes.push_back(
                    fmt::format("sphere radius {:.3g} m < 100 a: proximity-force approximation suspect", R));
            r.F_sp = 2.0 * kPi * R * r.delta_F;
        }
        return r;
    }
} // namespace casimir
