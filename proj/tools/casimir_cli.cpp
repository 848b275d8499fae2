#include "casimir/asymptotics.hpp"
#include "casimir/constants.hpp"
#include "casimir/integrals.hpp"
#include "casimir/material_config.hpp"
#include "casimir/sweep.hpp"
#include "casimir/thermo.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace casimir;

namespace
{
    // "300nm", "0.3 um", "3e-7" (metres).
    double parse_length(const std::string &text)
    {
        std::size_t pos = 0;
        double value = 0.0;
        try {
            value = std::stod(text, &pos);
        } catch (const std::exception &) {
            throw std::invalid_argument(fmt::format("cannot parse length '{}'", text));
        }
        std::string unit = text.substr(pos);
        unit.erase(0, unit.find_first_not_of(' '));
        double scale = 1.0;
        if (unit.empty() || unit == "m")
            scale = 1.0;
        else if (unit == "nm")
            scale = 1e-9;
        else if (unit == "um" || unit == "µm" || unit == "mum")
            scale = 1e-6;
        else if (unit == "mm")
            scale = 1e-3;
        else
            throw std::invalid_argument(fmt::format("unknown length unit '{}' in '{}'", unit, text));
        return value * scale;
    }

    std::vector<std::string> split_list(const std::string &s)
    {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty())
                out.push_back(item);
        return out;
    }

    struct CommonOptions
    {
        std::string material = "gold";
        std::string prescription = "ideal-static";
        std::string model = "impedance";
        std::string relaxation = "bloch_gruneisen";
        std::string method = "numeric";
        double abs_tol = 1e-6;
        double ase_threshold = 5.0;
        std::string out;
    };

    void add_material(CLI::App *cmd, CommonOptions &o)
    {
        cmd->add_option("--material", o.material, "Material config path or preset name")->capture_default_str();
    }

    void add_physics(CLI::App *cmd, CommonOptions &o)
    {
        cmd->add_option("--prescription", o.prescription, "n = 0 rule: unmodified | ideal-static | plasma-like")
            ->capture_default_str();
        cmd->add_option("--model", o.model, "Reflection model: impedance | drude | ideal")->capture_default_str();
        cmd->add_option("--relaxation", o.relaxation, "omega_tau(T): poly | bloch_gruneisen")->capture_default_str();
        cmd->add_option("--method", o.method, "numeric | auto (closed forms inside trusted ranges)")
            ->capture_default_str();
        cmd->add_option("--abs-tol", o.abs_tol, "Absolute quadrature tolerance")->capture_default_str();
        cmd->add_option("--ase-threshold", o.ase_threshold, "l/delta required for ase_valid")->capture_default_str();
    }

    ThermoConfig thermo_config(const CommonOptions &o)
    {
        ThermoConfig cfg;
        cfg.quad.abs_tol = o.abs_tol;
        cfg.relaxation = relaxation_model_from_string(o.relaxation);
        cfg.method = method_policy_from_string(o.method);
        cfg.ase_threshold = o.ase_threshold;
        cfg.validate();
        return cfg;
    }

    MaterialParams load_material(const std::string &name)
    {
        return load_material_config(resolve_material_path(name));
    }

    // Writes to the --out file, or stdout when empty.
    class Output
    {
      public:
        explicit Output(const std::string &path)
        {
            if (!path.empty()) {
                file_ = std::make_unique<std::ofstream>(path);
                if (!*file_)
                    throw std::runtime_error(fmt::format("cannot open '{}' for writing", path));
            }
        }
        std::ostream &stream() { return file_ ? *file_ : std::cout; }

      private:
        std::unique_ptr<std::ofstream> file_;
    };

    std::string num(double v)
    {
        return fmt::format("{:.10g}", v);
    }

    void print_applicability(std::ostream &os, const ApplicabilityReport &ap)
    {
        os << "[applicability]\n";
        os << "omega_tau = " << num(ap.omega_tau) << "\n";
        os << "mean_free_path = " << num(ap.mean_free_path) << "\n";
        os << "penetration_depth = " << num(ap.penetration_depth) << "\n";
        os << "l_over_delta = " << num(ap.l_over_delta) << "\n";
        os << "ase_threshold = " << num(ap.ase_threshold) << "\n";
        os << "Omega = " << num(ap.Omega) << "\n";
        os << "xi_limit = " << num(ap.xi_limit) << "\n";
        os << "ase_valid = " << (ap.ase_valid ? "true" : "false") << "\n";
        os << "impedance_form_valid = " << (ap.impedance_form_valid ? "true" : "false") << "\n";
        os << "below_debye = " << (ap.below_debye ? "true" : "false") << "\n";
    }

    int cmd_compute(const CommonOptions &o, const std::string &a_text, double T,
                    const std::optional<std::string> &sphere)
    {
        const MaterialParams m = load_material(o.material);
        const ThermoConfig cfg = thermo_config(o);
        const double a = parse_length(a_text);
        const PrescriptionKind p{prescription_from_string(o.prescription), {}};
        const ModelKind model = model_from_string(o.model);
        EvaluateOptions opts;
        if (sphere)
            opts.sphere_radius = parse_length(*sphere);

        const CorrectionResult r = evaluate(a, T, m, p, model, cfg, opts);

        Output out(o.out);
        auto &os = out.stream();
        os << "[input]\n";
        os << "material = " << m.name << "\n";
        os << "a = " << num(a) << "\n";
        os << "T = " << num(T) << "\n";
        os << "prescription = " << to_string(p.variant) << "\n";
        os << "model = " << to_string(model) << "\n";
        os << "relaxation = " << to_string(cfg.relaxation) << "\n";
        os << "abs_tol = " << num(cfg.quad.abs_tol) << "\n";
        if (opts.sphere_radius)
            os << "sphere_radius = " << num(*opts.sphere_radius) << "\n";
        os << "\n[state]\n";
        os << "omega_a = " << num(r.state.omega_a) << "\n";
        os << "T_eff = " << num(r.state.T_eff) << "\n";
        os << "tau = " << num(r.state.tau) << "\n";
        os << "A = " << num(r.state.A) << "\n";
        os << "B = " << num(r.state.B) << "\n";
        os << "omega_tau = " << num(r.omega_tau) << "\n";
        os << "\n[result]\n";
        os << "method = " << to_string(r.method) << "\n";
        os << "alpha = " << num(r.alpha) << "\n";
        os << "G = " << num(r.G) << "\n";
        os << "delta_F = " << num(r.delta_F) << "\n";
        os << "delta_F_abs_error = " << num(r.abs_error) << "\n";
        os << "F0 = " << num(r.F0) << "\n";
        if (r.S)
            os << "S = " << num(*r.S) << "\n";
        if (r.S_analytic)
            os << "S_small_A = " << num(*r.S_analytic) << "\n";
        if (r.F_pp)
            os << "F_pp = " << num(*r.F_pp) << "\n";
        if (r.F_pp_closed)
            os << "F_pp_large_A = " << num(*r.F_pp_closed) << "\n";
        if (r.F_sp)
            os << "F_sp = " << num(*r.F_sp) << "\n";
        if (r.applicability) {
            os << "\n";
            print_applicability(os, *r.applicability);
        }
        if (!r.notes.empty()) {
            os << "\n[notes]\n";
            for (std::size_t i = 0; i < r.notes.size(); ++i)
                os << "note" << i + 1 << " = " << r.notes[i] << "\n";
        }
        for (const auto &n : r.notes)
            std::cerr << "warning: " << n << "\n";
        return 0;
    }

    struct SweepOptions
    {
        std::string axis = "T";
        std::string min, max;
        int count = 2;
        std::string spacing = "linear";
        std::string a = "300nm";
        double T = 50.0;
        std::string prescriptions = "ideal-static";
        unsigned threads = 0;
        bool entropy = false;
        bool force = false;
        std::optional<std::string> sphere;
        bool no_timestamp = false;
    };

    int cmd_sweep(const CommonOptions &o, const SweepOptions &so)
    {
        const MaterialParams m = load_material(o.material);
        SweepSpec spec;
        spec.axis = sweep_axis_from_string(so.axis);
        const auto bound = [&](const std::string &s) {
            return spec.axis == SweepAxis::a ? parse_length(s) : std::stod(s);
        };
        spec.min = bound(so.min);
        spec.max = bound(so.max);
        spec.count = so.count;
        spec.spacing = spacing_from_string(so.spacing);
        spec.fixed_a = parse_length(so.a);
        spec.fixed_T = so.T;
        spec.prescriptions.clear();
        for (const auto &p : split_list(so.prescriptions))
            spec.prescriptions.push_back(prescription_from_string(p));
        spec.model = model_from_string(o.model);
        spec.thermo = thermo_config(o);
        spec.observables.entropy = so.entropy;
        spec.observables.force = so.force;
        if (so.sphere)
            spec.observables.sphere_radius = parse_length(*so.sphere);
        spec.threads = so.threads;
        spec.validate();

        const auto rows = run_sweep(spec, m);
        Output out(o.out);
        write_sweep_csv(out.stream(), spec, m, rows, so.no_timestamp ? std::string() : utc_timestamp());
        if (any_failed(rows)) {
            for (const auto &r : rows)
                if (!r.error.empty())
                    std::cerr << fmt::format("error at {} = {:.6g}: {}\n", so.axis, r.axis_value, r.error);
            return 1;
        }
        return 0;
    }

    int cmd_figure1(const CommonOptions &o, double tau, int points, bool no_timestamp)
    {
        if (points < 2)
            throw std::invalid_argument("figure1: need at least two points");
        QuadratureConfig q;
        q.abs_tol = o.abs_tol;
        q.validate();
        const auto prescription = prescription_from_string(o.prescription);

        std::vector<double> A(points), G(points);
        std::vector<std::string> err(points);
        for (int i = 0; i < points; ++i)
            A[i] = std::pow(10.0, -3.0 + 6.0 * i / (points - 1));
        parallel_for(points, 0, [&](std::size_t i) {
            try {
                const auto s = DimensionlessState::from_A_tau(A[i], tau);
                G[i] = compute_G(s, ReflectionModel::impedance(s.kappa), q).G;
            } catch (const std::exception &e) {
                err[i] = e.what();
                G[i] = std::nan("");
            }
        });

        const RegimeBounds bounds;
        Output out(o.out);
        auto &os = out.stream();
        os << fmt::format("# casimir_cli figure1, version {}\n", kVersion);
        if (!no_timestamp)
            os << "# generated: " << utc_timestamp() << "\n";
        os << fmt::format("# relative correction G(A, tau) of the impedance model, tau = {:.3g}, abs_tol = {:.3g}\n",
                          tau, o.abs_tol);
        os << "# G does not depend on the n = 0 prescription; the column records the one selected\n";
        os << "A,G_numeric,G_smallA,G_largeA,trusted_regime,model,prescription,error\n";
        bool failed = false;
        for (int i = 0; i < points; ++i) {
            failed = failed || !err[i].empty();
            os << fmt::format("{:.10e},{:.10e},{:.10e},{:.10e},{},impedance,{},{}\n", A[i], G[i], g_small_A(A[i]),
                              g_large_A(A[i]), to_string(bounds.classify(A[i], tau)), to_string(prescription),
                              csv_escape(err[i]));
        }
        return failed ? 1 : 0;
    }

    int cmd_figure2(const CommonOptions &o, const std::string &separations, double T_min, double T_max, int count,
                    bool no_timestamp)
    {
        const MaterialParams m = load_material(o.material);
        const ThermoConfig cfg = thermo_config(o);
        const PrescriptionKind p{prescription_from_string(o.prescription), {}};
        const ModelKind model = model_from_string(o.model);
        if (!(T_min > 0.0) || !(T_min < T_max) || count < 2)
            throw std::invalid_argument("figure2: need 0 < T-min < T-max and count >= 2");

        std::vector<double> as;
        for (const auto &s : split_list(separations))
            as.push_back(parse_length(s));

        const std::size_t n = as.size() * count;
        std::vector<std::optional<CorrectionResult>> res(n);
        std::vector<std::string> err(n);
        parallel_for(n, 0, [&](std::size_t k) {
            const double T = T_min + (T_max - T_min) * static_cast<double>(k % count) / (count - 1);
            try {
                res[k] = delta_free_energy(as[k / count], T, m, p, model, cfg);
            } catch (const std::exception &e) {
                err[k] = e.what();
            }
        });

        Output out(o.out);
        auto &os = out.stream();
        os << fmt::format("# casimir_cli figure2, version {}\n", kVersion);
        if (!no_timestamp)
            os << "# generated: " << utc_timestamp() << "\n";
        write_material_header(os, m);
        os << fmt::format("# model = {}, prescription = {}, relaxation = {}, abs_tol = {:.3g}, ase_threshold = {:.3g}\n",
                          to_string(model), to_string(p.variant), to_string(cfg.relaxation), cfg.quad.abs_tol,
                          cfg.ase_threshold);
        os << "a_m,T_K,tau,A,G,delta_F_J_m2,prescription,model,l_over_delta,ase_valid,impedance_form_valid,"
              "below_debye,applicable,error\n";
        bool failed = false;
        for (std::size_t k = 0; k < n; ++k) {
            const double T = T_min + (T_max - T_min) * static_cast<double>(k % count) / (count - 1);
            if (!res[k]) {
                failed = true;
                os << fmt::format("{:.10e},{:.10g},,,,,{},{},,,,,,{}\n", as[k / count], T, to_string(p.variant),
                                  to_string(model), csv_escape(err[k]));
                continue;
            }
            const auto &r = *res[k];
            const auto &ap = *r.applicability;
            os << fmt::format("{:.10e},{:.10g},{:.10e},{:.10e},{:.10e},{:.10e},{},{},{:.6g},{},{},{},{},\n", r.a, r.T,
                              r.state.tau, r.state.A, r.G, r.delta_F, to_string(p.variant), to_string(model),
                              ap.l_over_delta, int(ap.ase_valid), int(ap.impedance_form_valid), int(ap.below_debye),
                              int(ap.all_valid()));
        }

        // Location of the largest G on each curve.
        for (std::size_t i = 0; i < as.size(); ++i) {
            int best = -1;
            for (int j = 0; j < count; ++j) {
                const auto &r = res[i * count + j];
                if (r && (best < 0 || r->G > res[i * count + best]->G))
                    best = j;
            }
            if (best < 0)
                continue;
            const auto &r = *res[i * count + best];
            os << fmt::format("# a = {:.4g} m: max G = {:.6g} at T = {:.6g} K ({}), estimate T_m = {:.4g} K\n", r.a, r.G,
                              r.T, (best == 0 || best == count - 1) ? "endpoint" : "interior",
                              max_correction_temperature_estimate(r.a, m));
        }
        return failed ? 1 : 0;
    }

    int cmd_constants(const CommonOptions &o)
    {
        QuadratureConfig q;
        q.abs_tol = std::min(o.abs_tol, 1e-10);
        const auto cq = constants_q(q);
        const auto cp = constants_p(q);
        struct Row
        {
            const char *name;
            double value, printed;
        };
        const Row rows[] = {{"q1", cq.first, 0.0137}, {"q2", cq.second, 0.0191}, {"p1", cp.first, 0.0133},
                            {"p2", cp.second, 0.0262}};
        Output out(o.out);
        auto &os = out.stream();
        os << "constant,computed,printed,abs_difference,within_5e-4\n";
        bool ok = true;
        for (const auto &r : rows) {
            const double d = std::abs(r.value - r.printed);
            ok = ok && d <= 5e-4;
            os << fmt::format("{},{:.10f},{:.4f},{:.3e},{}\n", r.name, r.value, r.printed, d, d <= 5e-4 ? "yes" : "no");
        }
        return ok ? 0 : 1;
    }

    int cmd_applicability(const CommonOptions &o, const std::optional<std::string> &a_text, std::optional<double> T)
    {
        const MaterialParams m = load_material(o.material);
        const auto relaxation = relaxation_model_from_string(o.relaxation);
        Output out(o.out);
        auto &os = out.stream();
        os << "[material]\n";
        os << "name = " << m.name << "\n";
        os << "omega_p = " << num(m.omega_p) << "\n";
        os << "v_F = " << num(m.v_F) << "\n";
        os << "T_D = " << num(m.T_D) << "\n";
        os << "omega_tau_T0 = " << num(m.reference_relaxation()) << "\n";
        os << "\n[thresholds]\n";
        os << "relaxation = " << to_string(relaxation) << "\n";
        os << "impedance_form_limit_T = " << num(impedance_form_limit_temperature(m)) << "\n";
        for (double ratio : {o.ase_threshold, 10.0}) {
            std::string value;
            try {
                value = num(temperature_for_l_over_delta(ratio, m, relaxation));
            } catch (const std::exception &e) {
                value = fmt::format("unbracketed ({})", e.what());
            }
            os << fmt::format("T_l_over_delta_{:g} = {}\n", ratio, value);
        }
        if (a_text && T) {
            const double a = parse_length(*a_text);
            os << "\n[point]\n";
            os << "a = " << num(a) << "\n";
            os << "T = " << num(*T) << "\n\n";
            print_applicability(os, applicability(*T, a, m, relaxation, o.ase_threshold));
        }
        return 0;
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Temperature correction to the Casimir free energy between metal plates at low temperature"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    CommonOptions o;

    auto *compute = app.add_subcommand("compute", "Single (a, T) point as a key-value record");
    std::string a_text;
    double T = 0.0;
    std::optional<std::string> sphere;
    add_material(compute, o);
    add_physics(compute, o);
    compute->add_option("--a", a_text, "Separation (metres, or with nm/um suffix)")->required();
    compute->add_option("--T", T, "Temperature, K")->required();
    compute->add_option("--sphere-radius", sphere, "Sphere radius for the sphere-plate force");
    compute->add_option("--out", o.out, "Output file (default stdout)");

    auto *sweep = app.add_subcommand("sweep", "Grid over T, a or A written as CSV");
    SweepOptions so;
    add_material(sweep, o);
    add_physics(sweep, o);
    sweep->add_option("--axis", so.axis, "T | a | A (A is mapped to T at fixed a)")->capture_default_str();
    sweep->add_option("--min", so.min, "Axis minimum")->required();
    sweep->add_option("--max", so.max, "Axis maximum")->required();
    sweep->add_option("--count", so.count, "Number of points (>= 2)")->capture_default_str();
    sweep->add_option("--spacing", so.spacing, "linear | log")->capture_default_str();
    sweep->add_option("--a", so.a, "Fixed separation")->capture_default_str();
    sweep->add_option("--T", so.T, "Fixed temperature, K (axis a)")->capture_default_str();
    sweep->add_option("--prescriptions", so.prescriptions, "Comma-separated list")->capture_default_str();
    sweep->add_option("--threads", so.threads, "Worker threads (0: all cores)")->capture_default_str();
    sweep->add_flag("--entropy", so.entropy, "Add the finite-difference entropy column");
    sweep->add_flag("--force", so.force, "Add the finite-difference plate-plate force column");
    sweep->add_option("--sphere-radius", so.sphere, "Sphere radius for the sphere-plate force");
    sweep->add_flag("--no-timestamp", so.no_timestamp, "Omit the generated-at header line");
    sweep->add_option("--out", o.out, "Output file (default stdout)");

    auto *fig1 = app.add_subcommand("figure1", "G(A) curve with both asymptotics");
    double tau = 1e-4;
    int points = 61;
    bool fig_no_ts = false;
    fig1->add_option("--tau", tau, "Small tau standing in for tau -> 0")->capture_default_str();
    fig1->add_option("--points", points, "Log-spaced points over A in [1e-3, 1e3]")->capture_default_str();
    fig1->add_option("--abs-tol", o.abs_tol, "Absolute quadrature tolerance")->capture_default_str();
    fig1->add_option("--prescription", o.prescription, "Recorded in the prescription column")->capture_default_str();
    fig1->add_flag("--no-timestamp", fig_no_ts, "Omit the generated-at header line");
    fig1->add_option("--out", o.out, "Output file (default stdout)");

    auto *fig2 = app.add_subcommand("figure2", "G(T) for several separations with applicability flags");
    std::string separations = "100nm,300nm,500nm";
    double T_min = 1.0, T_max = 80.0;
    int count = 80;
    add_material(fig2, o);
    add_physics(fig2, o);
    fig2->add_option("--separations", separations, "Comma-separated separations")->capture_default_str();
    fig2->add_option("--T-min", T_min, "K")->capture_default_str();
    fig2->add_option("--T-max", T_max, "K")->capture_default_str();
    fig2->add_option("--count", count, "Points per curve")->capture_default_str();
    fig2->add_flag("--no-timestamp", fig_no_ts, "Omit the generated-at header line");
    fig2->add_option("--out", o.out, "Output file (default stdout)");

    auto *consts = app.add_subcommand("constants", "q1, q2, p1, p2 against their printed values");
    consts->add_option("--out", o.out, "Output file (default stdout)");

    auto *appl = app.add_subcommand("applicability", "Validity thresholds of the strong-ASE description");
    std::optional<std::string> appl_a;
    std::optional<double> appl_T;
    add_material(appl, o);
    appl->add_option("--relaxation", o.relaxation, "poly | bloch_gruneisen")->capture_default_str();
    appl->add_option("--ase-threshold", o.ase_threshold, "l/delta required for ase_valid")->capture_default_str();
    appl->add_option("--a", appl_a, "Separation for a point report");
    appl->add_option("--T", appl_T, "Temperature for a point report, K");
    appl->add_option("--out", o.out, "Output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*compute)
            return cmd_compute(o, a_text, T, sphere);
        if (*sweep)
            return cmd_sweep(o, so);
        if (*fig1)
            return cmd_figure1(o, tau, points, fig_no_ts);
        if (*fig2)
            return cmd_figure2(o, separations, T_min, T_max, count, fig_no_ts);
        if (*consts)
            return cmd_constants(o);
        if (*appl)
            return cmd_applicability(o, appl_a, appl_T);
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
