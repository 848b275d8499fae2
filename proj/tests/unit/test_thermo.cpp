#include "casimir/asymptotics.hpp"
#include "casimir/constants.hpp"
#include "casimir/thermo.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace casimir;

namespace
{
    const PrescriptionKind kUnmodified{Prescription::Unmodified, {}};
    const PrescriptionKind kIdealStatic{Prescription::IdealStatic, {}};
    const PrescriptionKind kPlasmaLike{Prescription::PlasmaLike, {}};

    double prefactor(double a, double T)
    {
        return kBoltzmann * T / (8.0 * kPi * a * a);
    }

    // Separation and temperature of a gold state with given (A, tau).
    std::pair<double, double> gold_state(double A, double tau)
    {
        const auto m = gold_preset();
        const double omega_a = m.omega_p * std::sqrt((kSpeedOfLight / m.v()) * tau / (A * A * A));
        const double a = kSpeedOfLight / (2.0 * omega_a);
        const double T = tau * (kHbar * omega_a / kBoltzmann) / (2.0 * kPi);
        return {a, T};
    }
} // namespace

TEST_SUITE("thermo")
{
    TEST_CASE("G from the six integrals")
    {
        const auto s = DimensionlessState::from_A_tau(1.0, 0.1);
        CHECK(compute_G(s, ReflectionModel::ideal()).G == doctest::Approx(g_ideal(0.1)).epsilon(0.10));
        CHECK(compute_G(s, ReflectionModel::transparent()).G == doctest::Approx(kZeta3).epsilon(1e-15));
        CHECK(oracle::G_direct(oracle::Impedance{0.0}, 0.1) == doctest::Approx(g_ideal(0.1)).epsilon(0.10));
        CHECK(assemble_G(0.0, 0.0, 0.0) == doctest::Approx(kZeta3));
        CHECK(assemble_G(-2 * kZeta3, -2 * kZeta3, 0.0) == 0.0);
        CHECK_THROWS(compute_G(DimensionlessState{}, ReflectionModel::ideal()));
    }

    TEST_CASE("G against the Matsubara sum")
    {
        for (auto [A, tau] : {std::pair{1.0, 0.5}, std::pair{0.3, 0.3}}) {
            const auto s = DimensionlessState::from_A_tau(A, tau);
            const double lib = compute_G(s, ReflectionModel::impedance(s.kappa)).G;
            CHECK(std::abs(lib - oracle::G_direct(oracle::Impedance{s.kappa}, tau)) < 3e-6);
        }
    }

    TEST_CASE("ideal-metal bracket reproduces the ideal correction")
    {
        for (double tau : {0.05, 0.1, 0.2, 0.3}) {
            const auto s = DimensionlessState::from_A_tau(1.0, tau);
            CHECK(compute_G(s, ReflectionModel::ideal()).G == doctest::Approx(g_ideal(tau)).epsilon(0.05));
        }
    }

    TEST_CASE("free-energy correction")
    {
        const auto m = gold_preset();
        const auto zero = delta_free_energy(300e-9, 0.0, m, kIdealStatic, ModelKind::Impedance);
        CHECK(zero.delta_F == 0.0);
        CHECK(zero.method == AsymptoticRegime::Trivial);
        CHECK_FALSE(zero.applicability.has_value());

        const auto r = delta_free_energy(300e-9, 50.0, m, kIdealStatic, ModelKind::Impedance);
        CHECK(r.G > 0.0);
        CHECK(r.G < 0.6);
        CHECK(r.prefactor == doctest::Approx(prefactor(300e-9, 50.0)).epsilon(1e-14));
        CHECK(r.delta_F == doctest::Approx(r.prefactor * ((1 - r.alpha) * kZeta3 - r.G)).epsilon(1e-14));
        CHECK(r.F0 == doctest::Approx(-r.alpha * r.prefactor * kZeta3).epsilon(1e-14));
        CHECK(r.applicability.has_value());
        CHECK(r.method == AsymptoticRegime::Numeric);

        const auto half = delta_free_energy(300e-9, 50.0, m, kUnmodified, ModelKind::Impedance);
        const double diff = kBoltzmann * 50.0 / (16.0 * kPi * 300e-9 * 300e-9) * kZeta3;
        CHECK(half.delta_F - r.delta_F == doctest::Approx(diff).epsilon(1e-12));
        CHECK(half.G == r.G);

        for (double T : {1e-3, 1e-6})
            CHECK(std::abs(delta_free_energy(300e-9, T, m, kIdealStatic, ModelKind::Impedance).delta_F) <
                  1e-3 * std::abs(r.delta_F));
    }

    TEST_CASE("round trip and sign with alpha = 1")
    {
        const auto m = gold_preset();
        for (double a : {100e-9, 300e-9, 1e-6})
            for (double T : {1.0, 10.0, 70.0}) {
                const auto r = delta_free_energy(a, T, m, kIdealStatic, ModelKind::Impedance);
                CHECK(r.delta_F <= 0.0);
                const double G_back = (1 - r.alpha) * kZeta3 - r.delta_F / r.prefactor;
                CHECK(G_back == doctest::Approx(r.G).epsilon(1e-12));
            }
    }

    TEST_CASE("applicability notes are attached, not fatal")
    {
        const auto m = gold_preset();
        const auto hot = delta_free_energy(300e-9, 150.0, m, kIdealStatic, ModelKind::Impedance);
        CHECK(hot.applicability.has_value());
        CHECK_FALSE(hot.applicability->impedance_form_valid);
        CHECK_FALSE(hot.notes.empty());

        const auto drude = delta_free_energy(300e-9, 300.0, m, kUnmodified, ModelKind::Drude);
        CHECK(std::isfinite(drude.delta_F));
        CHECK(drude.model == ModelKind::Drude);
    }

    TEST_CASE("plasma-like alpha uses the material")
    {
        const auto m = gold_preset();
        const auto r = delta_free_energy(300e-9, 10.0, m, kPlasmaLike, ModelKind::Impedance);
        CHECK(r.alpha == doctest::Approx(1.0 - 4.0 * (kSpeedOfLight / 600e-9) / m.omega_p).epsilon(1e-14));
        CHECK_THROWS(delta_free_energy(20e-9, 10.0, m, kPlasmaLike, ModelKind::Impedance));
    }

    TEST_CASE("automatic method is continuous at the trusted bounds")
    {
        const auto m = gold_preset();
        ThermoConfig numeric, automatic;
        automatic.method = MethodPolicy::Auto;
        const double a = 30e-6;
        for (double A : {automatic.bounds.small_A_max, automatic.bounds.large_A_min}) {
            const double T = temperature_for_A(A, a, m.omega_p, m.v());
            const auto n = delta_free_energy(a, T, m, kIdealStatic, ModelKind::Impedance, numeric);
            const auto c = delta_free_energy(a, T, m, kIdealStatic, ModelKind::Impedance, automatic);
            CHECK(c.method != AsymptoticRegime::Numeric);
            CHECK(std::abs(c.G - n.G) < 0.02 * std::abs(n.G));
        }
        const auto ideal = delta_free_energy(300e-9, 5.0, m, kIdealStatic, ModelKind::Ideal, automatic);
        CHECK(ideal.method == AsymptoticRegime::Ideal);
        CHECK(ideal.G == doctest::Approx(g_ideal(ideal.state.tau)).epsilon(1e-14));
    }

    TEST_CASE("Nernst behaviour at small A")
    {
        const auto m = gold_preset();
        const double a = 1e-6;
        const double pre = kBoltzmann / (8.0 * kPi * a * a);
        const double T = temperature_for_A(1e-4, a, m.omega_p, m.v());
        const double S_half = entropy(a, T, m, kUnmodified, ModelKind::Impedance).numeric;
        const double S_plasma = entropy(a, T, m, kPlasmaLike, ModelKind::Impedance).numeric;
        const double S_one = entropy(a, T, m, kIdealStatic, ModelKind::Impedance).numeric;
        CHECK(S_half == doctest::Approx(-0.5 * pre * kZeta3).epsilon(0.05));
        CHECK(S_half < S_plasma);
        CHECK(S_plasma < S_one);
        CHECK(S_plasma < 0.0);
        CHECK(std::isfinite(S_plasma));
        CHECK(std::abs(S_one) < 0.01 * pre);
    }

    TEST_CASE("analytic and numeric entropy agree at small A")
    {
        const auto m = gold_preset();
        const double a = 1e-6;
        for (double A : {1e-3, 1e-2})
            for (const auto &p : {kUnmodified, kIdealStatic}) {
                const double T = temperature_for_A(A, a, m.omega_p, m.v());
                const auto S = entropy(a, T, m, p, ModelKind::Impedance);
                REQUIRE(S.analytic.has_value());
                CHECK(S.analytic_trusted);
                CHECK(S.numeric == doctest::Approx(*S.analytic).epsilon(0.05));
            }
    }

    TEST_CASE("entropy reproduces free-energy differences")
    {
        const auto m = gold_preset();
        ThermoConfig cfg;
        cfg.quad.abs_tol = 1e-9;
        for (double T : {20.0, 50.0}) {
            const auto S = entropy(300e-9, T, m, kIdealStatic, ModelKind::Impedance, cfg);
            const double h = S.step;
            const double dF = delta_free_energy(300e-9, T + h, m, kIdealStatic, ModelKind::Impedance, cfg).delta_F -
                              delta_free_energy(300e-9, T, m, kIdealStatic, ModelKind::Impedance, cfg).delta_F;
            CHECK(std::abs(dF + S.numeric * h) <= 0.01 * std::abs(S.numeric * h));
        }
        CHECK(entropy(300e-9, 50.0, m, kIdealStatic, ModelKind::Impedance).step == doctest::Approx(0.05));
        CHECK_THROWS(entropy(300e-9, 0.0, m, kIdealStatic, ModelKind::Impedance));
    }

    TEST_CASE("plate-plate force at large A")
    {
        const auto m = gold_preset();
        const auto [a, T] = gold_state(1000.0, 1e-4);
        const auto F = force_plate_plate(a, T, m, kIdealStatic, ModelKind::Impedance);
        REQUIRE(F.closed_form.has_value());
        CHECK(F.closed_form_trusted);
        CHECK(F.numeric == doctest::Approx(*F.closed_form).epsilon(0.05));
        CHECK(F.numeric < 0.0);
        CHECK(F.step == doctest::Approx(1e-4 * a));
        CHECK(force_plate_plate(a, 0.0, m, kIdealStatic, ModelKind::Impedance).numeric == 0.0);
        CHECK(std::abs(force_pp_large_A(1e12, 1.0, 1.0)) < 1e-10);
    }

    TEST_CASE("closed-form pressure changes sign near A = 20")
    {
        const auto &c = asymptotic_constants();
        const double root = 4.0 * (15.0 - 12.0 * c.p2) / (3.0 * (1.0 - 2.0 * c.p1));
        CHECK(root == doctest::Approx(20.12).epsilon(1e-3));
        CHECK(force_pp_large_A(0.99 * root, 1.0, 1.0) > 0.0);
        CHECK(force_pp_large_A(1.01 * root, 1.0, 1.0) < 0.0);
    }

    TEST_CASE("corrections strengthen attraction above A = 25")
    {
        const auto m = gold_preset();
        for (auto [a, T] : {std::pair{500e-9, 50.0}, std::pair{500e-9, 70.0}}) {
            const auto r = delta_free_energy(a, T, m, kIdealStatic, ModelKind::Impedance);
            REQUIRE(r.state.A > 25.0);
            CHECK(r.delta_F < 0.0);
            CHECK(force_plate_plate(a, T, m, kIdealStatic, ModelKind::Impedance).numeric < 0.0);
            CHECK(force_sphere_plate(a, T, 100e-6, m, kIdealStatic, ModelKind::Impedance) < 0.0);
        }
    }

    TEST_CASE("sphere-plate force")
    {
        const auto m = gold_preset();
        const double dF = delta_free_energy(100e-9, 70.0, m, kIdealStatic, ModelKind::Impedance).delta_F;
        const double F1 = force_sphere_plate(100e-9, 70.0, 100e-6, m, kIdealStatic, ModelKind::Impedance);
        const double F2 = force_sphere_plate(100e-9, 70.0, 200e-6, m, kIdealStatic, ModelKind::Impedance);
        CHECK(F1 == doctest::Approx(2.0 * kPi * 100e-6 * dF).epsilon(1e-14));
        CHECK(F2 == doctest::Approx(2.0 * F1).epsilon(1e-14));
        CHECK(force_sphere_plate(100e-9, 0.0, 100e-6, m, kIdealStatic, ModelKind::Impedance) == 0.0);

        Notes notes;
        force_sphere_plate(100e-9, 70.0, 100e-6, m, kIdealStatic, ModelKind::Impedance, {}, &notes);
        CHECK(notes.empty());
        force_sphere_plate(100e-9, 70.0, 5e-6, m, kIdealStatic, ModelKind::Impedance, {}, &notes);
        CHECK(notes.size() == 1);
        CHECK_THROWS(force_sphere_plate(100e-9, 70.0, 0.0, m, kIdealStatic, ModelKind::Impedance));
    }

    TEST_CASE("evaluate fills the requested observables")
    {
        const auto m = gold_preset();
        const auto r = evaluate(300e-9, 30.0, m, kIdealStatic, ModelKind::Impedance, {}, {true, true, 50e-6});
        CHECK(r.S.has_value());
        CHECK(r.S_analytic.has_value());
        CHECK(r.F_pp.has_value());
        CHECK(r.F_pp_closed.has_value());
        REQUIRE(r.F_sp.has_value());
        CHECK(*r.F_sp == doctest::Approx(2.0 * kPi * 50e-6 * r.delta_F));
        const auto bare = evaluate(300e-9, 30.0, m, kIdealStatic, ModelKind::Impedance, {}, {false, false, {}});
        CHECK_FALSE(bare.S.has_value());
        CHECK_FALSE(bare.F_pp.has_value());
    }

    TEST_CASE("configuration validation")
    {
        ThermoConfig c;
        CHECK_NOTHROW(c.validate());
        c.a_step_relative = 0.5;
        CHECK_THROWS(c.validate());
        CHECK(method_policy_from_string("auto") == MethodPolicy::Auto);
        CHECK_THROWS(method_policy_from_string("fast"));
    }
}
