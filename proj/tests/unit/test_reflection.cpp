#include "casimir/constants.hpp"
#include "casimir/reflection.hpp"

#include <doctest.h>

#include <cfloat>
#include <cmath>
#include <numbers>
#include <random>

using namespace casimir;

namespace
{
    constexpr double kEps = DBL_EPSILON;
} // namespace

TEST_SUITE("reflection_models")
{
    TEST_CASE("dimensionless state from physical variables")
    {
        const auto m = gold_preset();
        const auto s = DimensionlessState::from_physical(300e-9, 50.0, m.omega_p, m.v());
        const double omega_a = 299792458.0 / 600e-9;
        const double T_eff = 1.054571817e-34 * omega_a / 1.380649e-23;
        const double tau = 2.0 * std::numbers::pi * 50.0 / T_eff;
        CHECK(s.omega_a == doctest::Approx(omega_a).epsilon(1e-14));
        CHECK(s.T_eff == doctest::Approx(T_eff).epsilon(1e-14));
        CHECK(s.tau == doctest::Approx(tau).epsilon(1e-14));
        const double A = std::pow((299792458.0 / 1.5e6) * std::pow(m.omega_p / omega_a, 2) * tau, 1.0 / 3.0);
        const double B = std::pow((1.5e6 / 299792458.0) * std::pow(omega_a / m.omega_p, 2) * std::pow(tau, 5), 1.0 / 3.0);
        CHECK(s.A == doctest::Approx(A).epsilon(1e-13));
        CHECK(s.B == doctest::Approx(B).epsilon(1e-13));
        CHECK(s.kappa == doctest::Approx(std::cbrt(s.tau) / s.A).epsilon(1e-13));
        CHECK(s.xi(0) == 0.0);
        CHECK(s.xi(3) == doctest::Approx(3.0 * s.tau));

        const auto zero = DimensionlessState::from_physical(300e-9, 0.0, m.omega_p, m.v());
        CHECK(zero.tau == 0.0);
        CHECK_THROWS(DimensionlessState::from_physical(0.0, 1.0, m.omega_p, m.v()));
        CHECK_THROWS(DimensionlessState::from_physical(1e-7, -1.0, m.omega_p, m.v()));
        CHECK_THROWS(DimensionlessState::from_A_tau(0.0, 0.1));
    }

    TEST_CASE("A B = tau^2 to a few ulp")
    {
        const auto m = gold_preset();
        std::mt19937_64 rng(12345);
        std::uniform_real_distribution<double> la(std::log(1e-8), std::log(1e-5));
        std::uniform_real_distribution<double> lt(std::log(1e-3), std::log(1e3));
        for (int i = 0; i < 2000; ++i) {
            const auto s = DimensionlessState::from_physical(std::exp(la(rng)), std::exp(lt(rng)), m.omega_p, m.v());
            const double t2 = s.tau * s.tau;
            CHECK(std::abs(s.A * s.B - t2) <= 4.0 * kEps * t2);
            CHECK(s.A > 0.0);
            CHECK(s.B > 0.0);
        }
    }

    TEST_CASE("temperature for A inverts the state")
    {
        const auto m = gold_preset();
        for (double A : {0.01, 1.0, 77.0}) {
            const double T = temperature_for_A(A, 300e-9, m.omega_p, m.v());
            CHECK(DimensionlessState::from_physical(300e-9, T, m.omega_p, m.v()).A == doctest::Approx(A).epsilon(1e-12));
        }
    }

    TEST_CASE("Drude permittivity")
    {
        const auto m = gold_preset();
        CHECK(drude_permittivity(1e4 * m.omega_p, m, 3.42e13) == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(drude_permittivity(m.omega_p, m, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
        const double expected = 1.0 + (1.37e16 * 1.37e16) / (1e15 * (1e15 + 3.42e13));
        CHECK(drude_permittivity(1e15, m, 3.42e13) == doctest::Approx(expected).epsilon(1e-14));
        CHECK(drude_permittivity(1e15, m, 3.42e13) == doctest::Approx(182.5).epsilon(5e-4));
        CHECK(drude_permittivity(1e10, m, 3.42e13) > 1.0);
        CHECK_THROWS_AS(drude_permittivity(0.0, m, 3.42e13), std::invalid_argument);
    }

    TEST_CASE("Drude amplitudes")
    {
        auto [a1, a2] = drude_reflection(0.5, 1.0, 0.0);
        CHECK(a1 == 0.0);
        CHECK(a2 == doctest::Approx(0.0));

        auto [b1, b2] = drude_reflection(0.5, 0.7, 0.7);
        const double s2 = std::sqrt(2.0);
        CHECK(b1 == doctest::Approx((s2 - 1.0) / (s2 + 1.0)).epsilon(1e-14));
        CHECK(b1 == doctest::Approx(0.17157).epsilon(1e-4));

        auto [c1, c2] = drude_reflection(0.5, 1.0, 1e9);
        CHECK(c1 == doctest::Approx(1.0).epsilon(1e-8));

        CHECK_THROWS(drude_reflection(0.0, 1.0, 1.0));
        CHECK_THROWS(drude_reflection(1.0, 0.0, 1.0));
    }

    TEST_CASE("Drude amplitudes against the defining square roots")
    {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(-4.0, 4.0);
        for (int i = 0; i < 500; ++i) {
            const double xi = std::pow(10.0, u(rng));
            const double y = xi * (1.0 + std::pow(10.0, u(rng)));
            const double R = std::pow(10.0, u(rng));
            const long double Rl = R, yl = y, xl = xi;
            const long double root = std::sqrt(Rl * Rl + yl * yl);
            const long double eps = 1.0L + Rl * Rl / (xl * xl);
            const auto [r1, r2] = drude_reflection(xi, y, R);
            if (R > 1e-3 * y)
                CHECK(r1 == doctest::Approx(static_cast<double>((root - yl) / (root + yl))).epsilon(1e-9));
            else
                CHECK(r1 == doctest::Approx(R * R / (4.0 * y * y)).epsilon(1e-5));
            CHECK(std::abs(std::abs(r2) - static_cast<double>(std::abs((eps * yl - root) / (eps * yl + root)))) < 1e-12);
            CHECK(r1 >= 0.0);
            CHECK(r1 < 1.0);
            CHECK(std::abs(r2) <= 1.0);
        }
    }

    TEST_CASE("Drude r1 increases with R")
    {
        for (double y : {0.1, 1.0, 10.0}) {
            double prev = -1.0;
            for (double R = 1e-3; R < 1e4; R *= 1.7) {
                const double r1 = drude_reflection(0.05, y, R).first;
                CHECK(r1 > prev);
                prev = r1;
            }
        }
    }

    TEST_CASE("surface impedance")
    {
        const auto m = gold_preset();
        const double omega_a = 299792458.0 / 1e-6; // a = 500 nm
        CHECK(impedance_ase(0.0, m, omega_a) == 0.0);
        CHECK(impedance_ase(8.0, m, omega_a) == doctest::Approx(4.0 * impedance_ase(1.0, m, omega_a)).epsilon(1e-14));

        const double direct = std::cbrt(1.5e6 / 299792458.0 * std::pow(omega_a / 1.37e16, 2));
        CHECK(impedance_ase(1.0, m, omega_a) == doctest::Approx(direct).epsilon(1e-13));
        CHECK(impedance_ase(1.0, m, omega_a) == doctest::Approx(0.013381).epsilon(1e-4));
        CHECK(impedance_ase(1.0, m, omega_a) >= 0.0);

        Notes notes;
        const double xi_limit = (m.v_F / 299792458.0) * m.omega_p / omega_a;
        impedance_ase(0.5 * xi_limit, m, omega_a, &notes);
        CHECK(notes.empty());
        CHECK(impedance_ase(2.0 * xi_limit, m, omega_a, &notes) > 0.0);
        CHECK(notes.size() == 1);

        CHECK_THROWS_AS(impedance_ase(-1.0, m, omega_a), std::invalid_argument);
    }

    TEST_CASE("impedance amplitudes")
    {
        auto [i1, i2] = impedance_reflection(0.3, 0.9, 0.0);
        CHECK(i1 == 1.0);
        CHECK(i2 == 1.0);

        CHECK(impedance_reflection(0.3, 0.9, 0.3 / 0.9).first == doctest::Approx(0.0).scale(1.0));

        const double Z = 0.02;
        auto [e1, e2] = impedance_reflection(0.4, 0.4, Z);
        CHECK(e1 == doctest::Approx((1.0 - Z) / (1.0 + Z)).epsilon(1e-15));
        CHECK(e2 == doctest::Approx((1.0 - Z) / (1.0 + Z)).epsilon(1e-15));

        auto [z1, z2] = impedance_reflection(0.4, 1.3, 1e-12);
        CHECK(std::abs(z1 - 1.0) < 1e-11);
        CHECK(std::abs(z2 - 1.0) < 1e-11);

        auto [d1, d2] = impedance_reflection(0.4, 0.0, 0.1);
        CHECK(d1 == 1.0);
        CHECK(d2 == 1.0);

        Notes notes;
        impedance_reflection(0.4, 1.0, 0.1, &notes);
        CHECK(notes.empty());
        impedance_reflection(0.4, 1.0, 0.35, &notes);
        CHECK(notes.size() == 1);

        CHECK_THROWS(impedance_reflection(0.0, 1.0, 0.1));
        CHECK_THROWS(impedance_reflection(0.5, 1.0, -0.1));
    }

    TEST_CASE("impedance amplitudes bounded and monotone in Z")
    {
        for (double xi : {0.01, 0.3, 2.0})
            for (double y : {xi, 2.0 * xi, 50.0 * xi}) {
                double prev = 2.0;
                for (double Z = 0.0; Z < 0.3; Z += 0.01) {
                    const auto [r1, r2] = impedance_reflection(xi, y, Z);
                    CHECK(r1 <= 1.0);
                    CHECK(std::abs(r2) <= 1.0);
                    CHECK(r1 < prev);
                    prev = r1;
                }
            }
    }

    TEST_CASE("alpha for each prescription")
    {
        const auto m = gold_preset();
        const double omega_a = 0.01 * m.omega_p;
        CHECK(alpha_coefficient({Prescription::Unmodified, {}}, m, omega_a, 0.0) == 0.5);
        CHECK(alpha_coefficient({Prescription::IdealStatic, {}}, m, omega_a, 0.0) == 1.0);

        Notes notes;
        CHECK(alpha_coefficient({Prescription::PlasmaLike, {}}, m, omega_a, 1e13, &notes) ==
              doctest::Approx(0.96).epsilon(1e-14));
        CHECK(notes.size() == 1);

        // With a hook the omega_tau term is subtracted.
        const double wt = 3.42e13;
        PrescriptionKind hooked{Prescription::PlasmaLike, [](double x) { return 0.25 * x; }};
        const double expected = 0.96 - (wt / m.omega_p) * (2.0 / 1.2020569031595943) * 0.25 * (wt / omega_a);
        CHECK(alpha_coefficient(hooked, m, omega_a, wt) == doctest::Approx(expected).epsilon(1e-14));

        CHECK_THROWS_AS(alpha_coefficient({Prescription::PlasmaLike, {}}, m, 0.25 * m.omega_p, 0.0),
                        std::invalid_argument);
    }

    TEST_CASE("alpha ordering")
    {
        const auto m = gold_preset();
        for (double ratio = 1e-4; ratio < 0.1; ratio *= 1.5) {
            const double a1 = alpha_coefficient({Prescription::Unmodified, {}}, m, ratio * m.omega_p, 0.0);
            const double a2 = alpha_coefficient({Prescription::IdealStatic, {}}, m, ratio * m.omega_p, 0.0);
            const double a3 = alpha_coefficient({Prescription::PlasmaLike, {}}, m, ratio * m.omega_p, 0.0);
            CHECK(a1 < a3);
            CHECK(a3 < a2);
        }
    }

    TEST_CASE("zero-frequency term")
    {
        CHECK(zero_term_free_energy(0.0, 1e-6, 300.0) == 0.0);
        CHECK(zero_term_free_energy(1.0, 1e-6, 0.0) == 0.0);
        const double expected = -1.2020569031595943 * (1.380649e-23 * 300.0) / (8.0 * std::numbers::pi * 1e-12);
        CHECK(zero_term_free_energy(1.0, 1e-6, 300.0) == doctest::Approx(expected).epsilon(1e-14));
        CHECK(zero_term_free_energy(1.0, 1e-6, 300.0) == doctest::Approx(-1.981e-10).epsilon(1e-3));
        CHECK(zero_term_free_energy(0.5, 1e-6, 300.0) ==
              doctest::Approx(0.5 * zero_term_free_energy(1.0, 1e-6, 300.0)));
        CHECK_THROWS(zero_term_free_energy(1.0, 0.0, 1.0));
        CHECK_THROWS(zero_term_free_energy(1.0, 1e-6, -1.0));
    }

    TEST_CASE("name round trips")
    {
        for (auto p : {Prescription::Unmodified, Prescription::IdealStatic, Prescription::PlasmaLike})
            CHECK(prescription_from_string(to_string(p)) == p);
        for (auto k : {ModelKind::Impedance, ModelKind::Drude, ModelKind::Ideal})
            CHECK(model_from_string(to_string(k)) == k);
        CHECK_THROWS(prescription_from_string("classical"));
        CHECK_THROWS(model_from_string("lossy"));
    }

    TEST_CASE("reflection model agrees with the scalar amplitudes")
    {
        const double kappa = 0.05;
        const auto model = ReflectionModel::impedance(kappa);
        for (double xi : {0.01, 0.2, 3.0})
            for (double y : {xi, 1.5 * xi + 0.1, 20.0}) {
                const double Z = kappa * std::pow(xi, 2.0 / 3.0);
                const auto [r1, r2] = impedance_reflection(xi, y, Z);
                CHECK(model.r_squared(Polarization::Perpendicular, xi, y) == doctest::Approx(r1 * r1).epsilon(1e-13));
                CHECK(model.r_squared(Polarization::Parallel, xi, y) == doctest::Approx(r2 * r2).epsilon(1e-13));
                const Complex c1 = model.r_squared(Polarization::Perpendicular, Complex(xi), Complex(y));
                CHECK(c1.real() == doctest::Approx(r1 * r1).epsilon(1e-12));
                CHECK(std::abs(c1.imag()) < 1e-14);
            }

        const auto drude = ReflectionModel::drude(40.0, 0.1);
        for (double xi : {0.05, 1.0})
            for (double y : {xi, 4.0}) {
                const auto [r1, r2] = drude_reflection(xi, y, drude_R(xi, 40.0, 0.1));
                CHECK(drude.r_squared(Polarization::Perpendicular, xi, y) == doctest::Approx(r1 * r1).epsilon(1e-12));
                CHECK(drude.r_squared(Polarization::Parallel, xi, y) == doctest::Approx(r2 * r2).epsilon(1e-12));
            }

        CHECK(ReflectionModel::impedance(0.0).r_squared(Polarization::Parallel, 0.3, 0.4) == 1.0);
        CHECK(ReflectionModel::ideal().r_squared(Polarization::Perpendicular, 0.3, 0.4) == 1.0);
        CHECK(ReflectionModel::transparent().r_squared(Polarization::Perpendicular, 0.3, 0.4) == 0.0);
        CHECK_THROWS(ReflectionModel::impedance(-0.1));
    }
}
