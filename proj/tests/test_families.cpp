#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "slgeo/families.hpp"
#include "slgeo/rng.hpp"
#include "support/oracles.hpp"

using namespace slgeo;

TEST_CASE("profile radius", "[families]") {
    REQUIRE(lawlor_r(1.0, 0.0) == 1.0);
    REQUIRE(lawlor_r(4.0, 0.0) == 0.5);
    REQUIRE(std::abs(lawlor_r(1.0, 1.0) - std::sqrt(2.0)) < 1e-15);
    REQUIRE_THROWS_AS(lawlor_r(0.0, 1.0), std::domain_error);
    REQUIRE_THROWS_AS(lawlor_r(-1.0, 1.0), std::domain_error);
}

TEST_CASE("phase integrand", "[families]") {
    const std::vector<double> a{1.0, 1.0};
    REQUIRE(std::abs(lawlor_phase_integrand(a, 0, 0.0) - 1.0 / std::sqrt(2.0)) < 1e-15);
    REQUIRE(std::abs(lawlor_phase_integrand(a, 0, 1.0) - 1.0 / (2.0 * std::sqrt(3.0))) < 1e-15);

    SECTION("even in t and continuous through 0") {
        CounterRng rng(61);
        const std::vector<double> mixed{0.7, 1.3, 2.1};
        for (int trial = 0; trial < 30; ++trial) {
            const double t = rng.uniform(-3.0, 3.0);
            for (int j = 0; j < 3; ++j) {
                const double plus = lawlor_phase_integrand(mixed, j, t);
                const double minus = lawlor_phase_integrand(mixed, j, -t);
                REQUIRE(plus == minus);
            }
        }
        // tiny |t| stays near the removable limit (no cancellation blowup)
        for (int j = 0; j < 3; ++j) {
            const double limit = lawlor_phase_integrand(mixed, j, 0.0);
            REQUIRE(std::abs(lawlor_phase_integrand(mixed, j, 1e-8) - limit) < 1e-16 + 1e-12 * limit);
        }
    }

    REQUIRE_THROWS_AS(lawlor_phase_integrand(a, 2, 0.5), std::out_of_range);
}

TEST_CASE("phase integral", "[families]") {
    const LawlorParams params{2, {1.0, 1.0}, {0.0, 0.0}};
    REQUIRE(lawlor_phi(params, 0, 0.0) == 0.0);
    REQUIRE(std::abs(lawlor_phi(params, 0, 1.0) - std::numbers::pi / 6.0) < 1e-10);

    SECTION("matches the closed-form antiderivative") {
        for (int k = 0; k < 20; ++k) {
            const double s = -3.0 + 6.0 * k / 19.0;
            REQUIRE(std::abs(lawlor_phi(params, 0, s) - oracles::phase_closed_form(s)) < 1e-10);
        }
    }

    SECTION("odd about psi") {
        const LawlorParams shifted{2, {1.0, 2.5}, {0.4, -0.2}};
        CounterRng rng(67);
        for (int trial = 0; trial < 10; ++trial) {
            const double s = rng.uniform(0.0, 2.5);
            for (int j = 0; j < 2; ++j) {
                const double psi = shifted.psi[static_cast<std::size_t>(j)];
                const double up = lawlor_phi(shifted, j, s) - psi;
                const double down = lawlor_phi(shifted, j, -s) - psi;
                REQUIRE(std::abs(up + down) < 1e-11);
            }
        }
    }

    SECTION("halving the tolerance moves the value by at most the larger tolerance") {
        const LawlorParams mixed{3, {0.5, 1.0, 2.0}, {0.0, 0.0, 0.0}};
        double tol = 1e-6;
        double prev = lawlor_phi(mixed, 1, 1.7, tol);
        for (int step = 0; step < 8; ++step) {
            const double next = lawlor_phi(mixed, 1, 1.7, tol / 2.0);
            REQUIRE(std::abs(next - prev) <= tol);
            prev = next;
            tol /= 2.0;
        }
    }
}

TEST_CASE("profile evaluation", "[families]") {
    SECTION("exponential profiles") {
        const auto family = ProfileFamily::exponential({1.0, 2.0}, 1.0);
        const ProfileValue p0 = family.profile_eval(0, 0.0);
        REQUIRE(p0.omega == Complex{1.0, 0.0});
        REQUIRE(std::abs(p0.omega_dot - Complex{0.0, 2.0}) < 1e-15);
        REQUIRE(p0.hypothesis_ok);

        CounterRng rng(71);
        for (int trial = 0; trial < 20; ++trial) {
            const double s = rng.uniform(-4.0, 4.0);
            for (int j = 0; j < 2; ++j)
                REQUIRE(std::abs(std::abs(family.profile_eval(j, s).omega) - 1.0) < 1e-15);
        }
    }

    SECTION("Lawlor profile at s = 0") {
        const auto family = ProfileFamily::lawlor({1.0, 1.0});
        const ProfileValue p = family.profile_eval(0, 0.0);
        REQUIRE(p.omega == Complex{1.0, 0.0});
        REQUIRE(std::abs(p.omega_dot - Complex{0.0, 1.0 / std::sqrt(2.0)}) < 1e-14);
        REQUIRE(p.r == 1.0);
        REQUIRE(p.phi_dot > 0.0);
    }

    SECTION("derivative consistency: central differences converge at order >= 1.9") {
        const auto family = ProfileFamily::lawlor({0.8, 1.7}, {0.3, -0.1});
        const double s0 = 0.6;
        std::vector<double> errs;
        for (double h : {1e-2, 5e-3, 2.5e-3}) {
            const Complex fd =
                (family.profile_eval(0, s0 + h).omega - family.profile_eval(0, s0 - h).omega) /
                (2.0 * h);
            errs.push_back(std::abs(fd - family.profile_eval(0, s0).omega_dot));
        }
        for (std::size_t k = 0; k + 1 < errs.size(); ++k) {
            const double order = std::log2(errs[k] / errs[k + 1]);
            REQUIRE(order >= 1.9);
        }
    }

    SECTION("Im(omega_dot conj(omega)) is j-independent for Lawlor profiles") {
        const auto family = ProfileFamily::lawlor({0.5, 1.0, 2.0}, {0.1, 0.7, -0.4});
        CounterRng rng(73);
        for (int trial = 0; trial < 20; ++trial) {
            const double s = rng.uniform(-2.0, 2.0);
            const auto prof = family.profiles(s);
            const double first = std::imag(prof[0].omega_dot * std::conj(prof[0].omega));
            for (const ProfileValue& p : prof) {
                const double v = std::imag(p.omega_dot * std::conj(p.omega));
                REQUIRE(std::abs(v - first) <= 1e-12 * std::abs(first));
            }
            if (s != 0.0) {
                // the common value is |s| / sqrt(prod(1 + a_k s^2) - 1)
                const double q = (1.0 + 0.5 * s * s) * (1.0 + s * s) * (1.0 + 2.0 * s * s) - 1.0;
                REQUIRE(std::abs(first - std::abs(s) / std::sqrt(q)) <=
                        1e-11 * std::abs(first));
            }
        }
    }
}

TEST_CASE("family construction guards", "[families]") {
    REQUIRE_THROWS_AS(ProfileFamily::lawlor({1.0, -1.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(ProfileFamily::lawlor({}), std::invalid_argument);
    REQUIRE_THROWS_AS(ProfileFamily::exponential({1.0, 2.0}, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(ProfileFamily::exponential({0.0, 2.0}, 1.0), std::invalid_argument);
    // lambda_2 (lambda_2 + C) = -0.25 < 0
    REQUIRE_THROWS_AS(ProfileFamily::exponential({1.0, -0.5}, 1.0), std::invalid_argument);
    // mixed-sign lambda with the sign condition satisfied is legitimate
    REQUIRE_NOTHROW(ProfileFamily::exponential({3.0, -1.0}, -1.0));
}

TEST_CASE("embedding", "[families]") {
    SECTION("exponential axis point") {
        const auto family = ProfileFamily::exponential({2.0, 1.0}, 1.0);
        // lambda_1 x_1^2 = C  =>  x_1 = 1/sqrt(2)
        const RVector x{1.0 / std::sqrt(2.0), 0.0};
        const AmbientPoint z = embed(family, x, 0.0);
        REQUIRE(std::abs(z[0] - Complex{x[0], 0.0}) < 1e-15);
        REQUIRE(std::abs(z[1]) == 0.0);
    }

    SECTION("Lawlor axis point") {
        const auto family = ProfileFamily::lawlor({1.0, 1.0});
        const AmbientPoint z = embed(family, {1.0, 0.0}, 0.0);
        REQUIRE(z[0] == Complex{1.0, 0.0});
        REQUIRE(z[1] == Complex{0.0, 0.0});
    }

    SECTION("modulus factorization |z_j| = |x_j| r_j(s)") {
        const auto family = ProfileFamily::lawlor({0.5, 2.0});
        CounterRng rng(79);
        for (int trial = 0; trial < 20; ++trial) {
            const double t = rng.uniform(0.0, 2.0 * std::numbers::pi);
            const RVector x{std::cos(t), std::sin(t)};
            const double s = rng.uniform(-2.0, 2.0);
            const AmbientPoint z = embed(family, x, s);
            for (int j = 0; j < 2; ++j) {
                const double a_j = j == 0 ? 0.5 : 2.0;
                const double expected = std::abs(x[static_cast<std::size_t>(j)]) * lawlor_r(a_j, s);
                REQUIRE(std::abs(std::abs(z[static_cast<std::size_t>(j)]) - expected) < 1e-13);
            }
        }
    }

    SECTION("constraint violation") {
        const auto family = ProfileFamily::lawlor({1.0, 1.0});
        REQUIRE_THROWS_AS(embed(family, {1.0, 0.5}, 0.0), std::invalid_argument);
    }
}

TEST_CASE("immersion check", "[families]") {
    SECTION("Lawlor, equal parameters, s = 0") {
        const auto family = ProfileFamily::lawlor({1.0, 1.0});
        REQUIRE(immersion_check(family, {1.0, 0.0}, 0.0));
        REQUIRE(immersion_check(family, {0.6, 0.8}, 0.0));
    }

    SECTION("exponential with positive frequencies") {
        const auto family = ProfileFamily::exponential({1.0, 2.0}, 1.0);
        CounterRng rng(83);
        for (int trial = 0; trial < 10; ++trial) {
            const double t = rng.uniform(0.0, 2.0 * std::numbers::pi);
            // ellipse x_1^2 + 2 x_2^2 = 1
            const RVector x{std::cos(t), std::sin(t) / std::sqrt(2.0)};
            REQUIRE(immersion_check(family, x, rng.uniform(-2.0, 2.0)));
        }
    }

    SECTION("mixed-sign frequencies violate the rotating-phase hypothesis") {
        const auto family = ProfileFamily::exponential({3.0, -1.0}, -1.0);
        // 3 x_1^2 - x_2^2 = -1
        const RVector x{1.0, 2.0};
        REQUIRE_FALSE(immersion_check(family, x, 0.0));
    }

    SECTION("zero vector is not on Sigma") {
        const auto family = ProfileFamily::lawlor({1.0, 1.0});
        REQUIRE_THROWS_AS(immersion_check(family, {0.0, 0.0}, 0.0), std::invalid_argument);
    }
}
