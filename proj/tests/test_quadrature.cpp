#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "slgeo/quadrature.hpp"

using namespace slgeo;

TEST_CASE("polynomials and smooth integrands", "[quadrature]") {
    const double third = integrate_adaptive([](double t) { return t * t; }, 0.0, 1.0, 1e-12);
    REQUIRE(std::abs(third - 1.0 / 3.0) < 1e-14);

    const double two = integrate_adaptive([](double t) { return std::sin(t); }, 0.0,
                                          std::numbers::pi, 1e-12);
    REQUIRE(std::abs(two - 2.0) < 1e-12);

    REQUIRE(integrate_adaptive([](double t) { return t; }, 1.0, 1.0, 1e-12) == 0.0);
}

TEST_CASE("tolerance halving never moves the result by more than the larger tolerance",
          "[quadrature]") {
    const auto wiggle = [](double t) { return std::sin(12.0 * t) / (1.0 + t * t); };
    double tol = 1e-4;
    double prev = integrate_adaptive(wiggle, 0.0, 3.0, tol);
    for (int step = 0; step < 10; ++step) {
        const double next = integrate_adaptive(wiggle, 0.0, 3.0, tol / 2.0);
        REQUIRE(std::abs(next - prev) <= tol);
        prev = next;
        tol /= 2.0;
    }
}

TEST_CASE("budget exhaustion raises", "[quadrature]") {
    const auto nasty = [](double t) { return std::sin(1.0 / (t + 1e-9)); };
    REQUIRE_THROWS_AS(integrate_adaptive(nasty, 0.0, 1.0, 1e-14, 16), std::runtime_error);
    REQUIRE_THROWS_AS(integrate_adaptive(nasty, 0.0, 1.0, 0.0), std::invalid_argument);
}
