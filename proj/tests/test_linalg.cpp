#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "slgeo/linalg.hpp"
#include "slgeo/rng.hpp"

using namespace slgeo;

namespace {
const Complex I{0.0, 1.0};
}

TEST_CASE("hermitian inner product", "[linalg]") {
    const CVector e1{{1.0, 0.0}, {0.0, 0.0}};
    const CVector e2{{0.0, 0.0}, {1.0, 0.0}};
    REQUIRE(hermitian_inner(e1, e1) == Complex{1.0, 0.0});
    REQUIRE(hermitian_inner(e1, e2) == Complex{0.0, 0.0});

    // Conjugation sits on the first slot.
    const CVector u{Complex{1.0, 1.0}, {0.0, 0.0}};
    const CVector v{{1.0, 0.0}, {0.0, 0.0}};
    REQUIRE(hermitian_inner(u, v) == Complex{1.0, -1.0});

    CounterRng rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const CVector a = rng.complex_vector(3);
        const CVector b = rng.complex_vector(3);
        const Complex ab = hermitian_inner(a, b);
        const Complex ba = hermitian_inner(b, a);
        REQUIRE(std::abs(ab - std::conj(ba)) < 1e-14);
        REQUIRE(hermitian_inner(a, a).real() >= 0.0);
        REQUIRE(std::abs(hermitian_inner(a, a).imag()) < 1e-14);
    }

    REQUIRE_THROWS_AS(hermitian_inner(e1, CVector{Complex{1.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("complex determinant", "[linalg]") {
    REQUIRE(complex_det(CMatrix::identity(3)) == Complex{1.0, 0.0});

    CMatrix swap(2);
    swap(0, 1) = 1.0;
    swap(1, 0) = 1.0;
    REQUIRE(complex_det(swap) == Complex{-1.0, 0.0});

    CMatrix diag_i(2);
    diag_i(0, 0) = I;
    diag_i(1, 1) = I;
    REQUIRE(std::abs(complex_det(diag_i) - Complex{-1.0, 0.0}) < 1e-15);

    SECTION("multiplicative on random products") {
        CounterRng rng(7);
        for (std::size_t n : {std::size_t{2}, std::size_t{3}}) {
            for (int trial = 0; trial < 25; ++trial) {
                CMatrix a(n), b(n);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) {
                        const double ar = rng.next_normal(), ai = rng.next_normal();
                        const double br = rng.next_normal(), bi = rng.next_normal();
                        a(i, j) = Complex{ar, ai};
                        b(i, j) = Complex{br, bi};
                    }
                const Complex lhs = complex_det(a * b);
                const Complex rhs = complex_det(a) * complex_det(b);
                REQUIRE(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
            }
        }
    }
}

TEST_CASE("real determinant", "[linalg]") {
    const RVector e1{1.0, 0.0, 0.0}, e2{0.0, 1.0, 0.0}, e3{0.0, 0.0, 1.0};
    REQUIRE(real_det({e1, e2, e3}) == 1.0);
    REQUIRE(real_det({e2, e1, e3}) == -1.0);
    REQUIRE(real_det({e1, e1, e3}) == 0.0);

    CounterRng rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<RVector> cols(3, RVector(3));
        for (auto& col : cols)
            for (double& c : col) c = rng.next_normal();
        const double base = real_det(cols);
        std::swap(cols[0], cols[2]);
        REQUIRE(std::abs(real_det(cols) + base) < 1e-12 * std::max(1.0, std::abs(base)));
    }

    REQUIRE_THROWS_AS(real_det({RVector{1.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("almost complex structure J", "[linalg]") {
    REQUIRE(apply_J({{1.0, 0.0}}) == CVector{I});
    REQUIRE(apply_J({I}) == CVector{Complex{-1.0, 0.0}});

    CounterRng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const CVector u = rng.complex_vector(4);
        const CVector jju = apply_J(apply_J(u));
        for (std::size_t k = 0; k < u.size(); ++k) REQUIRE(jju[k] == -u[k]);
    }
}
