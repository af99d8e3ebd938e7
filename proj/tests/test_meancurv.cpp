#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "slgeo/meancurv.hpp"
#include "slgeo/rng.hpp"

using namespace slgeo;

namespace {

double metric_real(MetricKind kind, const std::array<double, 4>& pz,
                   const std::array<double, 4>& pu, const std::array<double, 4>& pv) {
    const AmbientPoint z{{pz[0], pz[1]}, {pz[2], pz[3]}};
    const TangentVector u{{pu[0], pu[1]}, {pu[2], pu[3]}};
    const TangentVector v{{pv[0], pv[1]}, {pv[2], pv[3]}};
    switch (kind) {
        case MetricKind::Flat:
            return flat_metric(u, v);
        case MetricKind::FubiniStudy:
            return fs_metric(z, u, v);
        case MetricKind::ConformalFubiniStudy:
            return conformal_factor(z) * fs_metric(z, u, v);
    }
    return 0.0;
}

/// Christoffel action by finite differences of the real 4x4 ambient metric:
/// Gamma(u,w)^i = (1/2) g^{il} (d_j g_lk + d_k g_lj - d_l g_jk) u^j w^k.
std::array<double, 4> fd_christoffel(MetricKind kind, const std::array<double, 4>& z,
                                     const std::array<double, 4>& u,
                                     const std::array<double, 4>& w) {
    const double h = 1e-5;
    std::array<std::array<double, 4>, 4> basis{};
    for (int i = 0; i < 4; ++i) basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
    double g[4][4], dg[4][4][4];
    for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
            g[j][k] = metric_real(kind, z, basis[static_cast<std::size_t>(j)],
                                  basis[static_cast<std::size_t>(k)]);
    for (int l = 0; l < 4; ++l)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                auto zp = z, zm = z;
                zp[static_cast<std::size_t>(l)] += h;
                zm[static_cast<std::size_t>(l)] -= h;
                dg[l][j][k] = (metric_real(kind, zp, basis[static_cast<std::size_t>(j)],
                                           basis[static_cast<std::size_t>(k)]) -
                               metric_real(kind, zm, basis[static_cast<std::size_t>(j)],
                                           basis[static_cast<std::size_t>(k)])) /
                              (2.0 * h);
            }
    // invert g by Gauss-Jordan
    double a[4][8];
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) a[i][j] = g[i][j];
        for (int j = 0; j < 4; ++j) a[i][4 + j] = i == j ? 1.0 : 0.0;
    }
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        for (int j = 0; j < 8; ++j) std::swap(a[col][j], a[piv][j]);
        const double d = a[col][col];
        for (int j = 0; j < 8; ++j) a[col][j] /= d;
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            for (int j = 0; j < 8; ++j) a[r][j] -= f * a[col][j];
        }
    }
    std::array<double, 4> out{};
    for (int i = 0; i < 4; ++i) {
        double acc = 0.0;
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                double gamma = 0.0;
                for (int l = 0; l < 4; ++l)
                    gamma += a[i][4 + l] * (dg[j][l][k] + dg[k][l][j] - dg[l][j][k]);
                acc += 0.5 * gamma * u[static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(k)];
            }
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

}  // namespace

TEST_CASE("induced metric", "[meancurv]") {
    SECTION("flat metric of the equal-a family at s = 0") {
        const auto family = ProfileFamily::lawlor({1.0, 1.0});
        for (double alpha : {0.0, 0.7, 2.4}) {
            const Metric2 m = induced_metric(family, MetricKind::Flat, alpha, 0.0);
            REQUIRE(std::abs(m.aa - 1.0) < 1e-14);
            REQUIRE(std::abs(m.ss - 0.5) < 1e-14);
            REQUIRE(std::abs(m.as) < 1e-14);
        }
    }

    SECTION("positive definite for all kinds") {
        const auto family = ProfileFamily::lawlor({1.0, 2.0}, {0.3, 0.1});
        CounterRng rng(3001);
        for (int trial = 0; trial < 20; ++trial) {
            const double alpha = rng.uniform(0.0, 2.0 * std::numbers::pi);
            const double s = rng.uniform(-1.0, 1.0);
            for (MetricKind kind :
                 {MetricKind::Flat, MetricKind::FubiniStudy, MetricKind::ConformalFubiniStudy}) {
                const Metric2 m = induced_metric(family, kind, alpha, s);
                REQUIRE(m.aa > 0.0);
                REQUIRE(m.det() > 0.0);
            }
        }
    }

    SECTION("conformal matches plain Fubini-Study where the surface hugs the origin") {
        // large a => r(0) = 1/sqrt(a) small => |F| small => c(F) near 1
        const auto family = ProfileFamily::lawlor({100.0, 100.0});
        const Metric2 fs = induced_metric(family, MetricKind::FubiniStudy, 0.9, 0.0);
        const Metric2 cf = induced_metric(family, MetricKind::ConformalFubiniStudy, 0.9, 0.0);
        REQUIRE(std::abs(cf.aa / fs.aa - 1.0) < 0.02);
        REQUIRE(std::abs(cf.ss / fs.ss - 1.0) < 0.02);
    }

    SECTION("only n = 2 families are supported") {
        const auto family = ProfileFamily::lawlor({1.0, 1.0, 1.0});
        REQUIRE_THROWS_AS(induced_metric(family, MetricKind::Flat, 0.0, 0.0),
                          std::invalid_argument);
    }
}

TEST_CASE("ambient connection correction matches finite-difference Christoffels", "[meancurv]") {
    CounterRng rng(3003);
    for (MetricKind kind : {MetricKind::FubiniStudy, MetricKind::ConformalFubiniStudy}) {
        for (int trial = 0; trial < 10; ++trial) {
            std::array<double, 4> z, u, w;
            for (auto& c : z) c = rng.uniform(-1.0, 1.0);
            for (auto& c : u) c = rng.uniform(-1.0, 1.0);
            for (auto& c : w) c = rng.uniform(-1.0, 1.0);
            const auto fd = fd_christoffel(kind, z, u, w);
            const detail::Vec2c analytic = detail::christoffel_correction(
                kind, {{z[0], z[1]}, {z[2], z[3]}}, {{u[0], u[1]}, {u[2], u[3]}},
                {{w[0], w[1]}, {w[2], w[3]}});
            REQUIRE(std::abs(analytic.a.real() - fd[0]) < 1e-8);
            REQUIRE(std::abs(analytic.a.imag() - fd[1]) < 1e-8);
            REQUIRE(std::abs(analytic.b.real() - fd[2]) < 1e-8);
            REQUIRE(std::abs(analytic.b.imag() - fd[3]) < 1e-8);
        }
    }
}

TEST_CASE("harmonic-map residual", "[meancurv]") {
    const auto equal = ProfileFamily::lawlor({1.0, 1.0});

    SECTION("equal-a family: flat and conformal residuals shrink under refinement") {
        for (MetricKind kind : {MetricKind::Flat, MetricKind::ConformalFubiniStudy}) {
            double prev = laplace_beltrami_residual(equal, kind, ParamGrid{16, 16, -1.0, 1.0});
            for (int n : {32, 64}) {
                const double next =
                    laplace_beltrami_residual(equal, kind, ParamGrid{n, n, -1.0, 1.0});
                REQUIRE(next < prev);
                prev = next;
            }
            REQUIRE(prev < 1e-3);
        }
    }

    SECTION("the unrescaled Fubini-Study metric is not the harmonic one") {
        const double coarse =
            laplace_beltrami_residual(equal, MetricKind::FubiniStudy, ParamGrid{16, 16, -1.0, 1.0});
        const double fine =
            laplace_beltrami_residual(equal, MetricKind::FubiniStudy, ParamGrid{64, 64, -1.0, 1.0});
        REQUIRE(coarse > 1.0);
        REQUIRE(fine > 1.0);
    }

    SECTION("grid guards") {
        REQUIRE_THROWS_AS(
            laplace_beltrami_residual(equal, MetricKind::Flat, ParamGrid{4, 16, -1.0, 1.0}),
            std::invalid_argument);
        const auto family3 = ProfileFamily::lawlor({1.0, 1.0, 1.0});
        REQUIRE_THROWS_AS(
            laplace_beltrami_residual(family3, MetricKind::Flat, ParamGrid{16, 16, -1.0, 1.0}),
            std::invalid_argument);
    }
}

TEST_CASE("convergence study", "[meancurv]") {
    const auto equal = ProfileFamily::lawlor({1.0, 1.0});

    SECTION("second-order convergence for the harmonic metrics") {
        for (MetricKind kind : {MetricKind::Flat, MetricKind::ConformalFubiniStudy}) {
            const auto study = convergence_study(equal, kind, {16, 32, 64});
            REQUIRE(study.size() == 3);
            for (std::size_t k = 1; k < study.size(); ++k) {
                REQUIRE(study[k].residual < study[k - 1].residual);
                REQUIRE(study[k].observed_order >= 1.5);
                REQUIRE(study[k].observed_order <= 2.5);
            }
        }
    }

    SECTION("unequal-a conformal residual stays bounded away from zero") {
        const auto unequal = ProfileFamily::lawlor({1.0, 2.0});
        const double r_unequal =
            laplace_beltrami_residual(unequal, MetricKind::ConformalFubiniStudy,
                                      ParamGrid{64, 64, -1.0, 1.0});
        const double r_equal = laplace_beltrami_residual(
            equal, MetricKind::ConformalFubiniStudy, ParamGrid{64, 64, -1.0, 1.0});
        REQUIRE(r_unequal >= 10.0 * r_equal);
    }

    SECTION("level validation") {
        REQUIRE_THROWS_AS(convergence_study(equal, MetricKind::Flat, {32}), std::invalid_argument);
        REQUIRE_THROWS_AS(convergence_study(equal, MetricKind::Flat, {16, 32}),
                          std::invalid_argument);
        REQUIRE_THROWS_AS(convergence_study(equal, MetricKind::Flat, {16, 24, 32}),
                          std::invalid_argument);
    }
}
