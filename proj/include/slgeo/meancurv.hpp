#pragma once

// Discrete Laplace-Beltrami residual of the position map F(alpha, s) =
// (x_1(alpha) omega_1(s), x_2(alpha) omega_2(s)) on a periodic-by-interval
// parameter grid, for the flat, Fubini-Study, or conformally rescaled
// Fubini-Study ambient metric.  The operator is the Laplace operator of the
// map F into the chosen ambient geometry: the divergence-form term
// (1/sqrt(det g)) d_i(sqrt(det g) g^{ij} d_j F) plus the ambient
// Levi-Civita correction g^{ij} Gamma(d_i F, d_j F), with g the induced
// metric.  For an isometric immersion this equals the mean curvature vector,
// so a residual vanishing under refinement certifies harmonicity of F.  The
// flat kind has no correction term.

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "slgeo/families.hpp"
#include "slgeo/forms.hpp"
#include "slgeo/linalg.hpp"

namespace slgeo {

enum class MetricKind { Flat, FubiniStudy, ConformalFubiniStudy };

struct ParamGrid {
    int alpha_count = 64;  // periodic direction, spacing 2 pi / alpha_count
    int s_count = 64;      // interval direction, endpoints included
    double s_min = -1.0;
    double s_max = 1.0;
};

/// Symmetric 2x2 induced metric [ [aa, as], [as, ss] ] in (alpha, s) order.
struct Metric2 {
    double aa = 0.0, as = 0.0, ss = 0.0;
    double det() const { return aa * ss - as * as; }
};

namespace detail {

struct SurfaceChart {
    double p1 = 1.0, p2 = 1.0;  // x(alpha) = (p1 cos alpha, p2 sin alpha)
};

inline SurfaceChart surface_chart(const ProfileFamily& family) {
    if (family.dim() != 2)
        throw std::invalid_argument("mean curvature grid: only n = 2 is supported");
    const double C = family.constraint_constant();
    const auto& lambda = family.lambda();
    SurfaceChart chart;
    const double q1 = C / lambda[0];
    const double q2 = C / lambda[1];
    if (!(q1 > 0.0) || !(q2 > 0.0))
        throw std::invalid_argument(
            "mean curvature grid: quadric admits no circle chart (C / lambda_j <= 0)");
    chart.p1 = std::sqrt(q1);
    chart.p2 = std::sqrt(q2);
    return chart;
}

struct Vec2c {
    Complex a{0.0, 0.0}, b{0.0, 0.0};
    Vec2c operator+(const Vec2c& o) const { return {a + o.a, b + o.b}; }
    Vec2c operator-(const Vec2c& o) const { return {a - o.a, b - o.b}; }
    Vec2c operator*(double f) const { return {a * f, b * f}; }
    Vec2c operator*(Complex f) const { return {a * f, b * f}; }
    double norm() const { return std::sqrt(std::norm(a) + std::norm(b)); }
};

/// Levi-Civita Christoffel action Gamma(u, w) of the ambient metric at z,
/// as a complex 2-tuple.  For the Kaehler Fubini-Study metric the only
/// nonzero symbols are Gamma^p_{qr} = -(delta^p_q conj(z_r) +
/// delta^p_r conj(z_q)) / K, giving Gamma(u, w) = -(u <z,w> + w <z,u>) / K.
/// The conformal rescaling by c = K^{(n+1)/n} adds
/// (1/2)(u dlogc(w) + w dlogc(u) - g_FS(u, w) grad_FS log c) with
/// dlogc(u) = 2 kappa Re<z,u> / K and grad_FS log c = 2 kappa K z,
/// kappa = (n+1)/n.
inline Vec2c christoffel_correction(MetricKind kind, const Vec2c& z, const Vec2c& u,
                                    const Vec2c& w) {
    if (kind == MetricKind::Flat) return {};
    const double k = 1.0 + std::norm(z.a) + std::norm(z.b);
    const Complex zu = std::conj(z.a) * u.a + std::conj(z.b) * u.b;
    const Complex zw = std::conj(z.a) * w.a + std::conj(z.b) * w.b;
    Vec2c out = (u * zw + w * zu) * (-1.0 / k);
    if (kind == MetricKind::ConformalFubiniStudy) {
        constexpr double kappa = 1.5;  // (n + 1) / n at n = 2
        const double beta_u = 2.0 * kappa * zu.real() / k;
        const double beta_w = 2.0 * kappa * zw.real() / k;
        const double inner_uw = (std::conj(u.a) * w.a + std::conj(u.b) * w.b).real();
        const double g_fs = inner_uw / k - (zu * std::conj(zw)).real() / (k * k);
        const Vec2c grad = z * (2.0 * kappa * k);
        out = out + (u * beta_w + w * beta_u - grad * g_fs) * 0.5;
    }
    return out;
}

inline double ambient_metric(MetricKind kind, const AmbientPoint& z, const TangentVector& u,
                             const TangentVector& v) {
    switch (kind) {
        case MetricKind::Flat:
            return flat_metric(u, v);
        case MetricKind::FubiniStudy:
            return fs_metric(z, u, v);
        case MetricKind::ConformalFubiniStudy:
            return conformal_factor(z) * fs_metric(z, u, v);
    }
    throw std::logic_error("ambient_metric: unknown metric kind");
}

inline Metric2 induced_metric_at(MetricKind kind, const SurfaceChart& chart, double alpha,
                                 const ProfileValue& w1, const ProfileValue& w2) {
    const double c = std::cos(alpha), s = std::sin(alpha);
    const double x1 = chart.p1 * c, x2 = chart.p2 * s;
    const double dx1 = -chart.p1 * s, dx2 = chart.p2 * c;
    const AmbientPoint z{x1 * w1.omega, x2 * w2.omega};
    const TangentVector da{dx1 * w1.omega, dx2 * w2.omega};
    const TangentVector ds{x1 * w1.omega_dot, x2 * w2.omega_dot};
    Metric2 m;
    m.aa = ambient_metric(kind, z, da, da);
    m.as = ambient_metric(kind, z, da, ds);
    m.ss = ambient_metric(kind, z, ds, ds);
    if (!(m.det() > 0.0) || !(m.aa > 0.0))
        throw std::domain_error("induced metric degenerate at alpha=" + std::to_string(alpha));
    return m;
}

}  // namespace detail

/// Induced metric g_ij = G(d_i F, d_j F) at one parameter point, with G per
/// MetricKind; symmetric positive definite for valid families.
inline Metric2 induced_metric(const ProfileFamily& family, MetricKind kind, double alpha,
                              double s) {
    const auto chart = detail::surface_chart(family);
    return detail::induced_metric_at(kind, chart, alpha, family.profile_eval(0, s),
                                     family.profile_eval(1, s));
}

/// Max-norm divergence-form Laplace-Beltrami residual over the interior grid,
///   Delta F = (1/sqrt(det g)) d_i ( sqrt(det g) g^{ij} d_j F ),
/// discretized with metric terms at half-grid points (second order, periodic
/// in alpha, s boundary rows excluded).  Normalized by the largest
/// |d_alpha F|^2 + |d_s F|^2 over the grid.
inline double laplace_beltrami_residual(const ProfileFamily& family, MetricKind kind,
                                        const ParamGrid& grid) {
    using detail::Vec2c;
    if (grid.alpha_count < 8 || grid.s_count < 8)
        throw std::invalid_argument("laplace_beltrami_residual: grid too small (counts >= 8)");
    if (!(grid.s_max > grid.s_min))
        throw std::invalid_argument("laplace_beltrami_residual: empty s range");
    const auto chart = detail::surface_chart(family);
    const int na = grid.alpha_count;
    const int ns = grid.s_count;
    const double da = 2.0 * std::numbers::pi / na;
    const double ds = (grid.s_max - grid.s_min) / (ns - 1);

    // Profile values at integer and half-integer s rows.
    std::vector<std::array<ProfileValue, 2>> prof_full(static_cast<std::size_t>(ns));
    std::vector<std::array<ProfileValue, 2>> prof_half(static_cast<std::size_t>(ns - 1));
    for (int j = 0; j < ns; ++j) {
        const double s = grid.s_min + j * ds;
        prof_full[static_cast<std::size_t>(j)] = {family.profile_eval(0, s),
                                                  family.profile_eval(1, s)};
    }
    for (int j = 0; j + 1 < ns; ++j) {
        const double s = grid.s_min + (j + 0.5) * ds;
        prof_half[static_cast<std::size_t>(j)] = {family.profile_eval(0, s),
                                                  family.profile_eval(1, s)};
    }

    const auto node = [&](int i, int j) -> std::size_t {
        const int wrapped = ((i % na) + na) % na;
        return static_cast<std::size_t>(wrapped * ns + j);
    };

    // Position map and the gradient scale.
    std::vector<Vec2c> f(static_cast<std::size_t>(na * ns));
    double scale = 0.0;
    for (int i = 0; i < na; ++i) {
        const double alpha = i * da;
        const double c = std::cos(alpha), sn = std::sin(alpha);
        const double x1 = chart.p1 * c, x2 = chart.p2 * sn;
        const double dx1 = -chart.p1 * sn, dx2 = chart.p2 * c;
        for (int j = 0; j < ns; ++j) {
            const auto& w = prof_full[static_cast<std::size_t>(j)];
            f[node(i, j)] = Vec2c{x1 * w[0].omega, x2 * w[1].omega};
            const Vec2c grad_a{dx1 * w[0].omega, dx2 * w[1].omega};
            const Vec2c grad_s{x1 * w[0].omega_dot, x2 * w[1].omega_dot};
            scale = std::max(scale, grad_a.norm() * grad_a.norm() + grad_s.norm() * grad_s.norm());
        }
    }

    struct InvMetric {
        double sqrtg = 0.0, iaa = 0.0, ias = 0.0, iss = 0.0;
    };
    const auto invert = [](const Metric2& m) {
        const double det = m.det();
        if (!(det > 0.0)) throw std::domain_error("laplace_beltrami_residual: degenerate metric");
        InvMetric inv;
        inv.sqrtg = std::sqrt(det);
        inv.iaa = m.ss / det;
        inv.ias = -m.as / det;
        inv.iss = m.aa / det;
        return inv;
    };

    // Fluxes through the alpha = (i+1/2) faces, interior s rows only.
    std::vector<Vec2c> flux_a(static_cast<std::size_t>(na * ns));
    for (int i = 0; i < na; ++i) {
        const double alpha = (i + 0.5) * da;
        for (int j = 1; j + 1 < ns; ++j) {
            const auto& w = prof_full[static_cast<std::size_t>(j)];
            const InvMetric inv = invert(detail::induced_metric_at(kind, chart, alpha, w[0], w[1]));
            const Vec2c dfa = (f[node(i + 1, j)] - f[node(i, j)]) * (1.0 / da);
            const Vec2c dfs = (f[node(i, j + 1)] + f[node(i + 1, j + 1)] - f[node(i, j - 1)] -
                               f[node(i + 1, j - 1)]) *
                              (1.0 / (4.0 * ds));
            flux_a[node(i, j)] = (dfa * inv.iaa + dfs * inv.ias) * inv.sqrtg;
        }
    }

    // Fluxes through the s = (j+1/2) faces.
    std::vector<Vec2c> flux_s(static_cast<std::size_t>(na * ns));
    for (int i = 0; i < na; ++i) {
        const double alpha = i * da;
        for (int j = 0; j + 1 < ns; ++j) {
            const auto& w = prof_half[static_cast<std::size_t>(j)];
            const InvMetric inv = invert(detail::induced_metric_at(kind, chart, alpha, w[0], w[1]));
            const Vec2c dfs = (f[node(i, j + 1)] - f[node(i, j)]) * (1.0 / ds);
            const Vec2c dfa = (f[node(i + 1, j)] + f[node(i + 1, j + 1)] - f[node(i - 1, j)] -
                               f[node(i - 1, j + 1)]) *
                              (1.0 / (4.0 * da));
            flux_s[node(i, j)] = (dfa * inv.ias + dfs * inv.iss) * inv.sqrtg;
        }
    }

    double worst = 0.0;
    for (int i = 0; i < na; ++i) {
        const double alpha = i * da;
        const double c = std::cos(alpha), sn = std::sin(alpha);
        const double x1 = chart.p1 * c, x2 = chart.p2 * sn;
        const double dx1 = -chart.p1 * sn, dx2 = chart.p2 * c;
        for (int j = 1; j + 1 < ns; ++j) {
            const auto& w = prof_full[static_cast<std::size_t>(j)];
            const InvMetric inv = invert(detail::induced_metric_at(kind, chart, alpha, w[0], w[1]));
            const Vec2c div = (flux_a[node(i, j)] - flux_a[node(i - 1, j)]) * (1.0 / da) +
                              (flux_s[node(i, j)] - flux_s[node(i, j - 1)]) * (1.0 / ds);
            // Ambient-connection term of the map Laplacian, from the
            // analytic partials; zero for the flat kind.
            const Vec2c pos{x1 * w[0].omega, x2 * w[1].omega};
            const Vec2c grad_a{dx1 * w[0].omega, dx2 * w[1].omega};
            const Vec2c grad_s{x1 * w[0].omega_dot, x2 * w[1].omega_dot};
            const Vec2c correction =
                detail::christoffel_correction(kind, pos, grad_a, grad_a) * inv.iaa +
                detail::christoffel_correction(kind, pos, grad_a, grad_s) * (2.0 * inv.ias) +
                detail::christoffel_correction(kind, pos, grad_s, grad_s) * inv.iss;
            worst = std::max(worst, (div * (1.0 / inv.sqrtg) + correction).norm());
        }
    }
    return worst / scale;
}

struct ConvergenceLevel {
    int grid_count = 0;
    double spacing = 0.0;
    double residual = 0.0;
    double observed_order = std::numeric_limits<double>::quiet_NaN();
};

/// Residuals across a sequence of square grids, each level doubling the node
/// count, with observed order log2(residual_k / residual_{k+1}) between
/// consecutive levels.
inline std::vector<ConvergenceLevel> convergence_study(const ProfileFamily& family,
                                                       MetricKind kind,
                                                       const std::vector<int>& levels,
                                                       double s_min = -1.0, double s_max = 1.0) {
    if (levels.size() < 3)
        throw std::invalid_argument("convergence_study: need at least three grid levels");
    for (std::size_t k = 0; k + 1 < levels.size(); ++k)
        if (levels[k + 1] != 2 * levels[k])
            throw std::invalid_argument("convergence_study: levels must double (halved spacing)");
    std::vector<ConvergenceLevel> out;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        ParamGrid grid{levels[k], levels[k], s_min, s_max};
        ConvergenceLevel lvl;
        lvl.grid_count = levels[k];
        lvl.spacing = (s_max - s_min) / (levels[k] - 1);
        lvl.residual = laplace_beltrami_residual(family, kind, grid);
        if (k > 0 && lvl.residual > 0.0)
            lvl.observed_order = std::log2(out.back().residual / lvl.residual);
        out.push_back(lvl);
    }
    return out;
}

}  // namespace slgeo
