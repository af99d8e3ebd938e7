#pragma once

// Geometry of the quadric Sigma = { sum_j lambda_j x_j^2 = C }: point
// sampling, the unit normal, oriented orthonormal tangent frames and the
// pushforward of frames along the family map iota.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "slgeo/families.hpp"
#include "slgeo/linalg.hpp"
#include "slgeo/rng.hpp"

namespace slgeo {

struct SigmaPoint {
    RVector x;
    double constraint_residual = 0.0;
};

struct Frame {
    std::vector<RVector> tangent;  // e_1, ..., e_{n-1}
    RVector normal;                // e_n
};

/// Validates x against the constraint and wraps it as a SigmaPoint.
inline SigmaPoint make_sigma_point(std::span<const double> lambda, double C, RVector x) {
    const double res = constraint_residual(lambda, C, x);
    const double scale = constraint_scale(lambda, C, x);
    if (res > kSigmaTolerance * scale)
        throw std::invalid_argument("make_sigma_point: constraint residual " +
                                    std::to_string(res) + " exceeds tolerance");
    return SigmaPoint{std::move(x), res};
}

/// Solves the constraint for the first coordinate given the remaining ones:
/// x_1 = sign * sqrt((C - sum_{j>=2} lambda_j x_j^2) / lambda_1).  This is the
/// single-coordinate chart used to place points on mixed-signature quadrics.
inline SigmaPoint chart_solve(std::span<const double> lambda, double C,
                              std::span<const double> x_rest, int sign = +1) {
    if (lambda.size() != x_rest.size() + 1)
        throw std::invalid_argument("chart_solve: expected n-1 trailing coordinates");
    double rest = 0.0;
    for (std::size_t j = 0; j < x_rest.size(); ++j)
        rest += lambda[j + 1] * x_rest[j] * x_rest[j];
    const double ratio = (C - rest) / lambda[0];
    if (!(ratio >= 0.0))
        throw std::domain_error("chart_solve: no real solution for the leading coordinate");
    RVector x(lambda.size());
    x[0] = (sign >= 0 ? 1.0 : -1.0) * std::sqrt(ratio);
    for (std::size_t j = 0; j < x_rest.size(); ++j) x[j + 1] = x_rest[j];
    return make_sigma_point(lambda, C, std::move(x));
}

/// Draws `count` points of Sigma by scaling uniform sphere samples,
/// x = y * sqrt(C / sum_k lambda_k y_k^2).  Requires a definite quadric
/// (every lambda_j C > 0); mixed signatures need explicit point lists.
inline std::vector<SigmaPoint> sigma_sample(std::span<const double> lambda, double C, int count,
                                            std::uint64_t seed) {
    if (count < 0) throw std::invalid_argument("sigma_sample: negative count");
    for (double l : lambda)
        if (!(l * C > 0.0))
            throw std::invalid_argument(
                "sigma_sample: indefinite quadric (mixed-sign lambda); supply explicit points");
    const int n = static_cast<int>(lambda.size());
    CounterRng rng(seed);
    std::vector<SigmaPoint> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        const RVector y = rng.unit_sphere(n);
        double denom = 0.0;
        for (int j = 0; j < n; ++j)
            denom += lambda[static_cast<std::size_t>(j)] * y[static_cast<std::size_t>(j)] *
                     y[static_cast<std::size_t>(j)];
        const double factor = std::sqrt(C / denom);
        RVector x(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
            x[static_cast<std::size_t>(j)] = factor * y[static_cast<std::size_t>(j)];
        out.push_back(make_sigma_point(lambda, C, std::move(x)));
    }
    return out;
}

/// Unit normal e_n = (sum_j lambda_j^2 x_j^2)^{-1/2} (lambda_1 x_1, ...,
/// lambda_n x_n).
inline RVector unit_normal(std::span<const double> lambda, const SigmaPoint& p) {
    if (lambda.size() != p.x.size())
        throw std::invalid_argument("unit_normal: dimension mismatch");
    RVector v(p.x.size());
    double norm2 = 0.0;
    for (std::size_t j = 0; j < p.x.size(); ++j) {
        v[j] = lambda[j] * p.x[j];
        norm2 += v[j] * v[j];
    }
    if (!(norm2 > 0.0)) throw std::domain_error("unit_normal: degenerate point");
    const double inv = 1.0 / std::sqrt(norm2);
    for (double& c : v) c *= inv;
    return v;
}

/// Orthonormal tangent frame e_1, ..., e_{n-1} completing the unit normal so
/// that det(e_1, ..., e_{n-1}, e_n) = +1 (columns).  Built from the
/// Householder reflection taking the last standard basis vector to e_n, with
/// e_1 sign-flipped to fix the orientation; deterministic in the input bits.
inline Frame tangent_frame(std::span<const double> lambda, const SigmaPoint& p) {
    const std::size_t n = p.x.size();
    if (n < 2) throw std::invalid_argument("tangent_frame: need n >= 2");
    RVector normal = unit_normal(lambda, p);
    Frame frame;
    frame.tangent.assign(n - 1, RVector(n, 0.0));

    // Householder reflection H = I - 2 v v^T / |v|^2 with v = g*normal -
    // eps_n, g chosen so v_n never cancels; then H eps_n = g*normal and the
    // columns H eps_1, ..., H eps_{n-1} complete the normal orthonormally.
    // det(H eps_1, ..., H eps_{n-1}, normal) = -g, so e_1 gets flipped when
    // g = +1.
    const double g = normal[n - 1] >= 0.0 ? -1.0 : 1.0;
    RVector v(n);
    double vnorm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = g * normal[i] - (i + 1 == n ? 1.0 : 0.0);
        vnorm2 += v[i] * v[i];
    }
    const double two_over = 2.0 / vnorm2;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        RVector& col = frame.tangent[j];
        const double factor = two_over * v[j];  // v^T eps_j = v_j
        for (std::size_t i = 0; i < n; ++i) col[i] = -factor * v[i];
        col[j] += 1.0;
    }
    if (g > 0.0)
        for (double& c : frame.tangent[0]) c = -c;
    frame.normal = std::move(normal);
    return frame;
}

namespace detail {

/// Pushforwards from precomputed profiles: iota_*(e_j) = (e_j[l] omega_l) for
/// the tangent directions, then iota_*(d/ds) = (x_l omega_dot_l) last.
inline std::vector<TangentVector> pushforward_from_profiles(
    std::span<const ProfileValue> prof, const Frame& frame, std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<TangentVector> out;
    out.reserve(n);
    for (const RVector& e : frame.tangent) {
        TangentVector v(n);
        for (std::size_t l = 0; l < n; ++l) v[l] = e[l] * prof[l].omega;
        out.push_back(std::move(v));
    }
    TangentVector vs(n);
    for (std::size_t l = 0; l < n; ++l) vs[l] = x[l] * prof[l].omega_dot;
    out.push_back(std::move(vs));
    return out;
}

}  // namespace detail

/// Pushforward of (e_1, ..., e_{n-1}, d/ds) along iota at (x, s).  Throws
/// when the immersion assumption sum vanishes at (x, s).
inline std::vector<TangentVector> pushforward(const ProfileFamily& family, const Frame& frame,
                                              const SigmaPoint& p, double s) {
    if (static_cast<int>(p.x.size()) != family.dim())
        throw std::invalid_argument("pushforward: dimension mismatch");
    const auto prof = family.profiles(s);
    if (!detail::assumption_ok(family.lambda(), prof, p.x))
        throw std::domain_error("pushforward: immersion assumption violated at (x, s)");
    return detail::pushforward_from_profiles(prof, frame, p.x);
}

}  // namespace slgeo
