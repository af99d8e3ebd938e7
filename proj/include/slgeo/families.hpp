#pragma once

// The parametrized Lagrangian families iota: Sigma x I -> C^n, built from
// per-coordinate profile curves omega_j(s) = r_j(s) e^{i phi_j(s)} over the
// quadric Sigma = { sum_j lambda_j x_j^2 = C }.
//
// Two families are provided:
//   - the Lawlor family: r_j = sqrt(1/a_j + s^2) with the phase given by an
//     explicit integral, over the unit sphere (lambda_j = 1, C = 1);
//   - the exponential family: omega_j = e^{i (lambda_j + C) s} over a general
//     quadric, with the rotating-phase assumption lambda_j (lambda_j + C) > 0.

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "slgeo/forms.hpp"
#include "slgeo/linalg.hpp"
#include "slgeo/quadrature.hpp"

namespace slgeo {

enum class FamilyKind { Lawlor, Exponential };

struct Interval {
    double lo = -2.0;
    double hi = 2.0;
};

struct LawlorParams {
    int n = 0;
    std::vector<double> a;    // a_j > 0
    std::vector<double> psi;  // phase offsets, radians
};

struct ExponentialParams {
    int n = 0;
    std::vector<double> lambda;  // nonzero, lambda_j (lambda_j + C) > 0
    double C = 0.0;              // nonzero
};

/// One profile curve evaluated at fixed s.
struct ProfileValue {
    Complex omega;      // omega_j(s)
    Complex omega_dot;  // d/ds omega_j(s)
    double r;           // |omega_j(s)|
    double phi;         // arg branch with phi(0) = psi_j (Lawlor) or 0 (exponential)
    double phi_dot;     // d/ds phi_j(s)
    bool hypothesis_ok; // phi_dot > 0, the rotating-phase hypothesis
};

/// r_j(s) = sqrt(1/a_j + s^2).
inline double lawlor_r(double a_j, double s) {
    if (!(a_j > 0.0)) throw std::domain_error("lawlor_r: a_j must be positive");
    return std::sqrt(1.0 / a_j + s * s);
}

namespace detail {

/// prod_k (1 + a_k t^2) - 1, accumulated as a product-minus-one so small t
/// loses no precision to cancellation.
inline double profile_product_minus_one(std::span<const double> a, double t) {
    const double t2 = t * t;
    double q = 0.0;
    for (double ak : a) {
        const double u = ak * t2;
        q = q + u + q * u;
    }
    return q;
}

inline double sum(std::span<const double> a) {
    double s = 0.0;
    for (double v : a) s += v;
    return s;
}

}  // namespace detail

/// Integrand of the Lawlor phase integral,
///   |t| / ((1/a_j + t^2) sqrt(prod_k (1 + a_k t^2) - 1)).
/// Even in t and smooth: the apparent |t| kink cancels against the square
/// root, with removable value a_j / sqrt(sum_k a_k) at t = 0.
inline double lawlor_phase_integrand(std::span<const double> a, int j, double t) {
    if (j < 0 || static_cast<std::size_t>(j) >= a.size())
        throw std::out_of_range("lawlor_phase_integrand: index out of range");
    for (double ak : a)
        if (!(ak > 0.0)) throw std::domain_error("lawlor_phase_integrand: a must be positive");
    if (t == 0.0) return a[static_cast<std::size_t>(j)] / std::sqrt(detail::sum(a));
    const double q = detail::profile_product_minus_one(a, t);
    const double r2 = 1.0 / a[static_cast<std::size_t>(j)] + t * t;
    return std::abs(t) / (r2 * std::sqrt(q));
}

/// phi_j(s) = psi_j + int_0^s integrand dt, by adaptive quadrature on
/// [0, |s|] to absolute error <= tol.  Odd about psi_j since the integrand
/// is even.
inline double lawlor_phi(const LawlorParams& params, int j, double s, double tol = 1e-12) {
    if (!(tol > 0.0)) throw std::invalid_argument("lawlor_phi: tolerance must be positive");
    if (j < 0 || static_cast<std::size_t>(j) >= params.a.size())
        throw std::out_of_range("lawlor_phi: index out of range");
    const double psi = params.psi.empty() ? 0.0 : params.psi[static_cast<std::size_t>(j)];
    if (s == 0.0) return psi;
    const std::span<const double> a{params.a};
    const double integral = integrate_adaptive(
        [&a, j](double t) { return lawlor_phase_integrand(a, j, t); }, 0.0, std::abs(s), tol);
    return psi + (s > 0.0 ? integral : -integral);
}

/// A profile-family datum: kind, the quadric data (lambda, C), the sweep
/// interval, and the kind-specific parameters.
class ProfileFamily {
public:
    static ProfileFamily lawlor(std::vector<double> a, std::vector<double> psi = {},
                                double quad_tol = 1e-12) {
        const int n = static_cast<int>(a.size());
        if (n < 1) throw std::invalid_argument("ProfileFamily::lawlor: need n >= 1");
        for (std::size_t j = 0; j < a.size(); ++j)
            if (!(a[j] > 0.0))
                throw std::invalid_argument("ProfileFamily::lawlor: a[" + std::to_string(j) +
                                            "] must be positive");
        if (psi.empty()) psi.assign(a.size(), 0.0);
        if (psi.size() != a.size())
            throw std::invalid_argument("ProfileFamily::lawlor: psi length mismatch");
        ProfileFamily f;
        f.kind_ = FamilyKind::Lawlor;
        f.n_ = n;
        // The Lawlor quadric is the unit sphere: lambda_j = 1, C = 1.
        f.lambda_.assign(a.size(), 1.0);
        f.c_ = 1.0;
        f.lawlor_.n = n;
        f.lawlor_.a = std::move(a);
        f.lawlor_.psi = std::move(psi);
        f.quad_tol_ = quad_tol;
        return f;
    }

    static ProfileFamily exponential(std::vector<double> lambda, double C) {
        const int n = static_cast<int>(lambda.size());
        if (n < 1) throw std::invalid_argument("ProfileFamily::exponential: need n >= 1");
        if (C == 0.0) throw std::invalid_argument("ProfileFamily::exponential: C must be nonzero");
        for (std::size_t j = 0; j < lambda.size(); ++j) {
            if (lambda[j] == 0.0)
                throw std::invalid_argument("ProfileFamily::exponential: lambda[" +
                                            std::to_string(j) + "] must be nonzero");
            if (!(lambda[j] * (lambda[j] + C) > 0.0))
                throw std::invalid_argument(
                    "ProfileFamily::exponential: lambda[" + std::to_string(j) +
                    "] violates lambda_j (lambda_j + C) > 0");
        }
        ProfileFamily f;
        f.kind_ = FamilyKind::Exponential;
        f.n_ = n;
        f.lambda_ = std::move(lambda);
        f.c_ = C;
        return f;
    }

    FamilyKind kind() const { return kind_; }
    int dim() const { return n_; }
    const std::vector<double>& lambda() const { return lambda_; }
    double constraint_constant() const { return c_; }
    Interval s_range() const { return s_range_; }
    void set_s_range(Interval r) { s_range_ = r; }
    double quad_tol() const { return quad_tol_; }

    const LawlorParams& lawlor_params() const {
        if (kind_ != FamilyKind::Lawlor)
            throw std::logic_error("ProfileFamily: not a Lawlor family");
        return lawlor_;
    }

    /// Evaluates profile j at s.
    ProfileValue profile_eval(int j, double s) const {
        if (j < 0 || j >= n_) throw std::out_of_range("profile_eval: index out of range");
        ProfileValue out{};
        if (kind_ == FamilyKind::Lawlor) {
            const double a_j = lawlor_.a[static_cast<std::size_t>(j)];
            const double r = lawlor_r(a_j, s);
            const double r_dot = s / r;
            const double phi_dot = lawlor_phase_integrand(std::span<const double>{lawlor_.a}, j, s);
            const double phi = lawlor_phi(lawlor_, j, s, quad_tol_);
            const Complex phase{std::cos(phi), std::sin(phi)};
            out.omega = r * phase;
            out.omega_dot = Complex{r_dot, r * phi_dot} * phase;
            out.r = r;
            out.phi = phi;
            out.phi_dot = phi_dot;
        } else {
            const double freq = lambda_[static_cast<std::size_t>(j)] + c_;
            const double phi = freq * s;
            const Complex phase{std::cos(phi), std::sin(phi)};
            out.omega = phase;
            out.omega_dot = Complex{0.0, freq} * phase;
            out.r = 1.0;
            out.phi = phi;
            out.phi_dot = freq;
        }
        out.hypothesis_ok = out.phi_dot > 0.0;
        return out;
    }

    /// All n profiles at s.
    std::vector<ProfileValue> profiles(double s) const {
        std::vector<ProfileValue> out;
        out.reserve(static_cast<std::size_t>(n_));
        for (int j = 0; j < n_; ++j) out.push_back(profile_eval(j, s));
        return out;
    }

    /// True when every phase is strictly increasing at s (the rotating-phase
    /// hypothesis of the Lagrangian criterion).
    bool hypothesis_ok(double s) const {
        for (int j = 0; j < n_; ++j)
            if (!(profile_phi_dot(j, s) > 0.0)) return false;
        return true;
    }

    double profile_phi_dot(int j, double s) const {
        if (kind_ == FamilyKind::Lawlor)
            return lawlor_phase_integrand(std::span<const double>{lawlor_.a}, j, s);
        return lambda_[static_cast<std::size_t>(j)] + c_;
    }

private:
    FamilyKind kind_ = FamilyKind::Lawlor;
    int n_ = 0;
    std::vector<double> lambda_;
    double c_ = 1.0;
    Interval s_range_{};
    LawlorParams lawlor_;
    double quad_tol_ = 1e-12;
};

/// |sum_j lambda_j x_j^2 - C|.
inline double constraint_residual(std::span<const double> lambda, double C,
                                  std::span<const double> x) {
    if (lambda.size() != x.size())
        throw std::invalid_argument("constraint_residual: dimension mismatch");
    double acc = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) acc += lambda[j] * x[j] * x[j];
    return std::abs(acc - C);
}

inline double constraint_scale(std::span<const double> lambda, double C,
                               std::span<const double> x) {
    double scale = std::abs(C);
    for (std::size_t j = 0; j < x.size(); ++j) scale += std::abs(lambda[j]) * x[j] * x[j];
    return scale;
}

inline constexpr double kSigmaTolerance = 1e-10;

inline void require_on_sigma(const ProfileFamily& family, std::span<const double> x) {
    const double res = constraint_residual(family.lambda(), family.constraint_constant(), x);
    const double scale = constraint_scale(family.lambda(), family.constraint_constant(), x);
    if (res > kSigmaTolerance * scale)
        throw std::invalid_argument("point is not on Sigma: constraint residual " +
                                    std::to_string(res));
}

/// iota((x_1,...,x_n), s) = (x_1 omega_1(s), ..., x_n omega_n(s)).
inline AmbientPoint embed(const ProfileFamily& family, const RVector& x, double s) {
    if (static_cast<int>(x.size()) != family.dim())
        throw std::invalid_argument("embed: dimension mismatch");
    require_on_sigma(family, x);
    AmbientPoint z(x.size());
    for (int j = 0; j < family.dim(); ++j)
        z[static_cast<std::size_t>(j)] =
            x[static_cast<std::size_t>(j)] * family.profile_eval(j, s).omega;
    return z;
}

/// Relative threshold for the immersion assumption sum.
inline constexpr double kImmersionEps = 1e-12;

namespace detail {

/// The assumption sum T = sum_j lambda_j x_j^2 omega_dot_j / omega_j and its
/// absolute-value scale, from precomputed profiles.
inline std::pair<Complex, double> immersion_sum(std::span<const double> lambda,
                                                std::span<const ProfileValue> prof,
                                                std::span<const double> x) {
    Complex total{0.0, 0.0};
    double scale = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        const Complex ratio = prof[j].omega_dot / prof[j].omega;
        const double weight = lambda[j] * x[j] * x[j];
        total += weight * ratio;
        scale += std::abs(weight) * std::abs(ratio);
    }
    return {total, scale};
}

inline bool assumption_ok(std::span<const double> lambda, std::span<const ProfileValue> prof,
                          std::span<const double> x) {
    const auto [total, scale] = immersion_sum(lambda, prof, x);
    return std::abs(total) > kImmersionEps * scale;
}

}  // namespace detail

/// True iff the immersion assumption |sum_j lambda_j x_j^2 omega_dot_j /
/// omega_j| > eps (relative) holds AND every phi_dot_j(s) > 0.  Throws when x
/// is not on Sigma.
inline bool immersion_check(const ProfileFamily& family, const RVector& x, double s) {
    if (static_cast<int>(x.size()) != family.dim())
        throw std::invalid_argument("immersion_check: dimension mismatch");
    require_on_sigma(family, x);
    const auto prof = family.profiles(s);
    bool hyp = true;
    for (const ProfileValue& p : prof) hyp = hyp && p.hypothesis_ok;
    return hyp && detail::assumption_ok(family.lambda(), prof, x);
}

}  // namespace slgeo
