#pragma once

// Residual checks for the Lagrangian families: pullback residuals of the
// standard and Fubini-Study forms, the two per-profile matching conditions,
// the frame-determinant identity, the Lagrangian angle, and the equal-a
// dichotomy sweep.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "slgeo/families.hpp"
#include "slgeo/forms.hpp"
#include "slgeo/linalg.hpp"
#include "slgeo/sigma.hpp"

namespace slgeo {

struct Tolerances {
    double lagrangian = 1e-9;          // pullback residual pass level
    double angle_std = 1e-8;           // angle-constancy pass level
    double identity = 1e-10;           // determinant identity relative error
    double condition = 1e-10;          // profile-condition residual pass level
    double negative_threshold = 1e-3;  // definitively-non-Lagrangian level
    double a_equality = 1e-12;         // grid tolerance for equal-a detection
};

/// Deterministic sampling plan for Sigma x I.
struct SamplePlan {
    int sigma_count = 200;
    double s_min = -2.0;
    double s_max = 2.0;
    int s_count = 41;
    std::uint64_t seed = 0;
    std::vector<RVector> points;  // explicit Sigma points (mixed signatures)
};

inline std::vector<double> s_grid(const SamplePlan& plan) {
    if (plan.s_count < 1) throw std::invalid_argument("s_grid: need at least one sample");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(plan.s_count));
    if (plan.s_count == 1) {
        out.push_back(0.5 * (plan.s_min + plan.s_max));
        return out;
    }
    const double step = (plan.s_max - plan.s_min) / (plan.s_count - 1);
    for (int k = 0; k < plan.s_count; ++k) out.push_back(plan.s_min + step * k);
    return out;
}

/// Sigma points per the plan: explicit points when given, otherwise seeded
/// sphere scaling.
inline std::vector<SigmaPoint> sigma_points_for(const ProfileFamily& family,
                                                const SamplePlan& plan) {
    const auto& lambda = family.lambda();
    if (!plan.points.empty()) {
        std::vector<SigmaPoint> out;
        out.reserve(plan.points.size());
        for (const RVector& x : plan.points)
            out.push_back(make_sigma_point(lambda, family.constraint_constant(), x));
        return out;
    }
    return sigma_sample(lambda, family.constraint_constant(), plan.sigma_count, plan.seed);
}

struct ResidualReport {
    std::string check_name;
    double max_residual = std::numeric_limits<double>::infinity();
    double mean_residual = std::numeric_limits<double>::infinity();
    RVector argmax_x;
    double argmax_s = 0.0;
    std::size_t samples_used = 0;
    std::size_t samples_skipped = 0;
    bool pass = false;
    double tolerance = 0.0;
};

struct AngleSample {
    RVector x;
    double s = 0.0;
    double theta = 0.0;  // radians, reduced to (-pi, pi]
};

struct AngleTrace {
    std::vector<AngleSample> theta;
    double fitted_phase = 0.0;  // mod pi, in (-pi/2, pi/2]
    double std_dev = std::numeric_limits<double>::infinity();
};

inline double wrap_two_pi(double theta) {
    double t = std::remainder(theta, 2.0 * std::numbers::pi);
    if (t <= -std::numbers::pi) t += 2.0 * std::numbers::pi;
    return t;
}

inline double wrap_pi(double theta) {
    double t = std::remainder(theta, std::numbers::pi);
    if (t <= -0.5 * std::numbers::pi) t += std::numbers::pi;
    return t;
}

/// Distance between two angles identified mod pi.
inline double angle_distance_mod_pi(double a, double b) {
    return std::abs(std::remainder(a - b, std::numbers::pi));
}

namespace detail {

class ResidualAccumulator {
public:
    void add(double value, const RVector& x, double s) {
        sum_ += value;
        ++count_;
        if (value > max_ || count_ == 1) {
            max_ = value;
            argmax_x_ = x;
            argmax_s_ = s;
        }
    }

    ResidualReport finalize(std::string name, double tolerance, std::size_t used,
                            std::size_t skipped) const {
        ResidualReport rep;
        rep.check_name = std::move(name);
        rep.tolerance = tolerance;
        rep.samples_used = used;
        rep.samples_skipped = skipped;
        if (count_ == 0) {
            if (used > 0) {
                // Samples were evaluated but produced no residual pairs
                // (e.g. the frame-pair bucket at n = 2); vacuously zero.
                rep.max_residual = 0.0;
                rep.mean_residual = 0.0;
            }
        } else {
            rep.max_residual = max_;
            rep.mean_residual = sum_ / static_cast<double>(count_);
            rep.argmax_x = argmax_x_;
            rep.argmax_s = argmax_s_;
        }
        rep.pass = rep.max_residual <= tolerance;
        return rep;
    }

private:
    double max_ = 0.0;
    double sum_ = 0.0;
    std::size_t count_ = 0;
    RVector argmax_x_;
    double argmax_s_ = 0.0;
};

inline AmbientPoint embed_from_profiles(std::span<const ProfileValue> prof,
                                        std::span<const double> x) {
    AmbientPoint z(x.size());
    for (std::size_t l = 0; l < x.size(); ++l) z[l] = x[l] * prof[l].omega;
    return z;
}

}  // namespace detail

/// Normalized pullback residual of the chosen form over all pushforward
/// pairs: |omega(V_i, V_j)| / (|V_i|_g |V_j|_g) with g = omega(., J.).
/// Samples failing immersion_check are skipped and counted.
inline ResidualReport lagrangian_residual(const ProfileFamily& family, FormKind form,
                                          const std::vector<SigmaPoint>& sigma,
                                          const std::vector<double>& s_samples,
                                          double tolerance = Tolerances{}.lagrangian) {
    detail::ResidualAccumulator acc;
    std::size_t used = 0, skipped = 0;
    const auto& lambda = family.lambda();
    for (double s : s_samples) {
        const auto prof = family.profiles(s);
        bool hyp = true;
        for (const ProfileValue& p : prof) hyp = hyp && p.hypothesis_ok;
        for (const SigmaPoint& pt : sigma) {
            if (!hyp || !detail::assumption_ok(lambda, prof, pt.x)) {
                ++skipped;
                continue;
            }
            const Frame frame = tangent_frame(lambda, pt);
            const auto vectors = detail::pushforward_from_profiles(prof, frame, pt.x);
            const AmbientPoint z = detail::embed_from_profiles(prof, pt.x);
            std::vector<double> norms(vectors.size());
            for (std::size_t i = 0; i < vectors.size(); ++i)
                norms[i] = std::sqrt(metric(form, z, vectors[i], vectors[i]));
            for (std::size_t i = 0; i < vectors.size(); ++i)
                for (std::size_t j = i + 1; j < vectors.size(); ++j) {
                    const double value =
                        std::abs(omega(form, z, vectors[i], vectors[j])) / (norms[i] * norms[j]);
                    acc.add(value, pt.x, s);
                }
            ++used;
        }
    }
    const char* name = form == FormKind::Standard ? "lagrangian-st" : "lagrangian-fs";
    return acc.finalize(name, tolerance, used, skipped);
}

/// Splits the pullback residual into the (e_j, e_k) pairs (zero for every
/// family by the diagonal-rotation argument) and the discriminating
/// (e_j, d/ds) pairs.
inline std::pair<ResidualReport, ResidualReport> frame_pair_residual_split(
    const ProfileFamily& family, FormKind form, const std::vector<SigmaPoint>& sigma,
    const std::vector<double>& s_samples, double tolerance = Tolerances{}.lagrangian) {
    detail::ResidualAccumulator frame_acc, mixed_acc;
    std::size_t used = 0, skipped = 0;
    const auto& lambda = family.lambda();
    for (double s : s_samples) {
        const auto prof = family.profiles(s);
        bool hyp = true;
        for (const ProfileValue& p : prof) hyp = hyp && p.hypothesis_ok;
        for (const SigmaPoint& pt : sigma) {
            if (!hyp || !detail::assumption_ok(lambda, prof, pt.x)) {
                ++skipped;
                continue;
            }
            const Frame frame = tangent_frame(lambda, pt);
            const auto vectors = detail::pushforward_from_profiles(prof, frame, pt.x);
            const AmbientPoint z = detail::embed_from_profiles(prof, pt.x);
            std::vector<double> norms(vectors.size());
            for (std::size_t i = 0; i < vectors.size(); ++i)
                norms[i] = std::sqrt(metric(form, z, vectors[i], vectors[i]));
            const std::size_t last = vectors.size() - 1;
            for (std::size_t i = 0; i < vectors.size(); ++i)
                for (std::size_t j = i + 1; j < vectors.size(); ++j) {
                    const double value =
                        std::abs(omega(form, z, vectors[i], vectors[j])) / (norms[i] * norms[j]);
                    (j == last ? mixed_acc : frame_acc).add(value, pt.x, s);
                }
            ++used;
        }
    }
    const bool fs = form == FormKind::FubiniStudy;
    return {frame_acc.finalize(fs ? "frame-pairs-fs" : "frame-pairs-st", tolerance, used, skipped),
            mixed_acc.finalize(fs ? "mixed-pairs-fs" : "mixed-pairs-st", tolerance, used, skipped)};
}

/// Residual of the first matching condition: the values Im(omega_dot_j
/// conj(omega_j)) / lambda_j must agree across j for every s.  Normalized by
/// the largest |value| at each s when nonzero.
inline ResidualReport condition_im_residual(const ProfileFamily& family,
                                            const std::vector<double>& s_samples,
                                            double tolerance = Tolerances{}.condition) {
    detail::ResidualAccumulator acc;
    const auto& lambda = family.lambda();
    for (double s : s_samples) {
        const auto prof = family.profiles(s);
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        double mag = 0.0;
        for (std::size_t j = 0; j < prof.size(); ++j) {
            const double v = std::imag(prof[j].omega_dot * std::conj(prof[j].omega)) / lambda[j];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            mag = std::max(mag, std::abs(v));
        }
        const double spread = hi - lo;
        acc.add(mag > 0.0 ? spread / mag : spread, {}, s);
    }
    return acc.finalize("condition-im", tolerance, s_samples.size(), 0);
}

/// Residual of the second matching condition: |omega_j|^2 / lambda_j must
/// agree across j for every s (reported unnormalized).
inline ResidualReport condition_r2_residual(const ProfileFamily& family,
                                            const std::vector<double>& s_samples,
                                            double tolerance = Tolerances{}.condition) {
    detail::ResidualAccumulator acc;
    const auto& lambda = family.lambda();
    for (double s : s_samples) {
        const auto prof = family.profiles(s);
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < prof.size(); ++j) {
            const double v = std::norm(prof[j].omega) / lambda[j];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        acc.add(hi - lo, {}, s);
    }
    return acc.finalize("condition-r2", tolerance, s_samples.size(), 0);
}

struct DetIdentity {
    Complex lhs;     // det of the pushforward columns
    Complex rhs;     // closed form
    double rel_err;  // |lhs - rhs| / |rhs|
};

/// Checks the frame-determinant identity
///   det(iota_*(e_1), ..., iota_*(e_{n-1}), iota_*(d/ds))
///     = (omega_1 ... omega_n / sqrt(sum_k lambda_k^2 x_k^2))
///       * sum_j lambda_j x_j^2 omega_dot_j / omega_j.
inline DetIdentity det_identity_check(const ProfileFamily& family, const SigmaPoint& pt,
                                      double s) {
    const auto& lambda = family.lambda();
    require_on_sigma(family, pt.x);
    const auto prof = family.profiles(s);
    if (!detail::assumption_ok(lambda, prof, pt.x))
        throw std::domain_error("det_identity_check: degenerate point (assumption sum vanishes)");
    const Frame frame = tangent_frame(lambda, pt);
    const auto vectors = detail::pushforward_from_profiles(prof, frame, pt.x);
    const Complex lhs = holomorphic_volume(vectors);

    Complex product{1.0, 0.0};
    double lam2x2 = 0.0;
    for (std::size_t j = 0; j < pt.x.size(); ++j) {
        product *= prof[j].omega;
        lam2x2 += lambda[j] * lambda[j] * pt.x[j] * pt.x[j];
    }
    const auto [total, scale] = detail::immersion_sum(lambda, prof, pt.x);
    const Complex rhs = product * total / std::sqrt(lam2x2);
    const double denom = std::abs(rhs);
    return DetIdentity{lhs, rhs, std::abs(lhs - rhs) / denom};
}

/// Lagrangian angle theta = arg det(pushforward columns), in (-pi, pi].
inline double lagrangian_angle(const ProfileFamily& family, const SigmaPoint& pt, double s) {
    const auto& lambda = family.lambda();
    require_on_sigma(family, pt.x);
    const auto prof = family.profiles(s);
    const Frame frame = tangent_frame(lambda, pt);
    const auto vectors = detail::pushforward_from_profiles(prof, frame, pt.x);
    const Complex det = holomorphic_volume(vectors);
    const auto [total, scale] = detail::immersion_sum(lambda, prof, pt.x);
    if (!(std::abs(det) > 0.0) || std::abs(total) <= kImmersionEps * scale)
        throw std::domain_error("lagrangian_angle: zero determinant");
    double theta = std::arg(det);
    if (theta <= -std::numbers::pi) theta = std::numbers::pi;
    return theta;
}

namespace detail {

/// Circular statistics of angles identified mod pi, via doubled angles.
inline void fit_angle_stats(AngleTrace& trace) {
    if (trace.theta.empty()) {
        trace.fitted_phase = 0.0;
        trace.std_dev = std::numeric_limits<double>::infinity();
        return;
    }
    double c = 0.0, sn = 0.0;
    for (const AngleSample& a : trace.theta) {
        c += std::cos(2.0 * a.theta);
        sn += std::sin(2.0 * a.theta);
    }
    const double n = static_cast<double>(trace.theta.size());
    const double resultant = std::hypot(c, sn) / n;
    double fitted = 0.5 * std::atan2(sn, c);
    if (fitted <= -0.5 * std::numbers::pi) fitted += std::numbers::pi;
    trace.fitted_phase = fitted;
    if (resultant >= 1.0)
        trace.std_dev = 0.0;
    else
        trace.std_dev = 0.5 * std::sqrt(-2.0 * std::log(resultant));
}

}  // namespace detail

/// Angle trace over a sample set, with the fitted constant phase (mod pi) and
/// the circular standard deviation.  Samples where the determinant vanishes
/// are skipped.
inline AngleTrace angle_constancy(const ProfileFamily& family,
                                  const std::vector<SigmaPoint>& sigma,
                                  const std::vector<double>& s_samples) {
    AngleTrace trace;
    for (const SigmaPoint& pt : sigma)
        for (double s : s_samples) {
            try {
                trace.theta.push_back(AngleSample{pt.x, s, lagrangian_angle(family, pt, s)});
            } catch (const std::domain_error&) {
                // degenerate sample: excluded from the trace
            }
        }
    detail::fit_angle_stats(trace);
    return trace;
}

/// Angle trace along s at one fixed Sigma point.
inline AngleTrace angle_trace(const ProfileFamily& family, const SigmaPoint& pt,
                              const std::vector<double>& s_samples) {
    return angle_constancy(family, {pt}, s_samples);
}

/// Least-squares slope d(theta)/ds of an angle trace at fixed x, after
/// unwrapping the 2 pi jumps.  Requires samples ordered by s.
inline double drift_slope(const AngleTrace& trace) {
    const auto& t = trace.theta;
    if (t.size() < 2) throw std::invalid_argument("drift_slope: need at least two samples");
    std::vector<double> unwrapped(t.size());
    unwrapped[0] = t[0].theta;
    for (std::size_t k = 1; k < t.size(); ++k)
        unwrapped[k] = unwrapped[k - 1] + wrap_two_pi(t[k].theta - t[k - 1].theta);
    double ms = 0.0, mt = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        ms += t[k].s;
        mt += unwrapped[k];
    }
    ms /= static_cast<double>(t.size());
    mt /= static_cast<double>(t.size());
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        num += (t[k].s - ms) * (unwrapped[k] - mt);
        den += (t[k].s - ms) * (t[k].s - ms);
    }
    if (den == 0.0) throw std::invalid_argument("drift_slope: samples share one s value");
    return num / den;
}

struct SweepRow {
    std::vector<double> a;
    ResidualReport standard_report;
    ResidualReport fubini_study_report;
    AngleTrace angle;
    bool equal_a = false;
    bool consistent = false;  // row agrees with the equal-a dichotomy
};

struct SweepResult {
    std::vector<SweepRow> rows;
    bool dichotomy_holds = false;
    bool all_standard_pass = false;
};

/// Runs both pullback residual checks and the angle trace over a grid of
/// Lawlor parameter vectors and classifies each row against the equal-a
/// dichotomy: the Fubini-Study check passes exactly when all a_j coincide.
inline SweepResult theorem_sweep(int n, const std::vector<std::vector<double>>& a_grid,
                                 const Tolerances& tol, const SamplePlan& plan) {
    SweepResult result;
    result.dichotomy_holds = true;
    result.all_standard_pass = true;
    for (const std::vector<double>& a : a_grid) {
        if (static_cast<int>(a.size()) != n)
            throw std::invalid_argument("theorem_sweep: grid entry of wrong dimension");
        const ProfileFamily family = ProfileFamily::lawlor(a);
        const auto sigma = sigma_points_for(family, plan);
        const auto s = s_grid(plan);
        SweepRow row;
        row.a = a;
        row.standard_report =
            lagrangian_residual(family, FormKind::Standard, sigma, s, tol.lagrangian);
        row.fubini_study_report =
            lagrangian_residual(family, FormKind::FubiniStudy, sigma, s, tol.lagrangian);
        row.angle = angle_constancy(family, sigma, s);
        double spread = 0.0;
        for (double ai : a)
            for (double ak : a) spread = std::max(spread, std::abs(ai - ak));
        row.equal_a = spread <= tol.a_equality;
        row.consistent = row.equal_a
                             ? row.fubini_study_report.max_residual <= tol.lagrangian
                             : row.fubini_study_report.max_residual > tol.negative_threshold;
        result.dichotomy_holds = result.dichotomy_holds && row.consistent;
        result.all_standard_pass = result.all_standard_pass && row.standard_report.pass;
        result.rows.push_back(std::move(row));
    }
    return result;
}

}  // namespace slgeo
