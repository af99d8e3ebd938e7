#pragma once

// Check orchestration and report/point-cloud serialization for the CLI.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "slgeo/config.hpp"
#include "slgeo/families.hpp"
#include "slgeo/meancurv.hpp"
#include "slgeo/sigma.hpp"
#include "slgeo/verifier.hpp"
#include "slgeo/version.hpp"

namespace slgeo {

/// JSON-safe real: non-finite values become strings so reports stay valid
/// JSON and round-trip byte-identically.
inline Json json_real(double value) {
    if (std::isfinite(value)) return value;
    if (std::isnan(value)) return "nan";
    return value > 0 ? "inf" : "-inf";
}

inline Json residual_to_json(const ResidualReport& rep) {
    Json j;
    j["name"] = rep.check_name;
    j["kind"] = "residual";
    j["max_residual"] = json_real(rep.max_residual);
    j["mean_residual"] = json_real(rep.mean_residual);
    j["argmax"] = Json{{"x", rep.argmax_x}, {"s", rep.argmax_s}};
    j["samples_used"] = rep.samples_used;
    j["samples_skipped"] = rep.samples_skipped;
    j["tolerance"] = rep.tolerance;
    j["pass"] = rep.pass;
    return j;
}

inline Json angle_trace_to_json(const AngleTrace& trace, bool include_samples) {
    Json j;
    j["kind"] = "angle";
    j["fitted_phase"] = json_real(trace.fitted_phase);
    j["std_dev"] = json_real(trace.std_dev);
    j["sample_count"] = trace.theta.size();
    if (include_samples) {
        Json samples = Json::array();
        for (const AngleSample& a : trace.theta)
            samples.push_back(Json{{"x", a.x}, {"s", a.s}, {"theta", a.theta}});
        j["samples"] = std::move(samples);
    }
    return j;
}

inline Json study_to_json(const std::vector<ConvergenceLevel>& study) {
    Json levels = Json::array();
    for (const ConvergenceLevel& lvl : study) {
        Json entry;
        entry["grid"] = lvl.grid_count;
        entry["spacing"] = lvl.spacing;
        entry["residual"] = json_real(lvl.residual);
        entry["observed_order"] = json_real(lvl.observed_order);
        levels.push_back(std::move(entry));
    }
    return levels;
}

inline Json sweep_to_json(const SweepResult& result) {
    Json rows = Json::array();
    for (const SweepRow& row : result.rows) {
        Json entry;
        entry["a"] = row.a;
        entry["equal_a"] = row.equal_a;
        entry["standard"] = residual_to_json(row.standard_report);
        entry["fubini_study"] = residual_to_json(row.fubini_study_report);
        entry["angle"] = angle_trace_to_json(row.angle, false);
        entry["consistent"] = row.consistent;
        rows.push_back(std::move(entry));
    }
    Json j;
    j["kind"] = "sweep";
    j["rows"] = std::move(rows);
    j["dichotomy_holds"] = result.dichotomy_holds;
    j["all_standard_pass"] = result.all_standard_pass;
    return j;
}

struct CheckResult {
    std::string name;
    Json payload;
    bool pass = false;
    std::string error;  // nonempty when the check aborted
};

struct RunReport {
    RunConfig config;
    std::vector<CheckResult> checks;
    bool overall_pass = false;
    double wall_time_ms = 0.0;
};

namespace detail {

/// 100 deterministic (x, s) draws for the determinant identity check.
inline ResidualReport det_identity_residual(const ProfileFamily& family, const SamplePlan& plan,
                                            double tolerance) {
    constexpr int kDraws = 100;
    std::vector<SigmaPoint> points;
    if (!plan.points.empty()) {
        for (const RVector& x : plan.points)
            points.push_back(make_sigma_point(family.lambda(), family.constraint_constant(), x));
    } else {
        points = sigma_sample(family.lambda(), family.constraint_constant(), kDraws,
                              plan.seed ^ 0x9D5C'A11B'0F37'2E64ull);
    }
    CounterRng rng(plan.seed ^ 0x51AB'77E4'C0DE'135Full);
    ResidualAccumulator acc;
    for (int k = 0; k < kDraws; ++k) {
        const SigmaPoint& pt = points[static_cast<std::size_t>(k) % points.size()];
        const double s = rng.uniform(plan.s_min, plan.s_max);
        const DetIdentity id = det_identity_check(family, pt, s);
        acc.add(id.rel_err, pt.x, s);
    }
    return acc.finalize("det-identity", tolerance, kDraws, 0);
}

}  // namespace detail

/// Executes the configured checks.  Per-check failures are recorded and the
/// run continues; the overall flag is the conjunction of the check outcomes.
inline RunReport run_checks(const RunConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    RunReport report;
    report.config = config;

    const ProfileFamily family = make_family(config);
    const std::vector<double> s = s_grid(config.samples);
    std::optional<std::vector<SigmaPoint>> sigma_cache;
    const auto sigma = [&]() -> const std::vector<SigmaPoint>& {
        if (!sigma_cache) sigma_cache = sigma_points_for(family, config.samples);
        return *sigma_cache;
    };
    const Tolerances& tol = config.tolerances;

    for (const std::string& name : config.checks) {
        CheckResult result;
        result.name = name;
        try {
            if (name == "lagrangian-st" || name == "lagrangian-fs") {
                const FormKind form =
                    name == "lagrangian-st" ? FormKind::Standard : FormKind::FubiniStudy;
                ResidualReport rep = lagrangian_residual(family, form, sigma(), s, tol.lagrangian);
                rep.check_name = name;
                result.pass = rep.pass;
                result.payload = residual_to_json(rep);
            } else if (name == "frame-split-st" || name == "frame-split-fs") {
                const FormKind form =
                    name == "frame-split-st" ? FormKind::Standard : FormKind::FubiniStudy;
                const auto [frame_rep, mixed_rep] =
                    frame_pair_residual_split(family, form, sigma(), s, tol.lagrangian);
                result.pass = frame_rep.pass;
                result.payload = Json{{"name", name},
                                      {"kind", "split"},
                                      {"frame_pairs", residual_to_json(frame_rep)},
                                      {"mixed_pairs", residual_to_json(mixed_rep)}};
            } else if (name == "condition-im") {
                const ResidualReport rep = condition_im_residual(family, s, tol.condition);
                result.pass = rep.pass;
                result.payload = residual_to_json(rep);
            } else if (name == "condition-r2") {
                const ResidualReport rep = condition_r2_residual(family, s, tol.condition);
                result.pass = rep.pass;
                result.payload = residual_to_json(rep);
            } else if (name == "det-identity") {
                const ResidualReport rep =
                    detail::det_identity_residual(family, config.samples, tol.identity);
                result.pass = rep.pass;
                result.payload = residual_to_json(rep);
            } else if (name == "angle") {
                const AngleTrace trace = angle_constancy(family, sigma(), s);
                result.pass = trace.std_dev <= tol.angle_std;
                result.payload = angle_trace_to_json(trace, false);
                result.payload["name"] = name;
                result.payload["tolerance"] = tol.angle_std;
                result.payload["pass"] = result.pass;
            } else if (name == "meancurv") {
                const auto study =
                    convergence_study(family, config.meancurv.metric, config.meancurv.levels,
                                      config.meancurv.s_min, config.meancurv.s_max);
                bool monotone = true;
                bool orders_ok = true;
                for (std::size_t k = 1; k < study.size(); ++k) {
                    monotone = monotone && study[k].residual <= study[k - 1].residual;
                    orders_ok = orders_ok && study[k].observed_order >= 1.5 &&
                                study[k].observed_order <= 2.5;
                }
                result.pass = monotone && orders_ok;
                result.payload = Json{{"name", name},
                                      {"kind", "convergence"},
                                      {"metric", metric_kind_name(config.meancurv.metric)},
                                      {"levels", study_to_json(study)},
                                      {"monotone", monotone},
                                      {"orders_in_range", orders_ok},
                                      {"pass", result.pass}};
            } else {
                throw std::logic_error("unknown check: " + name);
            }
        } catch (const std::exception& err) {
            result.pass = false;
            result.error = err.what();
            result.payload = Json{{"name", name}, {"kind", "error"}, {"error", err.what()}};
        }
        report.checks.push_back(std::move(result));
    }

    report.overall_pass = true;
    for (const CheckResult& c : report.checks) report.overall_pass = report.overall_pass && c.pass;
    report.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

inline Json report_to_json(const RunReport& report) {
    Json j;
    j["tool"] = std::string(kToolName) + " " + kVersion;
    j["config"] = config_to_json(report.config);
    Json checks = Json::array();
    for (const CheckResult& c : report.checks) {
        Json entry = c.payload;
        if (!c.error.empty()) entry["error"] = c.error;
        checks.push_back(std::move(entry));
    }
    j["checks"] = std::move(checks);
    j["overall_pass"] = report.overall_pass;
    j["wall_time_ms"] = report.wall_time_ms;
    return j;
}

inline std::string report_to_string(const RunReport& report) {
    return report_to_json(report).dump(2) + "\n";
}

/// Writes the sampled family as CSV: one row per (sigma point, s) pair with
/// header x1,...,xn,s,re_z1,im_z1,...,re_zn,im_zn.  Deterministic order and
/// formatting.
inline void export_pointcloud(const ProfileFamily& family, const SamplePlan& plan,
                              const std::string& path) {
    const auto sigma = sigma_points_for(family, plan);
    const auto s_values = s_grid(plan);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("export_pointcloud: cannot open \"" + path + "\"");
    const int n = family.dim();
    for (int j = 1; j <= n; ++j) out << "x" << j << ",";
    out << "s";
    for (int j = 1; j <= n; ++j) out << ",re_z" << j << ",im_z" << j;
    out << "\n";
    char buf[40];
    const auto emit = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        out << buf;
    };
    for (const SigmaPoint& pt : sigma) {
        for (double s : s_values) {
            const AmbientPoint z = embed(family, pt.x, s);
            for (int j = 0; j < n; ++j) {
                emit(pt.x[static_cast<std::size_t>(j)]);
                out << ",";
            }
            emit(s);
            for (int j = 0; j < n; ++j) {
                out << ",";
                emit(z[static_cast<std::size_t>(j)].real());
                out << ",";
                emit(z[static_cast<std::size_t>(j)].imag());
            }
            out << "\n";
        }
    }
    if (!out) throw std::runtime_error("export_pointcloud: write failed for \"" + path + "\"");
}

}  // namespace slgeo
