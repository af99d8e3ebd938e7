#pragma once

// Run configuration: JSON parsing with strict key checking, field-path error
// messages, defaulting, and the normalized echo used in reports.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "slgeo/families.hpp"
#include "slgeo/meancurv.hpp"
#include "slgeo/verifier.hpp"

namespace slgeo {

using Json = nlohmann::ordered_json;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FamilyConfig {
    FamilyKind kind = FamilyKind::Lawlor;
    int n = 0;
    std::vector<double> a;       // lawlor
    std::vector<double> psi;     // lawlor
    std::vector<double> lambda;  // exponential
    double C = 0.0;              // exponential
};

struct MeanCurvConfig {
    MetricKind metric = MetricKind::ConformalFubiniStudy;
    std::vector<int> levels{32, 64, 128};
    double s_min = -1.0;
    double s_max = 1.0;
};

inline const std::vector<std::string>& known_checks() {
    static const std::vector<std::string> names{
        "lagrangian-st", "lagrangian-fs", "frame-split-st", "frame-split-fs",
        "condition-im",  "condition-r2",  "det-identity",   "angle",
        "meancurv"};
    return names;
}

inline std::vector<std::string> default_checks() {
    return {"lagrangian-st", "lagrangian-fs", "condition-im",
            "condition-r2",  "det-identity",  "angle"};
}

struct RunConfig {
    FamilyConfig family;
    SamplePlan samples;
    Tolerances tolerances;
    std::vector<std::string> checks = default_checks();
    MeanCurvConfig meancurv;
};

namespace detail {

[[noreturn]] inline void config_fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

inline void require_object(const Json& j, const std::string& path) {
    if (!j.is_object()) config_fail(path, "expected an object");
}

inline void reject_unknown_keys(const Json& obj, std::initializer_list<const char*> allowed,
                                const std::string& path) {
    for (const auto& item : obj.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* k) { return item.key() == k; });
        if (!known) config_fail(path + "." + item.key(), "unknown key");
    }
}

inline double get_double(const Json& j, const std::string& path) {
    if (!j.is_number()) config_fail(path, "expected a number");
    return j.get<double>();
}

inline int get_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) config_fail(path, "expected an integer");
    return j.get<int>();
}

inline std::vector<double> get_double_array(const Json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) config_fail(path, "expected a non-empty array of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t k = 0; k < j.size(); ++k)
        out.push_back(get_double(j[k], path + "[" + std::to_string(k) + "]"));
    return out;
}

inline FamilyConfig parse_family(const Json& j) {
    require_object(j, "family");
    if (!j.contains("kind")) config_fail("family.kind", "missing");
    if (!j["kind"].is_string()) config_fail("family.kind", "expected a string");
    const std::string kind = j["kind"].get<std::string>();
    FamilyConfig fam;
    if (kind == "lawlor") {
        fam.kind = FamilyKind::Lawlor;
        reject_unknown_keys(j, {"kind", "n", "a", "psi"}, "family");
        if (!j.contains("a")) config_fail("family.a", "missing");
        fam.a = get_double_array(j["a"], "family.a");
        for (std::size_t k = 0; k < fam.a.size(); ++k)
            if (!(fam.a[k] > 0.0))
                config_fail("family.a[" + std::to_string(k) + "]", "must be > 0");
        if (j.contains("psi")) {
            fam.psi = get_double_array(j["psi"], "family.psi");
            if (fam.psi.size() != fam.a.size())
                config_fail("family.psi", "length must match family.a");
        } else {
            fam.psi.assign(fam.a.size(), 0.0);
        }
        fam.n = static_cast<int>(fam.a.size());
    } else if (kind == "exponential") {
        fam.kind = FamilyKind::Exponential;
        reject_unknown_keys(j, {"kind", "n", "lambda", "C"}, "family");
        if (!j.contains("lambda")) config_fail("family.lambda", "missing");
        fam.lambda = get_double_array(j["lambda"], "family.lambda");
        if (!j.contains("C")) config_fail("family.C", "missing");
        fam.C = get_double(j["C"], "family.C");
        if (fam.C == 0.0) config_fail("family.C", "must be nonzero");
        for (std::size_t k = 0; k < fam.lambda.size(); ++k) {
            if (fam.lambda[k] == 0.0)
                config_fail("family.lambda[" + std::to_string(k) + "]", "must be nonzero");
            if (!(fam.lambda[k] * (fam.lambda[k] + fam.C) > 0.0))
                config_fail("family.lambda[" + std::to_string(k) + "]",
                            "violates lambda_j * (lambda_j + C) > 0");
        }
        fam.n = static_cast<int>(fam.lambda.size());
    } else {
        config_fail("family.kind", "must be \"lawlor\" or \"exponential\"");
    }
    if (j.contains("n") && get_int(j["n"], "family.n") != fam.n)
        config_fail("family.n", "inconsistent with the parameter array length");
    return fam;
}

inline SamplePlan parse_samples(const Json& j, int n) {
    require_object(j, "samples");
    reject_unknown_keys(j, {"sigma_count", "s_min", "s_max", "s_count", "seed", "points"},
                        "samples");
    SamplePlan plan;
    if (!j.contains("seed")) config_fail("samples.seed", "missing (seed is mandatory)");
    if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
        config_fail("samples.seed", "expected a non-negative integer");
    const auto seed = j["seed"].get<std::int64_t>();
    if (seed < 0) config_fail("samples.seed", "expected a non-negative integer");
    plan.seed = static_cast<std::uint64_t>(seed);
    if (j.contains("sigma_count")) plan.sigma_count = get_int(j["sigma_count"], "samples.sigma_count");
    if (plan.sigma_count < 1) config_fail("samples.sigma_count", "must be >= 1");
    if (j.contains("s_min")) plan.s_min = get_double(j["s_min"], "samples.s_min");
    if (j.contains("s_max")) plan.s_max = get_double(j["s_max"], "samples.s_max");
    if (!(plan.s_max >= plan.s_min)) config_fail("samples.s_max", "must be >= samples.s_min");
    if (j.contains("s_count")) plan.s_count = get_int(j["s_count"], "samples.s_count");
    if (plan.s_count < 1) config_fail("samples.s_count", "must be >= 1");
    if (j.contains("points")) {
        const Json& pts = j["points"];
        if (!pts.is_array() || pts.empty())
            config_fail("samples.points", "expected a non-empty array of points");
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const std::string path = "samples.points[" + std::to_string(k) + "]";
            auto x = get_double_array(pts[k], path);
            if (static_cast<int>(x.size()) != n) config_fail(path, "wrong dimension");
            plan.points.push_back(std::move(x));
        }
    }
    return plan;
}

inline Tolerances parse_tolerances(const Json& j) {
    require_object(j, "tolerances");
    reject_unknown_keys(
        j, {"lagrangian", "angle_std", "identity", "condition", "negative_threshold"},
        "tolerances");
    Tolerances tol;
    const auto read = [&](const char* key, double& slot) {
        if (!j.contains(key)) return;
        slot = get_double(j[key], std::string("tolerances.") + key);
        if (!(slot > 0.0)) config_fail(std::string("tolerances.") + key, "must be > 0");
    };
    read("lagrangian", tol.lagrangian);
    read("angle_std", tol.angle_std);
    read("identity", tol.identity);
    read("condition", tol.condition);
    read("negative_threshold", tol.negative_threshold);
    return tol;
}

inline MetricKind parse_metric_kind(const Json& j, const std::string& path) {
    if (!j.is_string()) config_fail(path, "expected a string");
    const std::string name = j.get<std::string>();
    if (name == "flat") return MetricKind::Flat;
    if (name == "fubini-study") return MetricKind::FubiniStudy;
    if (name == "conformal-fubini-study") return MetricKind::ConformalFubiniStudy;
    config_fail(path, "must be \"flat\", \"fubini-study\" or \"conformal-fubini-study\"");
}

inline MeanCurvConfig parse_meancurv(const Json& j) {
    require_object(j, "meancurv");
    reject_unknown_keys(j, {"metric", "levels", "s_min", "s_max"}, "meancurv");
    MeanCurvConfig mc;
    if (j.contains("metric")) mc.metric = parse_metric_kind(j["metric"], "meancurv.metric");
    if (j.contains("levels")) {
        const Json& levels = j["levels"];
        if (!levels.is_array() || levels.empty())
            config_fail("meancurv.levels", "expected a non-empty array of integers");
        mc.levels.clear();
        for (std::size_t k = 0; k < levels.size(); ++k) {
            const std::string path = "meancurv.levels[" + std::to_string(k) + "]";
            const int count = get_int(levels[k], path);
            if (count < 8) config_fail(path, "must be >= 8");
            mc.levels.push_back(count);
        }
    }
    if (j.contains("s_min")) mc.s_min = get_double(j["s_min"], "meancurv.s_min");
    if (j.contains("s_max")) mc.s_max = get_double(j["s_max"], "meancurv.s_max");
    if (!(mc.s_max > mc.s_min)) config_fail("meancurv.s_max", "must be > meancurv.s_min");
    return mc;
}

}  // namespace detail

/// Parses and validates a configuration document.  Unknown keys are rejected;
/// violations carry the offending field path.
inline RunConfig parse_config(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
        throw ConfigError(std::string("config: JSON parse error: ") + err.what());
    }
    detail::require_object(doc, "config");
    detail::reject_unknown_keys(doc, {"family", "samples", "tolerances", "checks", "meancurv"},
                                "config");
    if (!doc.contains("family")) detail::config_fail("family", "missing");
    if (!doc.contains("samples")) detail::config_fail("samples", "missing");

    RunConfig config;
    config.family = detail::parse_family(doc["family"]);
    config.samples = detail::parse_samples(doc["samples"], config.family.n);
    if (doc.contains("tolerances")) config.tolerances = detail::parse_tolerances(doc["tolerances"]);
    if (doc.contains("checks")) {
        const Json& checks = doc["checks"];
        if (!checks.is_array() || checks.empty())
            detail::config_fail("checks", "expected a non-empty array of check names");
        config.checks.clear();
        for (std::size_t k = 0; k < checks.size(); ++k) {
            const std::string path = "checks[" + std::to_string(k) + "]";
            if (!checks[k].is_string()) detail::config_fail(path, "expected a string");
            const std::string name = checks[k].get<std::string>();
            const auto& known = known_checks();
            if (std::find(known.begin(), known.end(), name) == known.end())
                detail::config_fail(path, "unknown check \"" + name + "\"");
            config.checks.push_back(name);
        }
    }
    if (doc.contains("meancurv")) config.meancurv = detail::parse_meancurv(doc["meancurv"]);
    return config;
}

/// Builds the profile family described by the configuration, with the sweep
/// interval from the sample plan.
inline ProfileFamily make_family(const RunConfig& config) {
    ProfileFamily family = config.family.kind == FamilyKind::Lawlor
                               ? ProfileFamily::lawlor(config.family.a, config.family.psi)
                               : ProfileFamily::exponential(config.family.lambda, config.family.C);
    family.set_s_range({config.samples.s_min, config.samples.s_max});
    return family;
}

inline const char* metric_kind_name(MetricKind kind) {
    switch (kind) {
        case MetricKind::Flat:
            return "flat";
        case MetricKind::FubiniStudy:
            return "fubini-study";
        case MetricKind::ConformalFubiniStudy:
            return "conformal-fubini-study";
    }
    return "?";
}

/// Normalized configuration echo: defaults filled, fixed field order, parses
/// back into an identical RunConfig.
inline Json config_to_json(const RunConfig& config) {
    Json family;
    if (config.family.kind == FamilyKind::Lawlor) {
        family["kind"] = "lawlor";
        family["n"] = config.family.n;
        family["a"] = config.family.a;
        family["psi"] = config.family.psi;
    } else {
        family["kind"] = "exponential";
        family["n"] = config.family.n;
        family["lambda"] = config.family.lambda;
        family["C"] = config.family.C;
    }
    Json samples;
    samples["sigma_count"] = config.samples.sigma_count;
    samples["s_min"] = config.samples.s_min;
    samples["s_max"] = config.samples.s_max;
    samples["s_count"] = config.samples.s_count;
    samples["seed"] = config.samples.seed;
    if (!config.samples.points.empty()) samples["points"] = config.samples.points;
    Json tolerances;
    tolerances["lagrangian"] = config.tolerances.lagrangian;
    tolerances["angle_std"] = config.tolerances.angle_std;
    tolerances["identity"] = config.tolerances.identity;
    tolerances["condition"] = config.tolerances.condition;
    tolerances["negative_threshold"] = config.tolerances.negative_threshold;
    Json meancurv;
    meancurv["metric"] = metric_kind_name(config.meancurv.metric);
    meancurv["levels"] = config.meancurv.levels;
    meancurv["s_min"] = config.meancurv.s_min;
    meancurv["s_max"] = config.meancurv.s_max;

    Json out;
    out["family"] = std::move(family);
    out["samples"] = std::move(samples);
    out["tolerances"] = std::move(tolerances);
    out["checks"] = config.checks;
    out["meancurv"] = std::move(meancurv);
    return out;
}

}  // namespace slgeo
