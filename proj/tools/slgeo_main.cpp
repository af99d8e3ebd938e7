// Command-line harness: verify / sweep / angle / meancurv / sample.
//
// Exit codes: 0 all requested checks pass, 1 a check failed, 2 usage or
// configuration error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slgeo/config.hpp"
#include "slgeo/harness.hpp"
#include "slgeo/version.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw slgeo::ConfigError("cannot open config file \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open output file \"" + out_path + "\"");
    out << text;
}

struct TolOverride {
    std::vector<std::string> entries;  // name=value
};

void apply_tol_overrides(slgeo::Tolerances& tol, const std::vector<std::string>& entries) {
    for (const std::string& entry : entries) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw slgeo::ConfigError("--tol expects name=value, got \"" + entry + "\"");
        const std::string name = entry.substr(0, eq);
        double value = 0.0;
        try {
            value = std::stod(entry.substr(eq + 1));
        } catch (const std::exception&) {
            throw slgeo::ConfigError("--tol " + name + ": invalid number");
        }
        if (!(value > 0.0)) throw slgeo::ConfigError("--tol " + name + ": must be > 0");
        if (name == "lagrangian")
            tol.lagrangian = value;
        else if (name == "angle_std")
            tol.angle_std = value;
        else if (name == "identity")
            tol.identity = value;
        else if (name == "condition")
            tol.condition = value;
        else if (name == "negative_threshold")
            tol.negative_threshold = value;
        else
            throw slgeo::ConfigError("--tol: unknown tolerance \"" + name + "\"");
    }
}

slgeo::RunConfig load_config(const std::string& path, std::optional<std::uint64_t> seed,
                             const std::vector<std::string>& tol_overrides) {
    slgeo::RunConfig config = slgeo::parse_config(read_file(path));
    if (seed) config.samples.seed = *seed;
    apply_tol_overrides(config.tolerances, tol_overrides);
    return config;
}

std::vector<std::vector<double>> parse_grid_spec(const std::string& spec, int n) {
    std::vector<std::vector<double>> grid;
    std::stringstream rows(spec);
    std::string row;
    while (std::getline(rows, row, ';')) {
        if (row.empty()) continue;
        std::vector<double> a;
        std::stringstream cells(row);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            try {
                a.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw slgeo::ConfigError("--grid: invalid number \"" + cell + "\"");
            }
        }
        if (static_cast<int>(a.size()) != n)
            throw slgeo::ConfigError("--grid: row \"" + row + "\" has " +
                                     std::to_string(a.size()) + " entries, expected " +
                                     std::to_string(n));
        grid.push_back(std::move(a));
    }
    if (grid.empty()) throw slgeo::ConfigError("--grid: no rows");
    return grid;
}

int run_verify(const std::string& config_path, const std::string& out_path,
               std::optional<std::uint64_t> seed, const std::vector<std::string>& tols) {
    const slgeo::RunConfig config = load_config(config_path, seed, tols);
    const slgeo::RunReport report = slgeo::run_checks(config);
    write_output(slgeo::report_to_string(report), out_path);
    if (!out_path.empty()) {
        for (const slgeo::CheckResult& c : report.checks)
            std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
                      << (c.error.empty() ? "" : "  (" + c.error + ")") << "\n";
        std::cout << (report.overall_pass ? "overall: pass" : "overall: FAIL") << "\n";
    }
    return report.overall_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical checks for special Lagrangian families in C^n"};
    app.set_version_flag("--version", std::string(slgeo::kToolName) + " " + slgeo::kVersion);
    app.require_subcommand(1);

    std::string config_path, out_path, csv_path, grid_spec, levels_spec;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> tol_overrides;
    int sweep_n = 2;

    auto add_common = [&](CLI::App* cmd, bool with_out) {
        cmd->add_option("--config", config_path, "JSON run configuration")->required();
        if (with_out) cmd->add_option("--out", out_path, "output path (default: stdout)");
        cmd->add_option("--seed", seed, "override samples.seed");
        cmd->add_option("--tol", tol_overrides, "override a tolerance, name=value");
    };

    CLI::App* verify = app.add_subcommand("verify", "run the configured checks");
    add_common(verify, true);

    CLI::App* sweep = app.add_subcommand("sweep", "equal-a dichotomy sweep over a parameter grid");
    sweep->add_option("--n", sweep_n, "ambient complex dimension")->required();
    sweep->add_option("--grid", grid_spec, "semicolon-separated a-vectors, e.g. \"1,1;1,2\"")
        ->required();
    sweep->add_option("--out", out_path, "output path (default: stdout)");
    sweep->add_option("--seed", seed, "sampling seed (default 0)");
    sweep->add_option("--tol", tol_overrides, "override a tolerance, name=value");

    CLI::App* angle = app.add_subcommand("angle", "dump the Lagrangian angle trace");
    add_common(angle, true);

    CLI::App* meancurv = app.add_subcommand("meancurv", "Laplace-Beltrami convergence study");
    add_common(meancurv, true);
    meancurv->add_option("--levels", levels_spec, "comma-separated grid levels, e.g. 32,64,128");

    CLI::App* sample = app.add_subcommand("sample", "export the family point cloud as CSV");
    sample->add_option("--config", config_path, "JSON run configuration")->required();
    sample->add_option("--csv", csv_path, "CSV output path")->required();
    sample->add_option("--seed", seed, "override samples.seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return run_verify(config_path, out_path, seed, tol_overrides);

        if (sweep->parsed()) {
            slgeo::Tolerances tol;
            apply_tol_overrides(tol, tol_overrides);
            slgeo::SamplePlan plan;
            plan.seed = seed.value_or(0);
            const auto grid = parse_grid_spec(grid_spec, sweep_n);
            const slgeo::SweepResult result = slgeo::theorem_sweep(sweep_n, grid, tol, plan);
            write_output(slgeo::sweep_to_json(result).dump(2) + "\n", out_path);
            return result.dichotomy_holds && result.all_standard_pass ? 0 : 1;
        }

        if (angle->parsed()) {
            const slgeo::RunConfig config = load_config(config_path, seed, tol_overrides);
            const slgeo::ProfileFamily family = slgeo::make_family(config);
            const auto sigma = slgeo::sigma_points_for(family, config.samples);
            const auto trace = slgeo::angle_constancy(family, sigma, slgeo::s_grid(config.samples));
            slgeo::Json out = slgeo::angle_trace_to_json(trace, true);
            out["pass"] = trace.std_dev <= config.tolerances.angle_std;
            write_output(out.dump(2) + "\n", out_path);
            return 0;
        }

        if (meancurv->parsed()) {
            slgeo::RunConfig config = load_config(config_path, seed, tol_overrides);
            if (!levels_spec.empty()) {
                config.meancurv.levels.clear();
                std::stringstream cells(levels_spec);
                std::string cell;
                while (std::getline(cells, cell, ','))
                    config.meancurv.levels.push_back(std::stoi(cell));
            }
            const slgeo::ProfileFamily family = slgeo::make_family(config);
            const auto study =
                slgeo::convergence_study(family, config.meancurv.metric, config.meancurv.levels,
                                         config.meancurv.s_min, config.meancurv.s_max);
            slgeo::Json out;
            out["kind"] = "convergence";
            out["metric"] = slgeo::metric_kind_name(config.meancurv.metric);
            out["levels"] = slgeo::study_to_json(study);
            write_output(out.dump(2) + "\n", out_path);
            return 0;
        }

        if (sample->parsed()) {
            const slgeo::RunConfig config = load_config(config_path, seed, {});
            const slgeo::ProfileFamily family = slgeo::make_family(config);
            slgeo::export_pointcloud(family, config.samples, csv_path);
            return 0;
        }
    } catch (const slgeo::ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 2;
}
