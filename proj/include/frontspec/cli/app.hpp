#pragma once

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "frontspec/cli/commands.hpp"
#include "frontspec/cli/config.hpp"
#include "frontspec/cli/report.hpp"

namespace frontspec::cli {

enum ExitCode : int { kOk = 0, kChecksFailed = 1, kConfigError = 2, kRuntimeError = 3 };

using Command = std::function<CommandOutput(const RunConfig&)>;

inline const std::map<std::string, Command>& commands() {
    static const std::map<std::string, Command> table{
        {"equilibria", run_equilibria},
        {"wave", run_wave},
        {"borders", run_borders},
        {"gap", run_gap},
        {"scaling", run_scaling},
        {"holo", run_holo},
        {"evolve", [](const RunConfig& c) { return run_evolve(c); }},
        {"report", run_report},
    };
    return table;
}

inline void emit_error(std::ostream& err, const std::string& kind, const std::string& message) {
    err << json{{"error", kind}, {"message", message}}.dump() << "\n";
}

inline RunConfig load_config_file(const std::string& path, RunConfig base) {
    std::ifstream is(path);
    if (!is) fail(ErrorCode::Config, "cannot open config file " + path);
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        fail(ErrorCode::Config, "config file is not valid JSON: " + std::string(e.what()));
    }
    return from_json(j, std::move(base));
}

/// Parses arguments, runs one subcommand and writes its files under the output
/// directory. Precedence: defaults < --config file < flags < FRONTSPEC_OUT.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Renormalized Allen-Cahn fronts: roots, wave, borders, spectral gap, evolution"};
    app.set_help_all_flag("--help-all");

    std::string config_path;
    std::optional<double> alpha, beta;
    std::vector<double> eps;
    std::optional<double> grid_L;
    std::optional<std::size_t> grid_N;
    std::optional<std::string> out_dir;
    std::optional<bool> svg;
    std::optional<unsigned> workers;
    bool print_defaults = false;

    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--alpha", alpha, "cubic asymmetry alpha in (0, 1/2)");
    app.add_option("--beta-weight", beta, "weight exponent beta > 2");
    app.add_option("--epsilon", eps, "epsilon value (repeatable, replaces the sweep list)");
    app.add_option("--grid-L", grid_L, "half-width of the rescaled grid");
    app.add_option("--grid-N", grid_N, "node count of the rescaled grid (odd)");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--svg", svg, "emit SVG plots (true/false)");
    app.add_option("--workers", workers, "worker threads for independent cells");
    app.add_flag("--print-defaults", print_defaults, "print the embedded default config and exit");

    std::string chosen;
    for (const auto& [name, fn] : commands()) {
        auto* sub = app.add_subcommand(name, "run " + name);
        sub->fallthrough();
        sub->callback([&chosen, n = name] { chosen = n; });
    }
    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        emit_error(err, "config", e.what());
        return kConfigError;
    }

    if (print_defaults) {
        out << to_json(RunConfig{}).dump(2) << "\n";
        return kOk;
    }
    if (chosen.empty()) {
        emit_error(err, "config", "a subcommand is required");
        return kConfigError;
    }

    RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = load_config_file(config_path, cfg);
        if (alpha) cfg.params.alpha = *alpha;
        if (beta) cfg.params.beta_weight = *beta;
        if (!eps.empty()) cfg.epsilon_list = eps;
        if (grid_L) cfg.grid.L = *grid_L;
        if (grid_N) cfg.grid.N = *grid_N;
        if (out_dir) cfg.output_dir = *out_dir;
        if (svg) cfg.emit_svg = *svg;
        if (workers) cfg.workers = *workers;
        if (const char* env = std::getenv("FRONTSPEC_OUT"); env && *env) cfg.output_dir = env;
        cfg.validate();
    } catch (const Error& e) {
        emit_error(err, "config", e.what());
        return kConfigError;
    }

    CommandOutput result;
    try {
        result = commands().at(chosen)(cfg);
        write_files(cfg.output_dir, result.files);
    } catch (const Error& e) {
        emit_error(err, std::string(to_string(e.code())), e.what());
        return kRuntimeError;
    }

    for (const auto& c : result.checks) out << (c.passed ? "PASS " : "FAIL ") << c.name << "\n";
    return result.all_passed() ? kOk : kChecksFailed;
}

}  // namespace frontspec::cli
