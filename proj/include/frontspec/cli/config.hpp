#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "frontspec/core.hpp"
#include "frontspec/evolution.hpp"
#include "frontspec/grid.hpp"

namespace frontspec::cli {

using json = nlohmann::json;

struct GridSettings {
    double L = 20.0;
    std::size_t N = 4001;
};

struct EvolveSettings {
    double epsilon = 0.5;
    double h = 0.01;
    double dt_factor = 0.1;       // dt = dt_factor * eps^2
    double t_final_factor = 5.0;  // T = t_final_factor / eps^2
    std::size_t snapshots = 200;
};

struct HoloSettings {
    std::vector<double> radii{0.2, 0.1, 0.05};
    std::vector<double> angles{0.0, std::numbers::pi / 6, -std::numbers::pi / 6, std::numbers::pi / 3,
                               -std::numbers::pi / 3};
};

struct RunConfig {
    ModelParams params;
    std::vector<double> epsilon_list{0.3, 0.25, 0.2, 0.15, 0.1, 0.07, 0.05};
    GridSettings grid;
    EvolveSettings evolve;
    HoloSettings holo;
    std::string output_dir = "frontspec_out";
    bool emit_svg = true;
    unsigned workers = 1;

    /// Every module constraint is checked here, before any computation.
    void validate() const {
        try {
            params.validate();
        } catch (const Error& e) {
            fail(ErrorCode::Config, e.what());
        }
        if (epsilon_list.empty()) fail(ErrorCode::Config, "epsilon_list must not be empty");
        std::set<double> seen;
        for (double e : epsilon_list) {
            if (!(e > 0.0 && e < kDefaultEpsMax)) {
                fail(ErrorCode::Config, "epsilon " + std::to_string(e) + " outside (0, " + std::to_string(kDefaultEpsMax) + ")");
            }
            if (!seen.insert(e).second) fail(ErrorCode::Config, "duplicate epsilon " + std::to_string(e));
        }
        if (!(grid.L > 0.0) || !std::isfinite(grid.L)) fail(ErrorCode::Config, "grid.L must be positive");
        if (grid.N < 101 || grid.N % 2 == 0) fail(ErrorCode::Config, "grid.N must be odd and at least 101");
        if (!(evolve.epsilon > 0.0 && evolve.epsilon < kEvolutionEpsMax)) {
            fail(ErrorCode::Config, "evolve.epsilon outside (0, " + std::to_string(kEvolutionEpsMax) + ")");
        }
        if (!(evolve.h > 0.0 && evolve.h <= 0.1)) fail(ErrorCode::Config, "evolve.h must lie in (0, 0.1]");
        if (!(evolve.dt_factor > 0.0 && evolve.dt_factor <= kStiffnessFactor)) {
            fail(ErrorCode::Config, "evolve.dt_factor must lie in (0, 0.1]");
        }
        if (!(evolve.t_final_factor > 0.0) || !std::isfinite(evolve.t_final_factor)) {
            fail(ErrorCode::Config, "evolve.t_final_factor must be positive");
        }
        if (evolve.snapshots < 20) fail(ErrorCode::Config, "evolve.snapshots must be at least 20");
        if (holo.radii.empty() || holo.angles.empty()) fail(ErrorCode::Config, "holo radii and angles must not be empty");
        for (double r : holo.radii) {
            if (!(r > 0.0 && r < kDefaultEpsMax)) fail(ErrorCode::Config, "holo radius outside (0, eps_max)");
        }
        for (double a : holo.angles) {
            if (!(std::abs(a) < std::numbers::pi / 2)) fail(ErrorCode::Config, "holo angle must satisfy |angle| < pi/2");
        }
        if (output_dir.empty()) fail(ErrorCode::Config, "output_dir must not be empty");
        if (workers == 0) fail(ErrorCode::Config, "workers must be at least 1");
    }

    [[nodiscard]] Grid hol_grid() const { return Grid(grid.L, grid.N); }
};

inline json to_json(const RunConfig& c) {
    return json{
        {"params", {{"alpha", c.params.alpha}, {"beta_weight", c.params.beta_weight}}},
        {"epsilon_list", c.epsilon_list},
        {"grid", {{"L", c.grid.L}, {"N", c.grid.N}}},
        {"evolve",
         {{"epsilon", c.evolve.epsilon},
          {"h", c.evolve.h},
          {"dt_factor", c.evolve.dt_factor},
          {"t_final_factor", c.evolve.t_final_factor},
          {"snapshots", c.evolve.snapshots}}},
        {"holo", {{"radii", c.holo.radii}, {"angles", c.holo.angles}}},
        {"output_dir", c.output_dir},
        {"emit_svg", c.emit_svg},
        {"workers", c.workers},
    };
}

namespace detail {

inline void reject_unknown(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
    if (!j.is_object()) fail(ErrorCode::Config, where + " must be a JSON object");
    for (const auto& [k, v] : j.items()) {
        if (std::none_of(keys.begin(), keys.end(), [&](const char* known) { return k == known; })) {
            fail(ErrorCode::Config, "unknown key '" + k + "' in " + where);
        }
    }
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception& e) {
        fail(ErrorCode::Config, where + "." + key + ": " + e.what());
    }
}

}  // namespace detail

/// Overlays a JSON document on `base`; absent keys keep their values.
inline RunConfig from_json(const json& j, RunConfig base = {}) {
    using detail::read;
    detail::reject_unknown(j, {"params", "epsilon_list", "grid", "evolve", "holo", "output_dir", "emit_svg", "workers"},
                           "config");
    if (j.contains("params")) {
        const auto& p = j["params"];
        detail::reject_unknown(p, {"alpha", "beta_weight"}, "params");
        read(p, "alpha", base.params.alpha, "params");
        read(p, "beta_weight", base.params.beta_weight, "params");
    }
    read(j, "epsilon_list", base.epsilon_list, "config");
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        detail::reject_unknown(g, {"L", "N"}, "grid");
        read(g, "L", base.grid.L, "grid");
        read(g, "N", base.grid.N, "grid");
    }
    if (j.contains("evolve")) {
        const auto& e = j["evolve"];
        detail::reject_unknown(e, {"epsilon", "h", "dt_factor", "t_final_factor", "snapshots"}, "evolve");
        read(e, "epsilon", base.evolve.epsilon, "evolve");
        read(e, "h", base.evolve.h, "evolve");
        read(e, "dt_factor", base.evolve.dt_factor, "evolve");
        read(e, "t_final_factor", base.evolve.t_final_factor, "evolve");
        read(e, "snapshots", base.evolve.snapshots, "evolve");
    }
    if (j.contains("holo")) {
        const auto& h = j["holo"];
        detail::reject_unknown(h, {"radii", "angles"}, "holo");
        read(h, "radii", base.holo.radii, "holo");
        read(h, "angles", base.holo.angles, "holo");
    }
    read(j, "output_dir", base.output_dir, "config");
    read(j, "emit_svg", base.emit_svg, "config");
    read(j, "workers", base.workers, "config");
    return base;
}

}  // namespace frontspec::cli
