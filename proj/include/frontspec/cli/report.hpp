#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "frontspec/cli/commands.hpp"

namespace frontspec::cli {

struct CriterionResult {
    int id;
    std::string name;
    bool passed;
    json details;
};

namespace criteria {

inline CriterionResult root_expansions() {
    const std::vector<double> eps{0.2, 0.1, 0.05, 0.025};
    bool ok = true;
    json per_alpha = json::array();
    for (double alpha : {0.1, 0.25, 0.4}) {
        const ModelParams p = ModelParams::make(alpha);
        std::vector<std::pair<double, double>> r0, rm, rp;
        double vieta = 0.0;
        for (double e : eps) {
            const Scale s = Scale::real(e);
            const auto r = expansion_residuals(s, p);
            r0.emplace_back(e, r.zero);
            rm.emplace_back(e, r.minus);
            rp.emplace_back(e, r.plus);
            const auto v = solve_equilibria(s, p).vieta_residuals(alpha);
            vieta = std::max({vieta, v[0], v[1], v[2]});
        }
        const PowerFit f0 = power_fit(r0), fm = power_fit(rm), fp = power_fit(rp);
        const bool pass = f0.exponent >= 1.9 && f0.exponent <= 2.1 && fm.exponent >= 0.9 && fp.exponent >= 0.9 &&
                          vieta <= 1e-9;
        ok = ok && pass;
        per_alpha.push_back({{"alpha", alpha},
                             {"zero_slope", f0.exponent},
                             {"minus_slope", fm.exponent},
                             {"plus_slope", fp.exponent},
                             {"max_vieta", vieta},
                             {"passed", pass}});
    }
    return {1, "root_expansions", ok, per_alpha};
}

inline CriterionResult wave_identity(const RunConfig& cfg) {
    std::vector<std::pair<double, double>> speeds;
    double worst = 0.0;
    bool negative = true, band = true;
    for (double e : cfg.epsilon_list) {
        const WaveData w = wave_data(Scale::real(e), cfg.params);
        worst = std::max(worst, wave_residual_scaled(w));
        negative = negative && w.s_ren.real() < 0.0;
        band = band && std::abs(w.alpha_hux.real() - 0.5) <= 0.05 * e * e;
        speeds.emplace_back(e, std::abs(w.s_ren.real()));
    }
    const PowerFit f = power_fit(speeds);
    const bool slope_ok = f.exponent >= 2.8 && f.exponent <= 3.2;
    json d{{"max_residual_over_A3", worst},
           {"residual_ok", worst <= 1e-8},
           {"alpha_hux_band_ok", band},
           {"speed_negative", negative},
           {"speed_slope", f.exponent},
           {"speed_slope_r_squared", f.r_squared},
           {"speed_slope_ok", slope_ok}};
    return {2, "wave_identity", worst <= 1e-8 && band && negative && slope_ok, d};
}

inline CriterionResult essential_border(const RunConfig& cfg) {
    bool ok = true;
    json rows = json::array();
    for (double e : cfg.epsilon_list) {
        const OperatorBundle b = assemble_bundle(Scale::real(e), cfg.params);
        const double scaled = e * e * border_max_real(b);
        const bool in_band = scaled >= -6.0 - 3.0 * e && scaled <= -6.0 + 3.0 * e;
        int index_zero = 0, not_fredholm = 0;
        for (const cplx& lam : border_probe_points(b, false)) {
            index_zero += classify_lambda(lam, b).verdict == Verdict::IndexZeroRegion;
        }
        for (const cplx& lam : border_probe_points(b, true)) {
            not_fredholm += classify_lambda(lam, b).verdict == Verdict::NotFredholm;
        }
        const bool pass = in_band && index_zero == 50 && not_fredholm == 50;
        ok = ok && pass;
        rows.push_back({{"epsilon", e},
                        {"scaled_border_max", scaled},
                        {"index_zero_hits", index_zero},
                        {"not_fredholm_hits", not_fredholm},
                        {"passed", pass}});
    }
    return {3, "essential_border", ok, rows};
}

inline CriterionResult spectral_gap_constant(const RunConfig& cfg) {
    const Grid grid = cfg.hol_grid();
    const SpectrumResult lim = spectral_gap(0.0, cfg.params, grid);
    bool ok = std::abs(lim.eigenvalues[0]) <= 1e-3 && std::abs(lim.eigenvalues[1] - 4.5) <= 5e-3;
    json rows = json::array();
    std::vector<std::pair<double, double>> pts;
    const auto sweep = gap_sweep({0.2, 0.1, 0.05}, cfg.params, grid, cfg.workers);
    for (const auto& r : sweep) {
        const double l1 = r.spectrum.eigenvalues[1];
        const bool pass = std::abs(l1 - 4.5) <= 0.5 * r.epsilon + 5e-3;
        ok = ok && pass;
        pts.emplace_back(r.epsilon, *r.spectrum.gap_ren);
        rows.push_back({{"epsilon", r.epsilon}, {"lambda1_hol", l1}, {"passed", pass}});
    }
    const PowerFit f = power_fit(pts);
    ok = ok && std::abs(f.exponent + 2.0) <= 0.1;
    return {4, "spectral_gap_constant", ok,
            {{"limit_lambda0", lim.eigenvalues[0]}, {"limit_lambda1", lim.eigenvalues[1]}, {"rows", rows},
             {"gap_exponent", f.exponent}}};
}

inline CriterionResult dilation_identity(const RunConfig& cfg) {
    const Grid grid = cfg.hol_grid();
    const auto reps = parallel_map(cfg.epsilon_list, [&](double e) { return scaling_check(e, cfg.params, grid); },
                                   cfg.workers);
    bool ok = true;
    json rows = json::array();
    for (const auto& r : reps) {
        ok = ok && r.mapped && r.passes(1e-12);
        rows.push_back({{"epsilon", r.epsilon},
                        {"max_mismatch", r.max_mismatch},
                        {"ground_abs_diff", r.rows[0].abs_diff},
                        {"floor", r.floor}});
    }
    return {5, "dilation_identity", ok, rows};
}

inline CriterionResult kernel_positivity(const RunConfig& cfg) {
    bool ok = true;
    json rows = json::array();
    for (double e : {0.2, 0.1}) {
        Grid g(cfg.grid.L * e, cfg.grid.N);
        std::vector<std::pair<double, double>> errs;
        bool positive = true;
        for (int level = 0; level < 3; ++level) {
            const KernelReport k = kernel_residual(e, cfg.params, g);
            errs.emplace_back(g.spacing(), k.residual);
            positive = positive && k.positive;
            g = g.refined();
        }
        const double order = convergence_order(errs);
        const bool pass = positive && order >= 1.85 && order <= 2.15;
        ok = ok && pass;
        rows.push_back({{"epsilon", e}, {"order", order}, {"finest_residual", errs.back().second},
                        {"positive", positive}, {"passed", pass}});
    }
    return {6, "kernel_positivity", ok, rows};
}

inline CriterionResult agmon_decay(const RunConfig& cfg) {
    const SpectrumResult lim = spectral_gap(0.0, cfg.params, cfg.hol_grid());
    const double excited = decay_rate(lim.eigenvectors[1], 5.0, 10.0);
    const double ground = decay_rate(lim.eigenvectors[0], 5.0, 10.0);
    const double te = -std::sqrt(1.5), tg = -std::sqrt(6.0);
    const bool ok = std::abs(excited - te) <= 0.05 * std::abs(te) && std::abs(ground - tg) <= 0.05 * std::abs(tg);
    return {7, "agmon_decay", ok, {{"excited_slope", excited}, {"ground_slope", ground}}};
}

inline CriterionResult holomorphy_bounds(const RunConfig& cfg) {
    const double a = std::numbers::pi / 6;
    const HolomorphyTable t = holomorphy_check({0.2, 0.1, 0.05}, {0.0, a, -a}, cfg.params, cfg.hol_grid(), cfg.workers);
    bool ok = true;
    json rows = json::array();
    for (const auto& f : t.fits) {
        const bool pass = f.phi_fit && f.q_fit && f.phi_fit->exponent >= 1.45 && f.phi_fit->r_squared >= 0.98 &&
                          f.q_fit->exponent >= 1.45 && f.q_fit->r_squared >= 0.98;
        ok = ok && pass;
        rows.push_back({{"angle", f.angle},
                        {"phi_exponent", f.phi_fit ? json(f.phi_fit->exponent) : json(nullptr)},
                        {"q_exponent", f.q_fit ? json(f.q_fit->exponent) : json(nullptr)},
                        {"passed", pass}});
    }
    return {8, "holomorphy_bounds", ok, rows};
}

inline CriterionResult sector_decay() {
    int total = 0, passed = 0;
    double worst = 0.0;
    for (SectorRegion r : {SectorRegion::SigmaPlus, SectorRegion::SigmaMinus}) {
        for (const auto& p : sector_sample(r, 200)) {
            const DecayCheck d = phi_hux_decay_check(p);
            ++total;
            passed += d.pass;
            worst = std::max(worst, d.ratio);
        }
    }
    return {9, "sector_decay", total == 400 && passed == 400, {{"points", total}, {"max_ratio", worst}}};
}

inline CriterionResult front_speed(const EvolveSummary& s) {
    const bool ok = s.relative_error <= 0.05 && s.refinement_change <= 0.01 && s.speed < 0.0;
    return {10, "front_speed", ok,
            {{"exact_speed", s.exact_speed},
             {"fitted_speed", s.speed},
             {"relative_error", s.relative_error},
             {"refinement_change", s.refinement_change}}};
}

}  // namespace criteria

inline std::string criterion_key(const CriterionResult& c) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "c%02d_", c.id);
    return buf + c.name;
}

struct ReportRun {
    CommandOutput output;
    std::vector<CriterionResult> criteria;
};

inline ReportRun render_report(const RunConfig& cfg) {
    ReportRun run;
    run.output.merge(run_equilibria(cfg));
    run.output.merge(run_wave(cfg));
    run.output.merge(run_borders(cfg));
    run.output.merge(run_gap(cfg));
    run.output.merge(run_scaling(cfg));
    run.output.merge(run_holo(cfg));
    EvolveSummary evo{};
    run.output.merge(run_evolve(cfg, &evo));
    run.criteria = {criteria::root_expansions(),        criteria::wave_identity(cfg),
                    criteria::essential_border(cfg),    criteria::spectral_gap_constant(cfg),
                    criteria::dilation_identity(cfg),   criteria::kernel_positivity(cfg),
                    criteria::agmon_decay(cfg),         criteria::holomorphy_bounds(cfg),
                    criteria::sector_decay(),           criteria::front_speed(evo)};
    return run;
}

inline json criteria_json(const std::vector<CriterionResult>& cs) {
    json j = json::object();
    for (const auto& c : cs) j[criterion_key(c)] = {{"passed", c.passed}, {"details", c.details}};
    return j;
}

/// Runs everything twice in-process; determinism holds when both renders agree
/// byte for byte.
inline CommandOutput run_report(const RunConfig& cfg) {
    ReportRun first = render_report(cfg);
    const ReportRun second = render_report(cfg);
    const bool deterministic = first.output.files == second.output.files &&
                               criteria_json(first.criteria) == criteria_json(second.criteria);
    first.criteria.push_back({11, "determinism", deterministic, {{"files_compared", first.output.files.size()}}});

    json summary{{"criteria", json::object()}, {"checks", json::object()}, {"details", criteria_json(first.criteria)}};
    bool all = true;
    for (const auto& c : first.criteria) {
        summary["criteria"][criterion_key(c)] = c.passed;
        all = all && c.passed;
    }
    for (const auto& c : first.output.checks) {
        summary["checks"][c.name] = c.passed;
        all = all && c.passed;
    }
    summary["all_passed"] = all;

    CommandOutput out = std::move(first.output);
    out.files["report/summary.json"] = summary.dump(2) + "\n";
    CsvTable table({"criterion", "name", "passed"});
    for (const auto& c : first.criteria) table.add_cells({std::to_string(c.id), c.name, c.passed ? "1" : "0"});
    out.files["report/criteria.csv"] = table.str();
    for (const auto& c : first.criteria) out.checks.push_back({criterion_key(c), c.passed});
    return out;
}

}  // namespace frontspec::cli
