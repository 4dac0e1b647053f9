#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "frontspec/asymptotics.hpp"
#include "frontspec/cli/config.hpp"
#include "frontspec/cli/format.hpp"
#include "frontspec/cli/svg.hpp"
#include "frontspec/equilibria.hpp"
#include "frontspec/essential.hpp"
#include "frontspec/evolution.hpp"
#include "frontspec/parallel.hpp"
#include "frontspec/spectra.hpp"
#include "frontspec/wave.hpp"

namespace frontspec::cli {

struct Check {
    std::string name;
    bool passed = false;
};

struct CommandOutput {
    FileSet files;
    std::vector<Check> checks;

    [[nodiscard]] bool all_passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
    }

    void merge(CommandOutput other) {
        files.merge(other.files);
        for (auto& c : other.checks) checks.push_back(std::move(c));
    }
};

namespace detail {

inline void add_svg(CommandOutput& out, const RunConfig& cfg, const std::string& path, const ChartSpec& spec,
                    const std::vector<Series>& series) {
    if (!cfg.emit_svg) return;
    try {
        if (auto svg = line_chart(spec, series)) out.files[path] = std::move(*svg);
    } catch (...) {
        // a missing figure never fails a run
    }
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline json fit_json(const PowerFit& f) {
    return {{"exponent", f.exponent},
            {"log_constant", f.log_constant},
            {"r_squared", f.r_squared},
            {"flagged", !f.well_fitted()}};
}

inline std::vector<double> sorted_desc(std::vector<double> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

}  // namespace detail

inline CommandOutput run_equilibria(const RunConfig& cfg) {
    CommandOutput out;
    const auto eps_list = detail::sorted_desc(cfg.epsilon_list);
    CsvTable table({"epsilon", "z_minus", "z_zero", "z_plus", "discriminant", "vieta_max", "res_zero", "res_minus",
                    "res_plus"});
    json rows = json::array();
    bool vieta_ok = true, ordered = true;
    std::vector<std::pair<double, double>> r0, rm, rp;
    for (double e : eps_list) {
        const Scale eps = Scale::real(e);
        const Equilibria eq = solve_equilibria(eps, cfg.params);
        const auto v = eq.vieta_residuals(cfg.params.alpha);
        const double vmax = std::max({v[0], v[1], v[2]});
        const auto res = expansion_residuals(eps, cfg.params);
        const auto val = check_validity(eps, cfg.params);
        vieta_ok = vieta_ok && vmax <= 1e-9;
        ordered = ordered && val.ordered && val.discriminant_positive;
        table.add({e, eq.z_minus.real(), eq.z_zero.real(), eq.z_plus.real(), eq.discriminant.real(), vmax, res.zero,
                   res.minus, res.plus});
        rows.push_back({{"epsilon", e},
                        {"roots", {eq.z_minus.real(), eq.z_zero.real(), eq.z_plus.real()}},
                        {"vieta_residuals", {v[0], v[1], v[2]}},
                        {"discriminant_positive", val.discriminant_positive},
                        {"ordered", val.ordered},
                        {"expansion_residuals", {{"zero", res.zero}, {"minus", res.minus}, {"plus", res.plus}}}});
        r0.emplace_back(e, res.zero);
        rm.emplace_back(e, res.minus);
        rp.emplace_back(e, res.plus);
    }
    json doc{{"alpha", cfg.params.alpha}, {"rows", rows}};
    if (eps_list.size() >= 3) {
        doc["fits"] = {{"zero", detail::fit_json(power_fit(r0))},
                       {"minus", detail::fit_json(power_fit(rm))},
                       {"plus", detail::fit_json(power_fit(rp))}};
    }
    out.files["equilibria/roots.csv"] = table.str();
    out.files["equilibria/roots.json"] = detail::dump(doc);
    out.checks.push_back({"equilibria.vieta_1e-9", vieta_ok});
    out.checks.push_back({"equilibria.ordered_real_roots", ordered});

    Series s0{"|z0 - (1+a)/3|", {}, {}}, sm{"|z- + sqrt3/eps - (1+a)/3|", {}, {}};
    for (std::size_t i = 0; i < r0.size(); ++i) {
        s0.x.push_back(r0[i].first);
        s0.y.push_back(r0[i].second);
        sm.x.push_back(rm[i].first);
        sm.y.push_back(rm[i].second);
    }
    detail::add_svg(out, cfg, "equilibria/expansion_residuals.svg",
                    {"Root expansion residuals", "eps", "residual", true, true}, {s0, sm});
    return out;
}

/// Largest |ODE residual| / A^3 on 2001 nodes spanning [-10 eps, 10 eps].
inline double wave_residual_scaled(const WaveData& w) {
    const double e = w.epsilon_real();
    const double a3 = std::pow(std::abs(w.A_ren), 3);
    double worst = 0.0;
    for (int j = 0; j < 2001; ++j) {
        const double x = -10.0 * e + 20.0 * e * j / 2000.0;
        worst = std::max(worst, std::abs(travelling_wave_residual(x, w)) / a3);
    }
    return worst;
}

inline CommandOutput run_wave(const RunConfig& cfg) {
    CommandOutput out;
    const auto eps_list = detail::sorted_desc(cfg.epsilon_list);
    CsvTable table({"epsilon", "A_ren", "alpha_hux", "alpha_hux_minus_half", "s_ren", "max_residual_over_A3"});
    CsvTable profile({"epsilon", "x", "phi_ren", "residual"});
    std::vector<std::pair<double, double>> speed_pts, offset_pts;
    bool residual_ok = true, negative = true, band = true;
    std::vector<Series> curves;
    for (double e : eps_list) {
        const WaveData w = wave_data(Scale::real(e), cfg.params);
        const double res = wave_residual_scaled(w);
        const double s = w.s_ren.real();
        const double off = w.alpha_hux.real() - 0.5;
        residual_ok = residual_ok && res <= 1e-8;
        negative = negative && s < 0.0;
        band = band && std::abs(off) <= 0.05 * e * e;
        table.add({e, w.A_ren.real(), w.alpha_hux.real(), off, s, res});
        speed_pts.emplace_back(e, std::abs(s));
        if (off != 0.0) offset_pts.emplace_back(e, std::abs(off));
        Series c{"eps=" + fmt(e), {}, {}};
        for (int j = 0; j <= 200; ++j) {
            const double x = -10.0 * e + 20.0 * e * j / 200.0;
            const double phi = phi_ren(x, w);
            profile.add({e, x, phi, travelling_wave_residual(x, w)});
            c.x.push_back(x / e);
            c.y.push_back(e * phi);
        }
        curves.push_back(std::move(c));
    }
    json doc{{"alpha", cfg.params.alpha}};
    if (speed_pts.size() >= 3) doc["speed_fit"] = detail::fit_json(power_fit(speed_pts));
    if (offset_pts.size() >= 3) doc["alpha_hux_offset_fit"] = detail::fit_json(power_fit(offset_pts));
    out.files["wave/wave.csv"] = table.str();
    out.files["wave/profile.csv"] = profile.str();
    out.files["wave/fits.json"] = detail::dump(doc);
    out.checks.push_back({"wave.residual_1e-8_A3", residual_ok});
    out.checks.push_back({"wave.speed_negative", negative});
    out.checks.push_back({"wave.alpha_hux_band", band});
    detail::add_svg(out, cfg, "wave/profiles.svg", {"Rescaled profiles eps*Phi_ren", "x / eps", "eps * Phi_ren"},
                    curves);
    return out;
}

/// 50 real lambda above the border maximum and 50 points on the border curves.
inline std::vector<cplx> border_probe_points(const OperatorBundle& b, bool on_border) {
    std::vector<cplx> pts;
    const double bm = border_max_real(b);
    const double e = b.epsilon();
    for (int i = 0; i < 50; ++i) {
        if (on_border) {
            const BorderCurve c = border_curve(i % 2 == 0 ? Side::Minus : Side::Plus, b);
            const double xi = (-5.0 + 10.0 * i / 49.0) / e;
            pts.push_back(c(xi));
        } else {
            pts.emplace_back(bm + std::abs(bm) * std::pow(10.0, -3.0 + 4.0 * i / 49.0), 0.0);
        }
    }
    return pts;
}

inline CommandOutput run_borders(const RunConfig& cfg) {
    CommandOutput out;
    const auto eps_list = detail::sorted_desc(cfg.epsilon_list);
    CsvTable summary({"epsilon", "a0_minus", "a0_plus", "border_max_real", "scaled_border_max"});
    CsvTable curves({"epsilon", "side", "xi", "re", "im"});
    CsvTable classes({"epsilon", "lambda_re", "lambda_im", "verdict", "index"});
    bool band = true, classified = true;
    std::vector<Series> plot;
    for (double e : eps_list) {
        const OperatorBundle b = assemble_bundle(Scale::real(e), cfg.params);
        const auto [am, ap] = b.a0_limits();
        const double bm = border_max_real(b);
        band = band && std::abs(e * e * bm + 6.0) <= 3.0 * e;
        summary.add({e, am, ap, bm, e * e * bm});
        for (Side side : {Side::Minus, Side::Plus}) {
            const BorderCurve c = border_curve(side, b);
            Series s{"eps=" + fmt(e) + (side == Side::Minus ? " -" : " +"), {}, {}};
            for (int i = 0; i <= 80; ++i) {
                const double xi = (-4.0 + 8.0 * i / 80.0) / e;
                const cplx g = c(xi);
                curves.add_cells({fmt(e), side == Side::Minus ? "minus" : "plus", fmt(xi), fmt(g.real()), fmt(g.imag())});
                s.x.push_back(e * e * g.real());
                s.y.push_back(e * e * g.imag());
            }
            if (e == eps_list.front() || e == eps_list.back()) plot.push_back(std::move(s));
        }
        for (bool on_border : {false, true}) {
            for (const cplx& lam : border_probe_points(b, on_border)) {
                const Classification k = classify_lambda(lam, b);
                const Verdict expected = on_border ? Verdict::NotFredholm : Verdict::IndexZeroRegion;
                classified = classified && k.verdict == expected;
                classes.add_cells({fmt(e), fmt(lam.real()), fmt(lam.imag()), to_string(k.verdict),
                                   std::to_string(k.index)});
            }
        }
    }
    out.files["borders/summary.csv"] = summary.str();
    out.files["borders/curves.csv"] = curves.str();
    out.files["borders/classification.csv"] = classes.str();
    out.checks.push_back({"borders.scaled_max_within_6_pm_3eps", band});
    out.checks.push_back({"borders.classification", classified});
    detail::add_svg(out, cfg, "borders/curves.svg", {"Fredholm borders (scaled by eps^2)", "eps^2 Re", "eps^2 Im"},
                    plot);
    return out;
}

struct GapRow {
    double epsilon;
    SpectrumResult spectrum;
};

inline std::vector<GapRow> gap_sweep(const std::vector<double>& eps_list, const ModelParams& params, const Grid& grid,
                                     unsigned workers) {
    return parallel_map(eps_list, [&](double e) { return GapRow{e, spectral_gap(e, params, grid)}; }, workers);
}

inline CommandOutput run_gap(const RunConfig& cfg) {
    CommandOutput out;
    const auto eps_list = detail::sorted_desc(cfg.epsilon_list);
    const Grid grid = cfg.hol_grid();
    const auto rows = gap_sweep(eps_list, cfg.params, grid, cfg.workers);
    const SpectrumResult limit = spectral_gap(0.0, cfg.params, grid);

    CsvTable table({"epsilon", "lambda0", "lambda1", "gap", "gap_times_eps2"});
    std::vector<std::pair<double, double>> pts;
    bool positive_gap = true, oscillation = true;
    for (const auto& r : rows) {
        const double e2 = r.epsilon * r.epsilon;
        const auto& lam = r.spectrum.eigenvalues;
        table.add({r.epsilon, lam[0] / e2, lam[1] / e2, *r.spectrum.gap_ren, r.spectrum.gap});
        pts.emplace_back(r.epsilon, *r.spectrum.gap_ren);
        if (r.epsilon <= 0.3) positive_gap = positive_gap && r.spectrum.gap >= 4.0;
        oscillation = oscillation && sign_changes(r.spectrum.eigenvectors[0]) == 0 &&
                      sign_changes(r.spectrum.eigenvectors[1]) == 1;
    }
    json doc{{"limit", {{"lambda0", limit.eigenvalues[0]}, {"lambda1", limit.eigenvalues[1]}, {"gap", limit.gap}}},
             {"grid", {{"L", grid.half_width()}, {"N", grid.size()}}}};
    bool fit_ok = true;
    if (pts.size() >= 3) {
        const PowerFit f = power_fit(pts);
        doc["fit"] = detail::fit_json(f);
        fit_ok = std::abs(f.exponent + 2.0) <= 0.1 && f.well_fitted();
    } else {
        doc["fit"] = nullptr;
    }
    out.files["gap/gap.csv"] = table.str();
    out.files["gap/fit.json"] = detail::dump(doc);
    out.checks.push_back({"gap.fit_exponent_-2", fit_ok});
    out.checks.push_back({"gap.at_least_4", positive_gap});
    out.checks.push_back({"gap.sturm_oscillation", oscillation});

    std::vector<Series> wells;
    Series lim{"eps=0", {}, {}};
    for (int j = 0; j <= 240; ++j) {
        const double x = -6.0 + 12.0 * j / 240.0;
        lim.x.push_back(x);
        lim.y.push_back(q_hol_limit(x));
    }
    wells.push_back(std::move(lim));
    for (double e : {eps_list.front(), eps_list.back()}) {
        const WaveData w = wave_data(Scale::real(e), cfg.params);
        Series s{"eps=" + fmt(e), {}, {}};
        for (int j = 0; j <= 240; ++j) {
            const double x = -6.0 + 12.0 * j / 240.0;
            s.x.push_back(x);
            s.y.push_back(q_hol(x, w).real());
        }
        wells.push_back(std::move(s));
    }
    detail::add_svg(out, cfg, "gap/potential.svg", {"Rescaled potential Q_hol", "x", "Q_hol"}, wells);
    Series g{"gap / eps^2 units", {}, {}};
    for (const auto& [e, v] : pts) {
        g.x.push_back(e);
        g.y.push_back(v);
    }
    detail::add_svg(out, cfg, "gap/gap.svg", {"Spectral gap of H_ren", "eps", "gap", true, true}, {g});
    return out;
}

inline CommandOutput run_scaling(const RunConfig& cfg) {
    CommandOutput out;
    const auto eps_list = detail::sorted_desc(cfg.epsilon_list);
    const Grid grid = cfg.hol_grid();
    struct Pair {
        ScalingReport mapped;
        ScalingReport unmapped;
    };
    const auto reps = parallel_map(eps_list, [&](double e) {
        std::size_t m = (grid.size() + 1) / 2;
        m += 1 - m % 2;
        const Grid coarse(grid.half_width() * e, m);
        return Pair{scaling_check(e, cfg.params, grid), scaling_check(e, cfg.params, grid, coarse)};
    }, cfg.workers);
    CsvTable table({"epsilon", "k", "lambda_ren", "lambda_hol", "abs_diff", "mismatch"});
    CsvTable diag({"epsilon", "k", "lambda_ren", "lambda_hol", "abs_diff", "mismatch"});
    json summary = json::array();
    bool ok = true;
    for (const auto& p : reps) {
        for (const auto& r : p.mapped.rows) {
            table.add({p.mapped.epsilon, static_cast<double>(r.k), r.lambda_ren, r.lambda_hol, r.abs_diff, r.mismatch});
        }
        for (const auto& r : p.unmapped.rows) {
            diag.add({p.unmapped.epsilon, static_cast<double>(r.k), r.lambda_ren, r.lambda_hol, r.abs_diff, r.mismatch});
        }
        ok = ok && p.mapped.passes();
        summary.push_back({{"epsilon", p.mapped.epsilon},
                           {"max_mismatch", p.mapped.max_mismatch},
                           {"ground_within_floor", p.mapped.ground_within_floor},
                           {"unmapped_max_mismatch", p.unmapped.max_mismatch}});
    }
    out.files["scaling/mapped.csv"] = table.str();
    out.files["scaling/unmapped.csv"] = diag.str();
    out.files["scaling/summary.json"] = detail::dump(summary);
    out.checks.push_back({"scaling.mapped_1e-12", ok});
    return out;
}

inline CommandOutput run_holo(const RunConfig& cfg) {
    CommandOutput out;
    const HolomorphyTable t = holomorphy_check(cfg.holo.radii, cfg.holo.angles, cfg.params, cfg.hol_grid(), cfg.workers);
    CsvTable cells({"radius", "angle", "eps_re", "eps_im", "phi_error", "q_error", "skipped"});
    json skipped = json::array();
    for (const auto& c : t.cells) {
        cells.add({c.radius, c.angle, c.epsilon.real(), c.epsilon.imag(), c.phi_error, c.q_error, c.skipped ? 1.0 : 0.0});
        if (c.skipped) skipped.push_back({{"radius", c.radius}, {"angle", c.angle}, {"reason", c.reason}});
    }
    json fits = json::array();
    bool monotone = true;
    std::vector<Series> plot;
    for (const auto& f : t.fits) {
        json row{{"angle", f.angle}, {"monotone", f.monotone}};
        row["phi_fit"] = f.phi_fit ? detail::fit_json(*f.phi_fit) : json(nullptr);
        row["q_fit"] = f.q_fit ? detail::fit_json(*f.q_fit) : json(nullptr);
        fits.push_back(row);
        monotone = monotone && f.monotone;
        Series s{"angle=" + fmt(f.angle), {}, {}};
        for (const auto& c : t.cells) {
            if (c.angle == f.angle && !c.skipped) {
                s.x.push_back(c.radius);
                s.y.push_back(c.phi_error);
            }
        }
        plot.push_back(std::move(s));
    }
    out.files["holo/cells.csv"] = cells.str();
    out.files["holo/fits.json"] = detail::dump({{"fits", fits}, {"skipped", skipped}});
    out.checks.push_back({"holo.monotone_in_radius", monotone});
    detail::add_svg(out, cfg, "holo/phi_errors.svg", {"sup |Phi_hol - limit - eps(1+a)/3|", "|eps|", "error", true, true},
                    plot);
    return out;
}

struct EvolveRun {
    EvolutionConfig config;
    EvolutionResult result;
    FrontTrack track;
};

inline EvolveRun evolve_front(const EvolveSettings& s, const ModelParams& params, double h) {
    const Scale eps = Scale::real(s.epsilon, kEvolutionEpsMax);
    const WaveData w = wave_data(eps, params);
    EvolutionConfig c = default_evolution_config(eps, params, h);
    const double e2 = s.epsilon * s.epsilon;
    c.t_final = s.t_final_factor / e2;
    // a refined run halves dt together with h
    c.dt = s.dt_factor * e2 * (h / s.h);
    c.snapshot_stride = std::max<std::size_t>(1, c.steps() / s.snapshots);
    const auto u0 = RealGridFunction::sample(c.grid, [&](double x) { return phi_ren(x, w); });
    EvolutionResult r = evolve(u0, c, eps, params);
    FrontTrack tr = track_front(r.grid, r.snapshots, c.level);
    return {c, std::move(r), std::move(tr)};
}

struct EvolveSummary {
    double exact_speed;
    double speed;
    double refined_speed;
    double relative_error;
    double refinement_change;
    double shape_deviation;  // relative to A_ren
};

inline CommandOutput run_evolve(const RunConfig& cfg, EvolveSummary* summary_out = nullptr) {
    CommandOutput out;
    const auto& s = cfg.evolve;
    const WaveData w = wave_data(Scale::real(s.epsilon, kEvolutionEpsMax), cfg.params);
    const auto runs = parallel_map(std::vector<double>{s.h, 0.5 * s.h},
                                   [&](double h) { return evolve_front(s, cfg.params, h); }, cfg.workers);
    const auto& base = runs[0];
    const auto& fine = runs[1];
    EvolveSummary sum{};
    sum.exact_speed = w.s_ren.real();
    sum.speed = base.track.fitted_speed;
    sum.refined_speed = fine.track.fitted_speed;
    sum.relative_error = std::abs(sum.speed - sum.exact_speed) / std::abs(sum.exact_speed);
    sum.refinement_change = std::abs(sum.refined_speed - sum.speed) / std::abs(sum.refined_speed);
    sum.shape_deviation = shape_deviation(base.result.grid, base.result.snapshots.back(), sum.speed, w) / w.A_ren.real();

    CsvTable track({"t", "position"});
    for (std::size_t i = 0; i < base.track.times.size(); ++i) track.add({base.track.times[i], base.track.positions[i]});
    CsvTable snaps({"t", "x", "u"});
    const auto& sn = base.result.snapshots;
    std::vector<Series> plot;
    for (std::size_t idx : {std::size_t{0}, sn.size() / 2, sn.size() - 1}) {
        Series p{"t=" + fmt(sn[idx].t), {}, {}};
        for (std::size_t j = 0; j < base.result.grid.size(); j += 10) {
            snaps.add({sn[idx].t, base.result.grid.x(j), sn[idx].u[j]});
            if (std::abs(base.result.grid.x(j)) <= 3.0) {
                p.x.push_back(base.result.grid.x(j));
                p.y.push_back(sn[idx].u[j]);
            }
        }
        plot.push_back(std::move(p));
    }
    json doc{{"epsilon", s.epsilon},
             {"alpha", cfg.params.alpha},
             {"h", base.config.grid.spacing()},
             {"dt", base.config.dt},
             {"t_final", base.config.t_final},
             {"L", base.config.grid.half_width()},
             {"exact_speed", sum.exact_speed},
             {"fitted_speed", sum.speed},
             {"refined_speed", sum.refined_speed},
             {"relative_error", sum.relative_error},
             {"refinement_change", sum.refinement_change},
             {"shape_deviation_over_A", sum.shape_deviation},
             {"fit_window", {base.track.fit_start, base.track.fit_end}}};
    out.files["evolve/track.csv"] = track.str();
    out.files["evolve/snapshots.csv"] = snaps.str();
    out.files["evolve/summary.json"] = detail::dump(doc);
    out.checks.push_back({"evolve.speed_within_5pct", sum.relative_error <= 0.05});
    out.checks.push_back({"evolve.refinement_within_1pct", sum.refinement_change <= 0.01});
    out.checks.push_back({"evolve.speed_negative", sum.speed < 0.0});
    out.checks.push_back({"evolve.shape_within_0.02A", sum.shape_deviation <= 0.02});
    detail::add_svg(out, cfg, "evolve/snapshots.svg", {"Front snapshots", "x", "u"}, plot);
    if (summary_out) *summary_out = sum;
    return out;
}

}  // namespace frontspec::cli
