#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "frontspec/core.hpp"
#include "frontspec/equilibria.hpp"
#include "frontspec/grid.hpp"
#include "frontspec/tridiagonal.hpp"
#include "frontspec/wave.hpp"

namespace frontspec {

inline constexpr double kStiffnessFactor = 0.1;

/// Validity radius used for simulations; the front-speed runs sit at eps = 0.5,
/// on the default radius itself.
inline constexpr double kEvolutionEpsMax = 1.0;

struct EvolutionConfig {
    Grid grid;
    double t_final = 0.0;
    double dt = 0.0;
    double level = 0.0;
    std::size_t snapshot_stride = 1;

    void validate(double eps) const {
        if (!(t_final > 0.0) || !std::isfinite(t_final)) fail(ErrorCode::Config, "t_final must be positive");
        if (!(dt > 0.0)) fail(ErrorCode::Config, "dt must be positive");
        if (dt > kStiffnessFactor * eps * eps * (1.0 + 1e-12)) {
            fail(ErrorCode::Config, "dt exceeds the stiffness cap 0.1 eps^2");
        }
        if (snapshot_stride == 0) fail(ErrorCode::Config, "snapshot_stride must be positive");
        if (!std::isfinite(level)) fail(ErrorCode::Config, "front level must be finite");
    }

    [[nodiscard]] std::size_t steps() const { return static_cast<std::size_t>(std::llround(t_final / dt)); }
};

/// h = 0.01, dt = 0.1 eps^2, T = 5 / eps^2, L = 15 (or wider for large eps),
/// level midway between the outer equilibria.
inline EvolutionConfig default_evolution_config(const Scale& scale, const ModelParams& params, double h = 0.01) {
    const double eps = scale.real_value();
    const WaveData w = wave_data(scale, params);
    const double L = std::max(15.0, 30.0 * eps + 2.0);
    auto cells = static_cast<std::size_t>(std::llround(2.0 * L / h));
    cells += cells % 2;
    EvolutionConfig cfg{Grid(L, cells + 1), 5.0 / (eps * eps), kStiffnessFactor * eps * eps,
                        0.5 * (w.equilibria.z_plus.real() + w.equilibria.z_minus.real()), 0};
    cfg.snapshot_stride = std::max<std::size_t>(1, cfg.steps() / 200);
    return cfg;
}

struct Snapshot {
    double t;
    std::vector<double> u;
};

struct EvolutionResult {
    Grid grid;
    std::vector<Snapshot> snapshots;  // t = 0 first, then every stride steps, final state last
    std::size_t steps = 0;
};

/// u_t = u_xx + f_ren(u) with homogeneous Neumann data. Crank–Nicolson for the
/// diffusion, second-order Adams–Bashforth for the reaction (the first step
/// uses forward Euler for the reaction).
inline EvolutionResult evolve(const RealGridFunction& u0, const EvolutionConfig& cfg, const Scale& scale,
                              const ModelParams& params) {
    const double eps = scale.real_value();
    cfg.validate(eps);
    if (u0.values.size() != cfg.grid.size()) fail(ErrorCode::Input, "initial data does not match the grid");
    const Equilibria eq = solve_equilibria(scale, params);
    const double zm = eq.z_minus.real();
    const double zp = eq.z_plus.real();
    for (double v : u0.values) {
        if (!std::isfinite(v) || v < zm - 1.0 || v > zp + 1.0) {
            fail(ErrorCode::Input, "initial data outside [z- - 1, z+ + 1]");
        }
    }

    const std::size_t n = cfg.grid.size();
    const double h = cfg.grid.spacing();
    const double r = cfg.dt / (h * h);
    const double blowup = 10.0 * std::abs(zp);

    // (I - dt/2 D) with ghost-node Neumann rows.
    std::vector<double> sub(n - 1, -0.5 * r), diag(n, 1.0 + r), sup(n - 1, -0.5 * r);
    sup[0] = -r;
    sub[n - 2] = -r;

    auto reaction = [&](const std::vector<double>& u, std::vector<double>& out) {
        for (std::size_t j = 0; j < n; ++j) out[j] = eval_f_ren(u[j], eps, params);
    };

    EvolutionResult res{cfg.grid, {{0.0, u0.values}}, cfg.steps()};
    std::vector<double> u = u0.values;
    std::vector<double> f_now(n), f_prev(n), rhs(n);
    reaction(u, f_now);

    for (std::size_t step = 1; step <= res.steps; ++step) {
        rhs[0] = u[0] + r * (u[1] - u[0]);
        rhs[n - 1] = u[n - 1] + r * (u[n - 2] - u[n - 1]);
        for (std::size_t j = 1; j + 1 < n; ++j) rhs[j] = u[j] + 0.5 * r * (u[j - 1] - 2.0 * u[j] + u[j + 1]);
        for (std::size_t j = 0; j < n; ++j) {
            rhs[j] += step == 1 ? cfg.dt * f_now[j] : cfg.dt * (1.5 * f_now[j] - 0.5 * f_prev[j]);
        }
        solve_tridiagonal(sub, diag, sup, rhs);
        u.swap(rhs);
        for (double v : u) {
            if (!std::isfinite(v) || std::abs(v) > blowup) {
                fail(ErrorCode::Instability, "solution blew up at step " + std::to_string(step));
            }
        }
        f_prev.swap(f_now);
        reaction(u, f_now);
        if (step % cfg.snapshot_stride == 0 || step == res.steps) {
            res.snapshots.push_back({static_cast<double>(step) * cfg.dt, u});
        }
    }
    return res;
}

struct FrontTrack {
    std::vector<double> times;
    std::vector<double> positions;
    double fitted_speed = 0.0;
    double fit_start = 0.0;
    double fit_end = 0.0;
};

/// Position of the single crossing of `level`, linearly interpolated.
inline double crossing_position(const Grid& grid, const std::vector<double>& u, double level) {
    std::optional<double> pos;
    for (std::size_t j = 0; j + 1 < u.size(); ++j) {
        const double a = u[j] - level;
        const double b = u[j + 1] - level;
        if ((a < 0.0 && b >= 0.0) || (a >= 0.0 && b < 0.0)) {
            if (pos) fail(ErrorCode::Tracking, "profile crosses the front level more than once");
            pos = grid.x(j) + grid.spacing() * a / (a - b);
        }
    }
    if (!pos) fail(ErrorCode::Tracking, "profile does not cross the front level");
    return *pos;
}

/// Least-squares speed over snapshots with t in [fit_start, fit_end]; by
/// default the second half of the run.
inline FrontTrack track_front(const Grid& grid, const std::vector<Snapshot>& snapshots, double level,
                              std::optional<double> fit_start = std::nullopt) {
    if (snapshots.empty()) fail(ErrorCode::Tracking, "no snapshots to track");
    FrontTrack tr;
    for (const auto& s : snapshots) {
        tr.times.push_back(s.t);
        tr.positions.push_back(crossing_position(grid, s.u, level));
    }
    tr.fit_end = tr.times.back();
    tr.fit_start = fit_start.value_or(0.5 * (tr.times.front() + tr.times.back()));
    double st = 0.0, sp = 0.0, stt = 0.0, stp = 0.0;
    std::size_t m = 0;
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        if (tr.times[i] < tr.fit_start) continue;
        st += tr.times[i];
        sp += tr.positions[i];
        stt += tr.times[i] * tr.times[i];
        stp += tr.times[i] * tr.positions[i];
        ++m;
    }
    if (m < 10) fail(ErrorCode::Tracking, "speed fit needs at least ten snapshots");
    const double dm = static_cast<double>(m);
    tr.fitted_speed = (dm * stp - st * sp) / (dm * stt - st * st);
    return tr;
}

/// sup |u(T, x) - Phi_ren(x - c T)| over the interior half of the domain.
inline double shape_deviation(const Grid& grid, const Snapshot& snap, double speed, const WaveData& w) {
    const double half = 0.5 * grid.half_width();
    double dev = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double x = grid.x(j);
        if (std::abs(x) > half) continue;
        dev = std::max(dev, std::abs(snap.u[j] - phi_ren(x - speed * snap.t, w)));
    }
    return dev;
}

}  // namespace frontspec
