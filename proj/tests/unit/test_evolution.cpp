#include "catch_amalgamated.hpp"

#include <cmath>

#include "frontspec/evolution.hpp"

using namespace frontspec;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

EvolutionConfig small_config(double eps, double t_final) {
    EvolutionConfig cfg{Grid(5.0, 501), t_final, kStiffnessFactor * eps * eps, 0.0, 10};
    return cfg;
}

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::Numeric;
}

}  // namespace

TEST_CASE("outer equilibria are steady states", "[evolution]") {
    const double eps = 0.3;
    const Scale sc = Scale::real(eps, kEvolutionEpsMax);
    const Equilibria eq = solve_equilibria(sc, ModelParams{});
    const EvolutionConfig cfg = small_config(eps, 2.0);
    for (cplx z : {eq.z_plus, eq.z_minus}) {
        const auto u0 = RealGridFunction::sample(cfg.grid, [&](double) { return z.real(); });
        const EvolutionResult r = evolve(u0, cfg, sc, ModelParams{});
        double drift = 0.0;
        for (double v : r.snapshots.back().u) drift = std::max(drift, std::abs(v - z.real()));
        CHECK(drift / r.snapshots.back().t <= 1e-10 * std::abs(z.real()));
    }
}

TEST_CASE("the middle equilibrium is unstable", "[evolution]") {
    const double eps = 0.3;
    const Scale sc = Scale::real(eps, kEvolutionEpsMax);
    const Equilibria eq = solve_equilibria(sc, ModelParams{});
    REQUIRE(eval_f_ren_prime(eq.z_zero.real(), eps, ModelParams{}) > 0.0);
    const EvolutionConfig cfg = small_config(eps, 0.2);
    const double kick = 1e-6;
    const auto u0 = RealGridFunction::sample(cfg.grid, [&](double) { return eq.z_zero.real() + kick; });
    const EvolutionResult r = evolve(u0, cfg, sc, ModelParams{});
    const double dev = r.snapshots.back().u[250] - eq.z_zero.real();
    CHECK(dev > 100.0 * kick);
}

TEST_CASE("tracking a rigidly translated profile", "[evolution]") {
    const Grid g(10.0, 2001);
    const double c = -0.37;
    std::vector<Snapshot> snaps;
    for (int i = 0; i <= 40; ++i) {
        const double t = 0.25 * i;
        snaps.push_back({t, RealGridFunction::sample(g, [&](double x) { return std::tanh(x - 1.0 - c * t); }).values});
    }
    const FrontTrack tr = track_front(g, snaps, 0.0);
    CHECK_THAT(tr.fitted_speed, WithinAbs(c, 1e-6));
    CHECK_THAT(tr.positions.front(), WithinAbs(1.0, 1e-6));
    CHECK(tr.fit_start == 5.0);
    CHECK(tr.fit_end == 10.0);
}

TEST_CASE("tracking errors", "[evolution]") {
    const Grid g(5.0, 101);
    const auto flat = RealGridFunction::sample(g, [](double) { return 1.0; }).values;
    const auto bump = RealGridFunction::sample(g, [](double x) { return std::exp(-x * x) - 0.5; }).values;
    CHECK(code_of([&] { (void)crossing_position(g, flat, 0.0); }) == ErrorCode::Tracking);
    CHECK(code_of([&] { (void)crossing_position(g, bump, 0.0); }) == ErrorCode::Tracking);
    const auto front = RealGridFunction::sample(g, [](double x) { return std::tanh(x); }).values;
    std::vector<Snapshot> few{{0.0, front}, {1.0, front}};
    CHECK(code_of([&] { (void)track_front(g, few, 0.0); }) == ErrorCode::Tracking);
    CHECK(code_of([&] { (void)track_front(g, {}, 0.0); }) == ErrorCode::Tracking);
}

TEST_CASE("configuration and input checks", "[evolution]") {
    const double eps = 0.3;
    const Scale sc = Scale::real(eps, kEvolutionEpsMax);
    EvolutionConfig cfg = small_config(eps, 1.0);
    const auto u0 = RealGridFunction::sample(cfg.grid, [](double x) { return std::tanh(x); });

    cfg.dt *= 1.01;
    CHECK(code_of([&] { (void)evolve(u0, cfg, sc, ModelParams{}); }) == ErrorCode::Config);

    cfg = small_config(eps, 1.0);
    const auto wild = RealGridFunction::sample(cfg.grid, [](double) { return 1e3; });
    CHECK(code_of([&] { (void)evolve(wild, cfg, sc, ModelParams{}); }) == ErrorCode::Input);

    const auto short_u0 = RealGridFunction::sample(Grid(5.0, 201), [](double x) { return std::tanh(x); });
    CHECK(code_of([&] { (void)evolve(short_u0, cfg, sc, ModelParams{}); }) == ErrorCode::Input);
}

TEST_CASE("simulated front moves at the renormalized speed", "[evolution]") {
    const double eps = 0.5;
    const ModelParams p{};
    const Scale sc = Scale::real(eps, kEvolutionEpsMax);
    const WaveData w = wave_data(sc, p);
    const EvolutionConfig cfg = default_evolution_config(sc, p);
    CHECK(cfg.grid.size() % 2 == 1);
    const auto u0 = RealGridFunction::sample(cfg.grid, [&](double x) { return phi_ren(x, w); });
    const EvolutionResult r = evolve(u0, cfg, sc, p);
    const FrontTrack tr = track_front(r.grid, r.snapshots, cfg.level);
    const double s = w.s_ren.real();
    CHECK(s < 0.0);
    CHECK_THAT(tr.fitted_speed, WithinRel(s, 0.01));
    CHECK(shape_deviation(r.grid, r.snapshots.back(), tr.fitted_speed, w) <= 1e-3 * w.A_ren.real());
}
