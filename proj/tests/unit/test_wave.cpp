#include "catch_amalgamated.hpp"

#include <cmath>
#include <numbers>

#include "frontspec/asymptotics.hpp"
#include "frontspec/wave.hpp"
#include "oracles/wave_oracles.hpp"
#include "support/generators.hpp"

using namespace frontspec;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Huxley profile values and derivatives", "[wave]") {
    CHECK(phi_hux(0.0) == 0.5);
    CHECK_THAT(phi_hux(40.0), WithinAbs(1.0, 1e-12));
    CHECK_THAT(phi_hux(-40.0), WithinAbs(0.0, 1e-12));
    for (double x : {-3.0, -0.7, 0.0, 0.4, 2.5}) {
        const double h = 1e-5;
        const double fd1 = (phi_hux(x + h) - phi_hux(x - h)) / (2 * h);
        const double fd2 = (phi_hux(x + h) - 2 * phi_hux(x) + phi_hux(x - h)) / (h * h);
        CHECK_THAT(phi_hux_d1(x), WithinAbs(fd1, 1e-9));
        CHECK_THAT(phi_hux_d2(x), WithinAbs(fd2, 1e-5));
        // Phi solves sqrt2-scaled Nagumo at alpha = 1/2: Phi'' = -f(Phi) with zero speed
        const double p = phi_hux(x);
        CHECK_THAT(phi_hux_d2(x), WithinAbs(p * (p - 0.5) * (p - 1.0), 1e-14));
    }
}

TEST_CASE("complex Huxley profile matches the real one and is symmetric", "[wave]") {
    gen::Cases cases(0x3a11);
    for (int i = 0; i < 200; ++i) {
        const double x = cases.uniform(-30, 30);
        CHECK_THAT(phi_hux(cplx(x, 0.0)).real(), WithinAbs(phi_hux(x), 1e-15));
        const cplx z(x, cases.uniform(-0.9, 0.9) * std::abs(x));
        // Phi(z) + Phi(-z) = 1
        CHECK(std::abs(phi_hux(z) + phi_hux(-z) - 1.0) <= 1e-12);
    }
}

TEST_CASE("pole guard", "[wave]") {
    const cplx pole(0.0, std::numbers::sqrt2 * std::numbers::pi);
    try {
        (void)phi_hux(pole + cplx(1e-9, 0.0));
        FAIL("expected a pole error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Pole);
    }
    CHECK_NOTHROW(phi_hux(pole + cplx(1e-3, 0.0)));
}

TEST_CASE("sector classification and decay", "[wave]") {
    CHECK(SectorPoint::classify(cplx(1.0, 0.5)).region == SectorRegion::SigmaPlus);
    CHECK(SectorPoint::classify(cplx(-1.0, 0.5)).region == SectorRegion::SigmaMinus);
    CHECK(SectorPoint::classify(cplx(0.5, 1.0)).region == SectorRegion::Outside);
    const DecayCheck at0 = phi_hux_decay_check(SectorPoint::classify(cplx(0.0, 0.0)));
    CHECK_THAT(at0.ratio, WithinAbs(0.5, 1e-15));
    for (SectorRegion r : {SectorRegion::SigmaPlus, SectorRegion::SigmaMinus}) {
        const auto pts = sector_sample(r, 200);
        REQUIRE(pts.size() == 200);
        for (const auto& p : pts) {
            CHECK(p.region == r);
            CHECK(std::abs(p.z.real()) <= 50.0);
            CHECK(phi_hux_decay_check(p).pass);
        }
    }
}

TEST_CASE("renormalized wave solves the travelling-wave ODE", "[wave][property]") {
    gen::Cases cases(0x3a12);
    for (int i = 0; i < 100; ++i) {
        const double e = cases.epsilon();
        const WaveData w = wave_data(Scale::real(e), ModelParams::make(cases.alpha()));
        const double a3 = std::pow(w.A_ren.real(), 3);
        for (int j = 0; j <= 40; ++j) {
            const double x = -10.0 * e + 0.5 * e * j;
            CHECK(std::abs(travelling_wave_residual(x, w)) <= 1e-8 * a3);
        }
        CHECK(phi_ren_d1(0.0, w) > 0.0);
        CHECK_THAT(phi_ren(-1e3, w), WithinRel(w.equilibria.z_minus.real(), 1e-12));
        CHECK_THAT(phi_ren(1e3, w), WithinRel(w.equilibria.z_plus.real(), 1e-12));
    }
}

TEST_CASE("wave data: amplitude, asymmetry and speed", "[wave]") {
    const ModelParams p;
    for (double e : {0.2, 0.1, 0.05}) {
        const WaveData w = wave_data(Scale::real(e), p);
        CHECK_THAT(e * w.A_ren.real(), WithinAbs(std::sqrt(12.0), 0.05 * e));
        CHECK(std::abs(w.alpha_hux.real() - 0.5) <= 0.05 * e * e);
        CHECK(w.s_ren.real() < 0.0);
        CHECK_THAT(w.s_ren.real(), WithinRel(oracle::speed_leading(p.alpha, e), 0.1 * e));
    }
}

TEST_CASE("wave speed scales like eps squared", "[wave]") {
    const ModelParams p;
    std::vector<std::pair<double, double>> pts;
    for (double e : {0.3, 0.2, 0.1, 0.05}) pts.emplace_back(e, std::abs(wave_data(Scale::real(e), p).s_ren.real()));
    const PowerFit f = power_fit(pts);
    CHECK_THAT(f.exponent, WithinAbs(2.0, 0.05));
    CHECK_THAT(std::exp(f.log_constant), WithinRel(std::abs(oracle::speed_leading(p.alpha, 1.0)), 0.05));
}

TEST_CASE("rescaled profile approaches its tanh limit", "[wave]") {
    const ModelParams p;
    CHECK_THAT(phi_hol_limit(0.0), WithinAbs(0.0, 1e-16));
    CHECK_THAT(phi_hol_limit(30.0), WithinAbs(std::sqrt(3.0), 1e-12));
    for (double x : {-2.0, 0.3, 1.5}) {
        // sqrt12 Phi_hux(sqrt12 x) - sqrt3
        CHECK_THAT(phi_hol_limit(x), WithinAbs(std::sqrt(12.0) * phi_hux(std::sqrt(12.0) * x) - std::sqrt(3.0), 1e-14));
    }
    const WaveData w = wave_data(Scale::real(0.05), p);
    for (double x : {-2.0, 0.0, 1.0}) {
        CHECK(std::abs(phi_hol(x, w) - phi_hol_limit(x) - 0.05 * (1.0 + p.alpha) / 3.0) <= 0.01);
        CHECK_THAT(phi_hol(x, w).real(), WithinAbs(0.05 * phi_ren(0.05 * x, w), 1e-12));
    }
}

TEST_CASE("sector violation surfaces as a sector error", "[wave]") {
    WaveData w = wave_data(Scale::polar(0.1, 0.3), ModelParams{});
    CHECK_NOTHROW(phi_hol(0.5, w));
    w.A_ren *= std::polar(1.0, 1.2);
    try {
        (void)phi_hol(0.5, w);
        FAIL("expected a sector error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Sector);
    }
}
