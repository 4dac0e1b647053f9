#include "catch_amalgamated.hpp"

#include <cmath>

#include "frontspec/operators.hpp"
#include "support/generators.hpp"

using namespace frontspec;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double max_abs_within(const RealGridFunction& u, double window) {
    double m = 0.0;
    for (std::size_t j = 1; j + 1 < u.values.size(); ++j) {
        if (std::abs(u.grid.x(j)) <= window) m = std::max(m, std::abs(u.values[j]));
    }
    return m;
}

}  // namespace

TEST_CASE("weight and multiplier", "[operators]") {
    CHECK(weight_w(0.0, 4.0) == 1.0);
    CHECK_THAT(weight_w(1.0, 4.0), WithinRel(0.25, 1e-15));
    CHECK_THAT(weight_w(3.0, 3.0), WithinRel(std::pow(10.0, -1.5), 1e-14));
    CHECK(rho_eps(0.0, -0.3) == 1.0);
    CHECK_THAT(rho_eps(2.0, -0.3), WithinRel(std::exp(-0.3), 1e-15));
}

TEST_CASE("coefficient limits are the equilibrium linearizations", "[operators][property]") {
    gen::Cases cases(0x0ff1);
    for (int i = 0; i < 50; ++i) {
        const double e = cases.epsilon();
        const ModelParams p = ModelParams::make(cases.alpha(), cases.uniform(2.1, 8.0));
        const OperatorBundle b = assemble_bundle(Scale::real(e), p);
        const auto [am, ap] = b.a0_limits();
        const double far = 1e4;
        CHECK_THAT(b.a1(far), WithinAbs(b.speed(), 1e-3));
        CHECK_THAT(b.a1(-far), WithinAbs(b.speed(), 1e-3));
        CHECK_THAT(b.a0(far), WithinRel(ap, 1e-6));
        CHECK_THAT(b.a0(-far), WithinRel(am, 1e-6));
        CHECK(am < 0.0);
        CHECK(ap < 0.0);
    }
}

TEST_CASE("M_ren is the weight conjugate of L_ren", "[operators]") {
    const ModelParams p = ModelParams::make(0.25, 4.0);
    const OperatorBundle b = assemble_bundle(Scale::real(0.3), p);
    const Grid g(6.0, 24001);
    auto bump = [](double x) { return std::exp(-x * x); };
    const auto u = RealGridFunction::sample(g, bump);
    const auto v = RealGridFunction::sample(g, [&](double x) { return bump(x) / std::sqrt(weight_w(x, p.beta_weight)); });
    const auto mu = apply_operator(OperatorKind::M_ren, u, b);
    auto diff = apply_operator(OperatorKind::L_ren, v, b);
    for (std::size_t j = 0; j < g.size(); ++j) {
        diff.values[j] = diff.values[j] * std::sqrt(weight_w(g.x(j), p.beta_weight)) - mu.values[j];
    }
    CHECK(max_abs_within(diff, 4.0) <= 1e-4 * max_abs_within(mu, 4.0));
}

TEST_CASE("H_ren(rho u) = -rho L_ren u", "[operators]") {
    const OperatorBundle b = assemble_bundle(Scale::real(0.3), ModelParams{});
    const Grid g(4.0, 16001);
    auto bump = [](double x) { return std::exp(-2.0 * x * x); };
    const auto u = RealGridFunction::sample(g, bump);
    const auto ru = RealGridFunction::sample(g, [&](double x) { return rho_eps(x, b.speed()) * bump(x); });
    const auto lu = apply_operator(OperatorKind::L_ren, u, b);
    auto diff = apply_operator(OperatorKind::H_ren, ru, b);
    for (std::size_t j = 0; j < g.size(); ++j) diff.values[j] += rho_eps(g.x(j), b.speed()) * lu.values[j];
    CHECK(max_abs_within(diff, 3.0) <= 1e-4 * max_abs_within(lu, 3.0));
}

TEST_CASE("translation mode lies in the kernel of L_ren", "[operators]") {
    const OperatorBundle b = assemble_bundle(Scale::real(0.2), ModelParams{});
    std::vector<double> res;
    for (std::size_t n : {2001u, 4001u}) {
        const Grid g(1.0, n);
        const auto d = RealGridFunction::sample(g, [&](double x) { return phi_ren_d1(x, b.wave()); });
        res.push_back(max_abs_within(apply_operator(OperatorKind::L_ren, d, b), 0.9) / max_abs_within(d, 0.9));
    }
    CHECK_THAT(std::log2(res[0] / res[1]), WithinAbs(2.0, 0.1));
}

TEST_CASE("Q_hol polynomial form equals the dilated Q_ren", "[operators][property]") {
    gen::Cases cases(0x0ff2);
    for (int i = 0; i < 50; ++i) {
        const OperatorBundle b = assemble_bundle(Scale::real(cases.epsilon()), ModelParams::make(cases.alpha()));
        for (int j = 0; j < 20; ++j) {
            const double y = cases.uniform(-15.0, 15.0);
            const cplx q = q_hol(y, b.wave());
            CHECK_THAT(q.real(), WithinAbs(b.q_hol_rescaled(y), 1e-10 * (1.0 + std::abs(q.real()))));
            CHECK(q.imag() == 0.0);
        }
    }
}

TEST_CASE("Q_hol tends to the Poschl-Teller well", "[operators]") {
    for (double x : {-3.0, -0.5, 0.0, 1.0, 4.0}) {
        const double p0 = phi_hol_limit(x);
        CHECK_THAT(q_hol_limit(x), WithinAbs(3.0 * p0 * p0 - 3.0, 1e-13));
    }
    CHECK_THAT(q_hol_limit(0.0), WithinAbs(-3.0, 1e-15));
    CHECK_THAT(q_hol_limit(40.0), WithinAbs(6.0, 1e-12));
    const WaveData w = wave_data(Scale::real(0.01), ModelParams{});
    for (double x : {-2.0, 0.0, 0.7}) CHECK_THAT(q_hol(x, w).real(), WithinAbs(q_hol_limit(x), 0.05));
}

TEST_CASE("L_ren on a constant is f' times the constant", "[operators]") {
    const OperatorBundle b = assemble_bundle(Scale::real(0.2), ModelParams{});
    const Grid g(2.0, 401);
    const auto one = RealGridFunction::sample(g, [](double) { return 1.0; });
    const auto out = apply_operator(OperatorKind::L_ren, one, b);
    CHECK(out.values.front() == 0.0);
    for (std::size_t j = 1; j + 1 < g.size(); ++j) {
        CHECK_THAT(out.values[j], WithinRel(b.linearized_reaction(g.x(j)), 1e-12));
    }
}

TEST_CASE("operator bundle needs real positive eps", "[operators]") {
    try {
        (void)assemble_bundle(Scale::polar(0.1, 0.2), ModelParams{});
        FAIL("expected a domain error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Domain);
    }
}
