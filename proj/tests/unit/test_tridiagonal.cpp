#include "catch_amalgamated.hpp"

#include <cfloat>
#include <cmath>
#include <vector>

#include "frontspec/tridiagonal.hpp"
#include "oracles/spectra_oracles.hpp"
#include "support/generators.hpp"

using namespace frontspec;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SymTridiagonal laplacian(std::size_t n, double h) {
    return SymTridiagonal(std::vector<double>(n, 2.0 / (h * h)), std::vector<double>(n - 1, -1.0 / (h * h)));
}

}  // namespace

TEST_CASE("diagonal matrix", "[tridiagonal]") {
    const SymTridiagonal t({3.0, -1.0, 2.0}, {0.0, 0.0});
    CHECK(kth_eigenvalue(t, 0) == -1.0);
    CHECK(kth_eigenvalue(t, 1) == 2.0);
    CHECK(kth_eigenvalue(t, 2) == 3.0);
    CHECK(sturm_count(t, 2.5) == 2);
    CHECK(sturm_count(t, -5.0) == 0);
}

TEST_CASE("discrete Dirichlet Laplacian eigenvalues", "[tridiagonal]") {
    const std::size_t n = 500;
    const double h = 0.01;
    const SymTridiagonal t = laplacian(n, h);
    for (std::size_t k : {0u, 1u, 7u, 250u, 499u}) {
        CHECK_THAT(kth_eigenvalue(t, k), WithinAbs(oracle::discrete_dirichlet_eigenvalue(n, h, k), 10.0 * DBL_EPSILON * t.norm_inf()));
    }
}

TEST_CASE("Sturm count is monotone and counts eigenvalues", "[tridiagonal][property]") {
    gen::Cases cases(0x7d1a);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = static_cast<std::size_t>(cases.integer(2, 60));
        const SymTridiagonal t(cases.vector(n, -5.0, 5.0), cases.vector(n - 1, -2.0, 2.0));
        std::size_t prev = 0;
        for (double x = -15.0; x <= 15.0; x += 0.37) {
            const std::size_t c = sturm_count(t, x);
            CHECK(c >= prev);
            prev = c;
        }
        CHECK(sturm_count(t, 20.0) == n);
        double trace = 0.0, sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            trace += t.diag[k];
            sum += kth_eigenvalue(t, k);
        }
        CHECK_THAT(sum, WithinAbs(trace, 1e-10 * static_cast<double>(n)));
    }
}

TEST_CASE("eigenpairs are accurate and orthonormal", "[tridiagonal][property]") {
    gen::Cases cases(0x7d1b);
    const std::size_t n = 400;
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = 2.0 + cases.uniform(-0.5, 0.5);
    const SymTridiagonal t(d, std::vector<double>(n - 1, -1.0));
    const Eigenpairs ep = lowest_eigenpairs(t, 5);
    REQUIRE(ep.values.size() == 5);
    for (std::size_t a = 0; a < 5; ++a) {
        CHECK(ep.residuals[a] <= 1e-8);
        if (a > 0) CHECK(ep.values[a] > ep.values[a - 1]);
        for (std::size_t b = 0; b <= a; ++b) {
            double dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += ep.vectors[a][i] * ep.vectors[b][i];
            CHECK_THAT(dot, WithinAbs(a == b ? 1.0 : 0.0, 1e-9));
        }
    }
}

TEST_CASE("eigenpair requests out of range", "[tridiagonal]") {
    const SymTridiagonal t = laplacian(4, 1.0);
    CHECK_THROWS_AS(lowest_eigenpairs(t, 0), Error);
    CHECK_THROWS_AS(lowest_eigenpairs(t, 5), Error);
    CHECK_THROWS_AS(kth_eigenvalue(t, 4), Error);
    CHECK_THROWS_AS(SymTridiagonal({1.0, 2.0}, {}), Error);
}

TEST_CASE("Thomas solve", "[tridiagonal][property]") {
    gen::Cases cases(0x7d1c);
    const std::size_t n = 200;
    const auto sub = cases.vector(n - 1, -1.0, 1.0);
    const auto sup = cases.vector(n - 1, -1.0, 1.0);
    auto diag = cases.vector(n, 3.0, 4.0);
    const auto x = cases.vector(n, -1.0, 1.0);
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        rhs[i] = diag[i] * x[i];
        if (i > 0) rhs[i] += sub[i - 1] * x[i - 1];
        if (i + 1 < n) rhs[i] += sup[i] * x[i + 1];
    }
    solve_tridiagonal(sub, diag, sup, rhs);
    for (std::size_t i = 0; i < n; ++i) CHECK_THAT(rhs[i], WithinAbs(x[i], 1e-13));
}
