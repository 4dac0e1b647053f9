#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>

#include "frontspec/core.hpp"
#include "frontspec/operators.hpp"

namespace frontspec {

enum class Side { Minus, Plus };

namespace detail {

inline std::pair<double, double> limits(Side side, const OperatorBundle& b) {
    const auto [a1m, a1p] = b.a1_limits();
    const auto [a0m, a0p] = b.a0_limits();
    return side == Side::Minus ? std::pair{a1m, a0m} : std::pair{a1p, a0p};
}

}  // namespace detail

/// A(lambda) = [[0, 1], [lambda - a0, -a1]] at one end of the line.
struct AsymptoticMatrix {
    cplx lambda;
    Side side;
    std::array<std::array<cplx, 2>, 2> entries;

    [[nodiscard]] cplx trace() const { return entries[0][0] + entries[1][1]; }
    [[nodiscard]] cplx det() const { return entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0]; }
};

inline AsymptoticMatrix asymptotic_matrix(cplx lambda, Side side, const OperatorBundle& b) {
    const auto [a1, a0] = detail::limits(side, b);
    return {lambda, side, {{{cplx(0.0), cplx(1.0)}, {lambda - a0, cplx(-a1)}}}};
}

/// Roots of mu^2 + a1 mu - (lambda - a0) = 0, computed without cancellation.
inline std::array<cplx, 2> spatial_eigenvalues(cplx lambda, Side side, const OperatorBundle& b) {
    const auto [a1, a0] = detail::limits(side, b);
    const cplx bq(a1, 0.0);
    const cplx cq = a0 - lambda;
    const cplx root = std::sqrt(bq * bq - 4.0 * cq);
    // Pick the sign that avoids subtracting nearly equal numbers.
    const cplx q = std::real(std::conj(bq) * root) >= 0.0 ? -0.5 * (bq + root) : -0.5 * (bq - root);
    if (q == 0.0) return {cplx(0.0), cplx(0.0)};
    return {q, cq / q};
}

inline double hyperbolicity_tol(cplx lambda, double a0) {
    return 1e-10 * (1.0 + std::abs(lambda) + std::abs(a0));
}

/// Number of spatial eigenvalues with positive real part (with multiplicity);
/// nullopt when one sits on the imaginary axis within the relative tolerance.
inline std::optional<int> morse_index(cplx lambda, Side side, const OperatorBundle& b) {
    const auto mu = spatial_eigenvalues(lambda, side, b);
    const double tol = hyperbolicity_tol(lambda, detail::limits(side, b).second);
    int count = 0;
    for (const cplx& m : mu) {
        if (std::abs(m.real()) <= tol) return std::nullopt;
        if (m.real() > tol) ++count;
    }
    return count;
}

/// Gamma(xi) = (i xi)^2 + a1 i xi + a0: where A(lambda) has the eigenvalue i xi.
struct BorderCurve {
    Side side;
    double a1_lim;
    double a0_lim;

    [[nodiscard]] cplx operator()(double xi) const { return cplx(a0_lim - xi * xi, a1_lim * xi); }
};

inline BorderCurve border_curve(Side side, const OperatorBundle& b) {
    const auto [a1, a0] = detail::limits(side, b);
    return {side, a1, a0};
}

/// Largest real part on either border curve, attained at xi = 0.
inline double border_max_real(const OperatorBundle& b) {
    const auto [a0m, a0p] = b.a0_limits();
    return std::max(a0m, a0p);
}

enum class Verdict { NotFredholm, FredholmIndex, IndexZeroRegion };

struct Classification {
    cplx lambda;
    Verdict verdict;
    int index = 0;  // i(A-) - i(A+) when Fredholm
    std::optional<int> morse_minus;
    std::optional<int> morse_plus;
};

inline Classification classify_lambda(cplx lambda, const OperatorBundle& b) {
    Classification c{lambda, Verdict::NotFredholm, 0, morse_index(lambda, Side::Minus, b),
                     morse_index(lambda, Side::Plus, b)};
    if (!c.morse_minus || !c.morse_plus) return c;
    c.index = *c.morse_minus - *c.morse_plus;
    c.verdict = c.index == 0 ? Verdict::IndexZeroRegion : Verdict::FredholmIndex;
    return c;
}

constexpr const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::NotFredholm: return "not_fredholm";
        case Verdict::FredholmIndex: return "fredholm_index";
        case Verdict::IndexZeroRegion: return "index_zero";
    }
    return "unknown";
}

}  // namespace frontspec
