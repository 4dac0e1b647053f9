#pragma once

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "frontspec/error.hpp"

namespace frontspec {

struct SymTridiagonal {
    std::vector<double> diag;
    std::vector<double> off;  // off[i] couples rows i and i+1

    SymTridiagonal() = default;
    SymTridiagonal(std::vector<double> d, std::vector<double> e) : diag(std::move(d)), off(std::move(e)) {
        if (diag.empty() || off.size() + 1 != diag.size()) {
            fail(ErrorCode::Domain, "tridiagonal shape mismatch");
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return diag.size(); }

    [[nodiscard]] std::vector<double> multiply(std::span<const double> v) const {
        const std::size_t n = size();
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) {
            double acc = diag[i] * v[i];
            if (i > 0) acc += off[i - 1] * v[i - 1];
            if (i + 1 < n) acc += off[i] * v[i + 1];
            out[i] = acc;
        }
        return out;
    }

    /// Gershgorin interval containing the whole spectrum.
    [[nodiscard]] std::pair<double, double> gershgorin() const {
        const std::size_t n = size();
        double lo = INFINITY;
        double hi = -INFINITY;
        for (std::size_t i = 0; i < n; ++i) {
            double r = 0.0;
            if (i > 0) r += std::abs(off[i - 1]);
            if (i + 1 < n) r += std::abs(off[i]);
            lo = std::min(lo, diag[i] - r);
            hi = std::max(hi, diag[i] + r);
        }
        return {lo, hi};
    }

    [[nodiscard]] double norm_inf() const {
        const auto [lo, hi] = gershgorin();
        return std::max(std::abs(lo), std::abs(hi));
    }
};

/// Number of eigenvalues strictly below x (Sturm sequence / LDL^T inertia).
inline std::size_t sturm_count(const SymTridiagonal& t, double x) {
    double max_off_sq = 0.0;
    for (double e : t.off) max_off_sq = std::max(max_off_sq, e * e);
    const double pivmin = DBL_MIN * std::max(1.0, max_off_sq);
    std::size_t count = 0;
    double d = t.diag[0] - x;
    if (std::abs(d) < pivmin) d = -pivmin;
    if (d < 0.0) ++count;
    for (std::size_t i = 1; i < t.size(); ++i) {
        d = (t.diag[i] - x) - t.off[i - 1] * t.off[i - 1] / d;
        if (std::abs(d) < pivmin) d = -pivmin;
        if (d < 0.0) ++count;
    }
    return count;
}

/// k-th smallest eigenvalue (0-based), bisected down to adjacent doubles.
inline double kth_eigenvalue(const SymTridiagonal& t, std::size_t k) {
    if (k >= t.size()) fail(ErrorCode::Domain, "eigenvalue index out of range");
    auto [lo, hi] = t.gershgorin();
    const double pad = 2.0 * DBL_EPSILON * std::max({1.0, std::abs(lo), std::abs(hi)});
    lo -= pad;
    hi += pad;
    for (int it = 0; it < 2000; ++it) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        if (sturm_count(t, mid) <= k) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo + 0.5 * (hi - lo);
}

namespace detail {

// LU with partial pivoting of T - shift I (LAPACK gttrf layout); tiny pivots
// are nudged so that nearly singular shifts still give a usable solve.
struct ShiftedLU {
    std::vector<double> dl, d, du, du2;
    std::vector<bool> swapped;

    ShiftedLU(const SymTridiagonal& t, double shift) {
        const std::size_t n = t.size();
        d.resize(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = t.diag[i] - shift;
        dl = t.off;
        du = t.off;
        du2.assign(n > 2 ? n - 2 : 0, 0.0);
        swapped.assign(n > 0 ? n - 1 : 0, false);
        const double tiny = DBL_EPSILON * std::max(1.0, t.norm_inf());
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::abs(d[i]) >= std::abs(dl[i])) {
                if (d[i] == 0.0) d[i] = tiny;
                const double fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                const double fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                const double tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp - fact * d[i + 1];
                if (i + 2 < n) {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        if (n > 0 && std::abs(d[n - 1]) < tiny) d[n - 1] = d[n - 1] < 0.0 ? -tiny : tiny;
    }

    void solve(std::vector<double>& b) const {
        const std::size_t n = d.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (!swapped[i]) {
                b[i + 1] -= dl[i] * b[i];
            } else {
                const double tmp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = tmp - dl[i] * b[i];
            }
        }
        b[n - 1] /= d[n - 1];
        if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
        for (std::size_t ii = n; ii-- > 2;) {
            const std::size_t i = ii - 2;
            b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
        }
    }
};

inline double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace detail

struct Eigenpairs {
    std::vector<double> values;               // ascending
    std::vector<std::vector<double>> vectors;  // unit Euclidean norm
    std::vector<double> residuals;             // ||T v - lambda v||
};

/// The k smallest eigenpairs: Sturm bisection for values, inverse iteration
/// from the fixed start vector e_1 + e_mid for vectors.
inline Eigenpairs lowest_eigenpairs(const SymTridiagonal& t, std::size_t k, double residual_tol = 1e-8) {
    const std::size_t n = t.size();
    if (k == 0 || k > n) fail(ErrorCode::Domain, "requested eigenpair count out of range");
    Eigenpairs out;
    for (std::size_t j = 0; j < k; ++j) {
        const double lambda = kth_eigenvalue(t, j);
        const detail::ShiftedLU lu(t, lambda);
        std::vector<double> v(n, 0.0);
        v[0] += 1.0;
        v[(n - 1) / 2] += 1.0;
        double res = INFINITY;
        constexpr int kMaxIter = 8;
        for (int it = 0; it < kMaxIter; ++it) {
            lu.solve(v);
            for (const auto& prev : out.vectors) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += prev[i] * v[i];
                for (std::size_t i = 0; i < n; ++i) v[i] -= dot * prev[i];
            }
            const double nv = detail::norm2(v);
            if (!(nv > 0.0) || !std::isfinite(nv)) break;
            for (double& x : v) x /= nv;
            auto tv = t.multiply(v);
            for (std::size_t i = 0; i < n; ++i) tv[i] -= lambda * v[i];
            res = detail::norm2(tv);
            if (it >= 1 && res <= residual_tol) break;
        }
        if (!(res <= residual_tol)) {
            fail(ErrorCode::Numeric, "inverse iteration stagnated for eigenvalue #" + std::to_string(j) +
                                         " (lambda=" + std::to_string(lambda) +
                                         ", residual=" + std::to_string(res) + ")");
        }
        out.values.push_back(lambda);
        out.vectors.push_back(std::move(v));
        out.residuals.push_back(res);
    }
    return out;
}

/// Thomas algorithm for a general (diagonally dominant) tridiagonal system.
/// sub[i] multiplies x[i] in row i+1, sup[i] multiplies x[i+1] in row i.
inline void solve_tridiagonal(std::span<const double> sub, std::span<const double> diag,
                              std::span<const double> sup, std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    std::vector<double> c(n, 0.0);
    double beta = diag[0];
    if (beta == 0.0) fail(ErrorCode::Numeric, "zero pivot in tridiagonal solve");
    rhs[0] /= beta;
    for (std::size_t i = 1; i < n; ++i) {
        c[i - 1] = sup[i - 1] / beta;
        beta = diag[i] - sub[i - 1] * c[i - 1];
        if (beta == 0.0) fail(ErrorCode::Numeric, "zero pivot in tridiagonal solve");
        rhs[i] = (rhs[i] - sub[i - 1] * rhs[i - 1]) / beta;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
}

}  // namespace frontspec
