#pragma once

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <optional>
#include <vector>

#include "frontspec/core.hpp"
#include "frontspec/grid.hpp"
#include "frontspec/operators.hpp"
#include "frontspec/tridiagonal.hpp"
#include "frontspec/wave.hpp"

namespace frontspec {

inline constexpr double kDefaultHolHalfWidth = 20.0;
inline constexpr std::size_t kDefaultHolNodes = 4001;

inline Grid default_hol_grid() { return Grid(kDefaultHolHalfWidth, kDefaultHolNodes); }

/// -d^2/dx^2 + Q on the interior nodes with homogeneous Dirichlet data at +-L.
/// Row i of the matrix corresponds to grid node i + 1.
template <class Potential>
SymTridiagonal discretize(Potential&& q, const Grid& grid) {
    const std::size_t n = grid.size() - 2;
    const double h = grid.spacing();
    const double inv_h2 = 1.0 / (h * h);
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.x(i + 1);
        const double qx = static_cast<double>(q(x));
        if (!std::isfinite(qx)) fail(ErrorCode::Input, "potential is not finite at x = " + std::to_string(x));
        diag[i] = 2.0 * inv_h2 + qx;
    }
    return SymTridiagonal(std::move(diag), std::vector<double>(n - 1, -inv_h2));
}

/// Same as above with the potential given as node samples (length N).
inline SymTridiagonal discretize_samples(std::span<const double> q_nodes, const Grid& grid) {
    if (q_nodes.size() != grid.size()) fail(ErrorCode::Input, "potential sample count does not match grid");
    const std::size_t n = grid.size() - 2;
    const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(q_nodes[i + 1])) fail(ErrorCode::Input, "potential sample is not finite");
        diag[i] = 2.0 * inv_h2 + q_nodes[i + 1];
    }
    return SymTridiagonal(std::move(diag), std::vector<double>(n - 1, -inv_h2));
}

enum class SchrodingerKind { H_ren, H_hol, H_hol_limit };

struct SpectrumResult {
    std::vector<double> eigenvalues;             // ascending
    std::vector<RealGridFunction> eigenvectors;  // h * sum |u_j|^2 = 1, zero at +-L
    std::vector<double> residuals;
    double gap = 0.0;                            // lambda_1 - lambda_0 in the operator's own units
    std::optional<double> gap_ren;               // gap / eps^2, i.e. in H_ren units (eps > 0 only)
    Grid grid;
    double epsilon = 0.0;
    SchrodingerKind kind = SchrodingerKind::H_hol;
};

namespace detail {

inline RealGridFunction embed_vector(const std::vector<double>& v, const Grid& grid) {
    std::vector<double> full(grid.size(), 0.0);
    std::copy(v.begin(), v.end(), full.begin() + 1);
    double ss = 0.0;
    for (double x : full) ss += x * x;
    const double scale = 1.0 / std::sqrt(grid.spacing() * ss);
    std::size_t arg = 0;
    for (std::size_t j = 0; j < full.size(); ++j) {
        if (std::abs(full[j]) > std::abs(full[arg])) arg = j;
    }
    const double sign = full[arg] < 0.0 ? -1.0 : 1.0;
    for (double& x : full) x *= sign * scale;
    return RealGridFunction(grid, std::move(full));
}

}  // namespace detail

inline SpectrumResult solve_schrodinger(const SymTridiagonal& t, const Grid& grid, std::size_t count,
                                        SchrodingerKind kind, double eps) {
    const Eigenpairs ep = lowest_eigenpairs(t, count);
    SpectrumResult r{ep.values, {}, ep.residuals, 0.0, std::nullopt, grid, eps, kind};
    for (const auto& v : ep.vectors) r.eigenvectors.push_back(detail::embed_vector(v, grid));
    if (count >= 2) r.gap = r.eigenvalues[1] - r.eigenvalues[0];
    return r;
}

/// Lowest eigenpairs of H_hol at real eps >= 0 (eps = 0 gives the Pöschl–Teller
/// limit). The gap in H_ren units follows from the dilation identity.
inline SpectrumResult spectral_gap(double eps, const ModelParams& params, const Grid& grid = default_hol_grid(),
                                   std::size_t count = 4) {
    if (count < 2) fail(ErrorCode::Domain, "spectral gap needs at least two eigenvalues");
    if (eps == 0.0) {
        return solve_schrodinger(discretize(q_hol_limit, grid), grid, count, SchrodingerKind::H_hol_limit, 0.0);
    }
    if (!(eps > 0.0)) fail(ErrorCode::Domain, "spectral gap requires real eps >= 0");
    const WaveData w = wave_data(Scale::real(eps), params);
    auto r = solve_schrodinger(discretize([&](double x) { return q_hol(x, w).real(); }, grid), grid, count,
                               SchrodingerKind::H_hol, eps);
    r.gap_ren = r.gap / (eps * eps);
    return r;
}

struct ScalingRow {
    std::size_t k;
    double lambda_ren;
    double lambda_hol;
    double abs_diff;  // |eps^2 lambda_ren - lambda_hol|
    double mismatch;  // abs_diff / |lambda_hol|
};

/// The translation eigenvalue (k = 0) sits near zero, so it is judged by the
/// absolute floor 1e-10 |lambda_1| instead of a relative mismatch.
struct ScalingReport {
    double epsilon;
    bool mapped;
    std::vector<ScalingRow> rows;
    double max_mismatch = 0.0;  // over k >= 1
    double floor = 0.0;
    bool ground_within_floor = false;

    [[nodiscard]] bool passes(double rel_tol = 1e-12) const { return ground_within_floor && max_mismatch <= rel_tol; }
};

/// Compares eps^2 sigma(H_ren) with sigma(H_hol). With `ren_grid` equal to the
/// eps-dilation of `hol_grid` the two matrices are eps^-2-proportional entry by
/// entry; any other ren grid is a diagnostic whose mismatch is discretization
/// error.
inline ScalingReport scaling_check(double eps, const ModelParams& params, const Grid& hol_grid,
                                   std::optional<Grid> ren_grid = std::nullopt, std::size_t count = 10) {
    const OperatorBundle b = assemble_bundle(Scale::real(eps), params);
    const Grid rg = ren_grid.value_or(hol_grid.dilated(eps));
    const bool mapped = rg.size() == hol_grid.size() && rg.half_width() == hol_grid.dilated(eps).half_width();

    std::vector<double> q_ren_nodes(rg.size());
    for (std::size_t j = 0; j < rg.size(); ++j) q_ren_nodes[j] = b.q_ren(rg.x(j));
    const SymTridiagonal t_ren = discretize_samples(q_ren_nodes, rg);

    SymTridiagonal t_hol;
    if (mapped) {
        std::vector<double> q_hol_nodes(q_ren_nodes.size());
        for (std::size_t j = 0; j < q_hol_nodes.size(); ++j) q_hol_nodes[j] = eps * eps * q_ren_nodes[j];
        t_hol = discretize_samples(q_hol_nodes, hol_grid);
    } else {
        t_hol = discretize([&](double y) { return b.q_hol_rescaled(y); }, hol_grid);
    }

    if (count < 2) fail(ErrorCode::Domain, "scaling check needs at least two eigenvalues");
    ScalingReport rep{eps, mapped, {}, 0.0, 0.0, false};
    std::vector<double> lr(count), lh(count);
    for (std::size_t k = 0; k < count; ++k) {
        lr[k] = kth_eigenvalue(t_ren, k);
        lh[k] = kth_eigenvalue(t_hol, k);
    }
    rep.floor = 1e-10 * std::abs(lh[1]);
    for (std::size_t k = 0; k < count; ++k) {
        const double d = std::abs(eps * eps * lr[k] - lh[k]);
        const double m = lh[k] != 0.0 ? d / std::abs(lh[k]) : (d == 0.0 ? 0.0 : INFINITY);
        rep.rows.push_back({k, lr[k], lh[k], d, m});
        if (k == 0) {
            rep.ground_within_floor = d <= rep.floor;
        } else {
            rep.max_mismatch = std::max(rep.max_mismatch, m);
        }
    }
    return rep;
}

struct KernelReport {
    double residual;   // ||H u|| / ||u|| over interior nodes
    double min_value;  // min_j u_j
    bool positive;
};

namespace detail {

template <class Potential>
KernelReport kernel_report(const RealGridFunction& u, Potential&& q) {
    const auto hu = apply_schrodinger(u, q);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 1; j + 1 < u.values.size(); ++j) {
        num += hu.values[j] * hu.values[j];
        den += u.values[j] * u.values[j];
    }
    const double mn = *std::min_element(u.values.begin(), u.values.end());
    return {std::sqrt(num / den), mn, mn > 0.0};
}

}  // namespace detail

/// Samples u = rho_eps Phi_ren' on an H_ren grid and reports how far it is
/// from the discrete kernel of H_ren. `ren_grid` is in the original variable.
inline KernelReport kernel_residual(double eps, const ModelParams& params, const Grid& ren_grid) {
    const OperatorBundle b = assemble_bundle(Scale::real(eps), params);
    const double s = b.speed();
    const auto u = RealGridFunction::sample(ren_grid, [&](double x) { return rho_eps(x, s) * phi_ren_d1(x, b.wave()); });
    return detail::kernel_report(u, [&](double x) { return b.q_ren(x); });
}

/// eps = 0 analogue: sech^2(sqrt6 x / 2) against -d^2 + 6 - 9 sech^2(sqrt6 x / 2).
inline KernelReport kernel_residual_limit(const Grid& hol_grid) {
    const auto u = RealGridFunction::sample(hol_grid, [](double x) {
        const double c = std::cosh(std::sqrt(6.0) * x / 2.0);
        return 1.0 / (c * c);
    });
    return detail::kernel_report(u, q_hol_limit);
}

/// Least-squares slope of log|v| over the nodes inside [xa, xb].
inline double decay_rate(const RealGridFunction& v, double xa, double xb) {
    const double L = v.grid.half_width();
    if (!(xa < xb)) fail(ErrorCode::Window, "decay window must satisfy xa < xb");
    if (xa < -L + 2.0 || xb > L - 2.0) fail(ErrorCode::Window, "decay window too close to the domain boundary");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t n = 0;
    for (std::size_t j = 0; j < v.grid.size(); ++j) {
        const double x = v.grid.x(j);
        if (x < xa || x > xb) continue;
        const double a = std::abs(v.values[j]);
        if (!(a > 1e3 * DBL_MIN)) fail(ErrorCode::Window, "eigenfunction underflows inside the decay window");
        const double y = std::log(a);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 3) fail(ErrorCode::Window, "decay window contains fewer than three nodes");
    const double dn = static_cast<double>(n);
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

/// Sign changes, ignoring entries below rel_threshold * max|v|.
inline int sign_changes(const RealGridFunction& v, double rel_threshold = 1e-8) {
    double mx = 0.0;
    for (double x : v.values) mx = std::max(mx, std::abs(x));
    int changes = 0;
    int last = 0;
    for (double x : v.values) {
        if (std::abs(x) <= rel_threshold * mx) continue;
        const int s = x > 0.0 ? 1 : -1;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

}  // namespace frontspec
