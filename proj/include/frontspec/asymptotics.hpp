#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frontspec/core.hpp"
#include "frontspec/grid.hpp"
#include "frontspec/operators.hpp"
#include "frontspec/parallel.hpp"
#include "frontspec/spectra.hpp"
#include "frontspec/wave.hpp"

namespace frontspec {

/// value ~ exp(log_constant) * eps^exponent
struct PowerFit {
    double exponent = 0.0;
    double log_constant = 0.0;
    double r_squared = 0.0;

    [[nodiscard]] bool well_fitted(double min_r2 = 0.98) const { return r_squared >= min_r2; }
};

/// Least squares on (log eps, log value).
inline PowerFit power_fit(const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.size() < 3) fail(ErrorCode::Domain, "power fit needs at least three points");
    double sx = 0.0, sy = 0.0;
    for (const auto& [e, v] : pairs) {
        if (!(e > 0.0) || !(v > 0.0)) fail(ErrorCode::Domain, "power fit needs positive abscissae and values");
        sx += std::log(e);
        sy += std::log(v);
    }
    const double n = static_cast<double>(pairs.size());
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [e, v] : pairs) {
        const double dx = std::log(e) - mx;
        const double dy = std::log(v) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) fail(ErrorCode::Domain, "power fit needs distinct abscissae");
    PowerFit f;
    f.exponent = sxy / sxx;
    f.log_constant = my - f.exponent * mx;
    f.r_squared = syy == 0.0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
    return f;
}

/// Observed order from the two finest (step, error) pairs:
/// log(e_coarse / e_fine) / log(h_coarse / h_fine). With halving, log2 of the ratio.
inline double convergence_order(std::vector<std::pair<double, double>> values) {
    if (values.size() < 2) fail(ErrorCode::Domain, "convergence order needs at least two pairs");
    std::sort(values.begin(), values.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    const auto& [hc, ec] = values[values.size() - 2];
    const auto& [hf, ef] = values.back();
    if (!(ec > 0.0) || !(ef > 0.0) || !(hc > hf)) fail(ErrorCode::Domain, "convergence order needs positive errors");
    return std::log(ec / ef) / std::log(hc / hf);
}

/// One row of an eps sweep: named real quantities, NaN rejected.
class SweepRow {
public:
    explicit SweepRow(cplx epsilon) : epsilon_(epsilon) {}

    void set(const std::string& name, double value) {
        if (std::isnan(value)) fail(ErrorCode::Numeric, "NaN in sweep quantity '" + name + "'");
        quantities_[name] = value;
    }

    [[nodiscard]] double get(const std::string& name) const {
        const auto it = quantities_.find(name);
        if (it == quantities_.end()) fail(ErrorCode::Domain, "missing sweep quantity '" + name + "'");
        return it->second;
    }

    [[nodiscard]] cplx epsilon() const noexcept { return epsilon_; }
    [[nodiscard]] const std::map<std::string, double>& quantities() const noexcept { return quantities_; }

private:
    cplx epsilon_;
    std::map<std::string, double> quantities_;
};

struct HolomorphyCell {
    double radius = 0.0;
    double angle = 0.0;
    cplx epsilon;
    double phi_error = 0.0;  // sup |Phi_hol - Phi_hol^0 - eps (1+alpha)/3|
    double q_error = 0.0;    // sup |Q_hol - Q_hol^0|
    bool skipped = false;
    std::string reason;
};

struct AngleFit {
    double angle = 0.0;
    std::optional<PowerFit> phi_fit;
    std::optional<PowerFit> q_fit;
    bool monotone = false;  // both errors decrease as the radius shrinks
};

struct HolomorphyTable {
    std::vector<HolomorphyCell> cells;  // angle-major, radii in the given order
    std::vector<AngleFit> fits;
};

inline HolomorphyCell holomorphy_cell(double radius, double angle, const ModelParams& params, const Grid& grid) {
    HolomorphyCell c;
    c.radius = radius;
    c.angle = angle;
    try {
        const Scale eps = Scale::polar(radius, angle);
        c.epsilon = eps.value();
        const WaveData w = wave_data(eps, params);
        const cplx shift = eps.value() * (1.0 + params.alpha) / 3.0;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const double x = grid.x(j);
            c.phi_error = std::max(c.phi_error, std::abs(phi_hol(x, w) - phi_hol_limit(x) - shift));
            c.q_error = std::max(c.q_error, std::abs(q_hol(x, w) - q_hol_limit(x)));
        }
    } catch (const Error& e) {
        c.skipped = true;
        c.reason = e.what();
    }
    return c;
}

/// Sup-norm discrepancies of the holomorphic extensions on eps = r e^{i theta},
/// with a power fit in r per angle. Cells whose eps leaves the admissible set
/// are kept as skipped rows.
inline HolomorphyTable holomorphy_check(const std::vector<double>& radii, const std::vector<double>& angles,
                                        const ModelParams& params, const Grid& grid = default_hol_grid(),
                                        unsigned workers = 1) {
    std::vector<std::pair<double, double>> jobs;
    for (double a : angles) {
        for (double r : radii) jobs.emplace_back(r, a);
    }
    HolomorphyTable table;
    table.cells = parallel_map(jobs, [&](const std::pair<double, double>& job) {
        return holomorphy_cell(job.first, job.second, params, grid);
    }, workers);

    for (std::size_t ai = 0; ai < angles.size(); ++ai) {
        AngleFit fit;
        fit.angle = angles[ai];
        std::vector<std::pair<double, double>> phi_pts, q_pts;
        std::vector<const HolomorphyCell*> ok;
        for (std::size_t ri = 0; ri < radii.size(); ++ri) {
            const auto& c = table.cells[ai * radii.size() + ri];
            if (c.skipped) continue;
            ok.push_back(&c);
            phi_pts.emplace_back(c.radius, c.phi_error);
            q_pts.emplace_back(c.radius, c.q_error);
        }
        if (phi_pts.size() >= 3) {
            fit.phi_fit = power_fit(phi_pts);
            fit.q_fit = power_fit(q_pts);
        }
        std::sort(ok.begin(), ok.end(), [](auto* a, auto* b) { return a->radius > b->radius; });
        fit.monotone = ok.size() >= 2;
        for (std::size_t i = 1; i < ok.size(); ++i) {
            if (!(ok[i]->phi_error < ok[i - 1]->phi_error && ok[i]->q_error < ok[i - 1]->q_error)) {
                fit.monotone = false;
            }
        }
        table.fits.push_back(fit);
    }
    return table;
}

}  // namespace frontspec
