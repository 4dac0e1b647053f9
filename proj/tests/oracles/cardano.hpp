#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

namespace oracle {

/// Cardano's formula on the monic cubic u^3 + p2 u^2 + p1 u + p0 for the
/// renormalized nonlinearity, with real eps. Three real roots, ascending.
inline std::array<double, 3> cardano_roots(double alpha, double eps) {
    using C = std::complex<double>;
    const double c = 1.0 / (eps * eps);
    const double p2 = -(1.0 + alpha);
    const double p1 = -(3.0 * c - alpha);
    const double p0 = (1.0 + alpha) * c;
    const double p = p1 - p2 * p2 / 3.0;
    const double q = 2.0 * p2 * p2 * p2 / 27.0 - p2 * p1 / 3.0 + p0;
    const C disc = C(q * q / 4.0 + p * p * p / 27.0, 0.0);
    const C u = std::pow(-q / 2.0 + std::sqrt(disc), 1.0 / 3.0);
    const C omega = std::polar(1.0, 2.0 * M_PI / 3.0);
    std::array<double, 3> r{};
    for (int k = 0; k < 3; ++k) {
        const C uk = u * std::pow(omega, k);
        r[k] = (uk - p / (3.0 * uk)).real() - p2 / 3.0;
    }
    std::sort(r.begin(), r.end());
    return r;
}

}  // namespace oracle
