#pragma once

#include <cmath>

namespace oracle {

// -d^2 + 6 - 9 sech^2(k x), k = sqrt6 / 2: depth parameter l = 2 (l(l+1) k^2 = 9).
inline constexpr double kPtLevels[2] = {0.0, 4.5};  // 6 - k^2 (2 - n)^2

inline double pt_kappa() { return std::sqrt(6.0) / 2.0; }

inline double pt_ground(double x) {
    const double c = std::cosh(pt_kappa() * x);
    return 1.0 / (c * c);
}

inline double pt_excited(double x) { return std::tanh(pt_kappa() * x) / std::cosh(pt_kappa() * x); }

inline double pt_ground_decay() { return 2.0 * pt_kappa(); }
inline double pt_excited_decay() { return std::sqrt(6.0 - 4.5); }

}  // namespace oracle
