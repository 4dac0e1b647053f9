#pragma once

#include <cmath>
#include <cstddef>

namespace oracle {

/// Exact eigenvalues of the n x n matrix tridiag(-1, 2, -1) / h^2.
inline double discrete_dirichlet_eigenvalue(std::size_t n, double h, std::size_t k) {
    const double s = std::sin(static_cast<double>(k + 1) * M_PI / (2.0 * static_cast<double>(n + 1)));
    return 4.0 * s * s / (h * h);
}

/// Continuum Dirichlet Laplacian on [-L, L].
inline double continuum_dirichlet_eigenvalue(double L, std::size_t k) {
    const double m = static_cast<double>(k + 1) * M_PI / (2.0 * L);
    return m * m;
}

}  // namespace oracle
