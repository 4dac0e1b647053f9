#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "frontspec/error.hpp"

namespace frontspec {

using cplx = std::complex<double>;

inline constexpr double kDefaultEpsMax = 0.5;

/// Fixed model scalars: cubic asymmetry alpha and the exponent of the
/// polynomial weight <x>^{-beta}.
struct ModelParams {
    double alpha = 0.25;
    double beta_weight = 4.0;

    void validate() const {
        if (!(alpha > 0.0 && alpha < 0.5)) {
            fail(ErrorCode::Domain, "alpha must lie in (0, 1/2), got " + std::to_string(alpha));
        }
        if (!(beta_weight > 2.0) || !std::isfinite(beta_weight)) {
            fail(ErrorCode::Domain, "beta_weight must exceed 2, got " + std::to_string(beta_weight));
        }
    }

    static ModelParams make(double alpha, double beta_weight = 4.0) {
        ModelParams p{alpha, beta_weight};
        p.validate();
        return p;
    }
};

/// The small parameter eps = C^{-1/2}, possibly complex.
///
/// Construction only requires 0 < |eps| < inf. Whether eps lies inside the
/// validity radius is a separate question (`within_validity`), checked by the
/// operations that need it.
class Scale {
public:
    explicit Scale(cplx epsilon, double eps_max = kDefaultEpsMax) : eps_(epsilon), eps_max_(eps_max) {
        if (!std::isfinite(eps_.real()) || !std::isfinite(eps_.imag()) || std::abs(eps_) == 0.0) {
            fail(ErrorCode::Domain, "epsilon must be finite and non-zero");
        }
        if (!(eps_max_ > 0.0)) {
            fail(ErrorCode::Domain, "eps_max must be positive");
        }
    }

    static Scale real(double epsilon, double eps_max = kDefaultEpsMax) {
        return Scale(cplx(epsilon, 0.0), eps_max);
    }

    static Scale polar(double radius, double angle, double eps_max = kDefaultEpsMax) {
        if (angle == 0.0) return real(radius, eps_max);
        return Scale(std::polar(radius, angle), eps_max);
    }

    [[nodiscard]] cplx value() const noexcept { return eps_; }
    [[nodiscard]] double modulus() const noexcept { return std::abs(eps_); }
    [[nodiscard]] double eps_max() const noexcept { return eps_max_; }
    [[nodiscard]] bool is_real_positive() const noexcept { return eps_.imag() == 0.0 && eps_.real() > 0.0; }
    [[nodiscard]] bool within_validity() const noexcept { return modulus() < eps_max_; }

    /// eps^{-2}, the renormalization constant when eps is real.
    [[nodiscard]] cplx inv_sq() const noexcept { return 1.0 / (eps_ * eps_); }

    [[nodiscard]] double real_value() const {
        if (!is_real_positive()) fail(ErrorCode::Domain, "operation requires real positive epsilon");
        return eps_.real();
    }

private:
    cplx eps_;
    double eps_max_;
};

inline Scale epsilon_from_renorm(double renorm_constant, double eps_max = kDefaultEpsMax) {
    if (!(renorm_constant > 0.0) || !std::isfinite(renorm_constant)) {
        fail(ErrorCode::Domain, "renormalization constant must be positive");
    }
    return Scale::real(1.0 / std::sqrt(renorm_constant), eps_max);
}

/// C = sigma^2 log(1/delta). The asymptotic relation is adopted as an exact
/// convention so that (delta, sigma) maps deterministically to eps.
inline double renorm_from_mollifier(double delta, double sigma) {
    if (!(delta > 0.0 && delta < 1.0)) fail(ErrorCode::Domain, "delta must lie in (0, 1)");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) fail(ErrorCode::Domain, "sigma must be positive");
    return sigma * sigma * -std::log(delta);
}

}  // namespace frontspec
