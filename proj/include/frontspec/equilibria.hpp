#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "frontspec/core.hpp"

namespace frontspec {

/// f_ren(u) = -u^3 + (1+alpha) u^2 + (3 eps^-2 - alpha) u - (1+alpha) eps^-2, in Horner form.
inline cplx eval_f_ren(cplx u, const Scale& eps, const ModelParams& params) {
    const cplx c = eps.inv_sq();
    const double a = params.alpha;
    return ((-u + (1.0 + a)) * u + (3.0 * c - a)) * u - (1.0 + a) * c;
}

inline cplx eval_f_ren_prime(cplx u, const Scale& eps, const ModelParams& params) {
    const cplx c = eps.inv_sq();
    const double a = params.alpha;
    return (-3.0 * u + 2.0 * (1.0 + a)) * u + (3.0 * c - a);
}

/// Real-argument overloads used on hot paths (real eps only).
inline double eval_f_ren(double u, double eps, const ModelParams& params) {
    const double c = 1.0 / (eps * eps);
    const double a = params.alpha;
    return ((-u + (1.0 + a)) * u + (3.0 * c - a)) * u - (1.0 + a) * c;
}

inline double eval_f_ren_prime(double u, double eps, const ModelParams& params) {
    const double c = 1.0 / (eps * eps);
    const double a = params.alpha;
    return (-3.0 * u + 2.0 * (1.0 + a)) * u + (3.0 * c - a);
}

/// y^3 + b1 y + b0 under y = -(z - (1+alpha)/3).
struct DepressedCubic {
    cplx b1;
    cplx b0;
    cplx discriminant;  // -4 b1^3 - 27 b0^2
};

inline DepressedCubic depressed_form(const Scale& eps, const ModelParams& params) {
    const double a = params.alpha;
    const cplx b1 = -3.0 * eps.inv_sq() + (3.0 * a - (1.0 + a) * (1.0 + a)) / 3.0;
    const double b0 = (2.0 * std::pow(1.0 + a, 3) - 9.0 * a * (1.0 + a)) / 27.0;
    return {b1, cplx(b0, 0.0), -4.0 * b1 * b1 * b1 - 27.0 * b0 * b0};
}

struct Equilibria {
    cplx z_minus;
    cplx z_zero;
    cplx z_plus;
    cplx epsilon;
    cplx discriminant;

    [[nodiscard]] std::array<cplx, 3> roots() const { return {z_minus, z_zero, z_plus}; }

    /// Relative residuals of the three Vieta identities
    /// (sum, pairwise sum, product) against their exact right-hand sides.
    [[nodiscard]] std::array<double, 3> vieta_residuals(double alpha) const {
        const cplx c = 1.0 / (epsilon * epsilon);
        const cplx s1 = z_minus + z_zero + z_plus;
        const cplx s2 = z_minus * z_zero + z_minus * z_plus + z_zero * z_plus;
        const cplx s3 = z_minus * z_zero * z_plus;
        const double m1 = std::abs(z_minus) + std::abs(z_zero) + std::abs(z_plus);
        const double m2 = std::abs(z_minus * z_zero) + std::abs(z_minus * z_plus) + std::abs(z_zero * z_plus);
        const double m3 = std::abs(s3);
        return {std::abs(s1 - (1.0 + alpha)) / std::max(1.0, m1),
                std::abs(s2 - (alpha - 3.0 * c)) / std::max(1.0, m2),
                std::abs(s3 + (1.0 + alpha) * c) / std::max(1.0, m3)};
    }
};

struct RootOptions {
    double tol_root = 1e-9;
    int max_iter = 50;
    double collision_factor = 1e-6;
};

namespace detail {

inline cplx newton_polish(cplx z, const Scale& eps, const ModelParams& params, const RootOptions& opt,
                          const char* branch) {
    for (int it = 0; it < opt.max_iter; ++it) {
        const cplx fz = eval_f_ren(z, eps, params);
        const cplx dfz = eval_f_ren_prime(z, eps, params);
        if (fz == 0.0) return z;
        if (dfz == 0.0) break;
        const cplx dz = fz / dfz;
        z -= dz;
        if (std::abs(dz) <= 1e-14 * std::max(1.0, std::abs(z))) {
            const double scale = std::max(1.0, std::pow(std::abs(z), 3));
            if (std::abs(eval_f_ren(z, eps, params)) <= opt.tol_root * scale) return z;
        }
    }
    const double scale = std::max(1.0, std::pow(std::abs(z), 3));
    if (std::abs(eval_f_ren(z, eps, params)) <= opt.tol_root * scale) return z;
    fail(ErrorCode::BranchTracking, std::string("Newton did not converge on branch ") + branch);
}

}  // namespace detail

/// Leading Laurent terms used as branch seeds: z0 ~ (1+alpha)/3, z± ~ ±sqrt(3)/eps + (1+alpha)/3.
inline std::array<cplx, 3> expansion_seeds(const Scale& eps, const ModelParams& params) {
    const double c0 = (1.0 + params.alpha) / 3.0;
    const cplx outer = std::numbers::sqrt3 / eps.value();
    return {-outer + c0, cplx(c0, 0.0), outer + c0};
}

/// The three roots of f_ren, labeled (z-, z0, z+).
///
/// Real positive eps: trigonometric solution of the depressed cubic, Newton
/// polish, ascending order; refused when the discriminant is not positive.
/// Complex eps: each branch is seeded from its expansion and Newton-polished,
/// so labels follow the holomorphic branches.
inline Equilibria solve_equilibria(const Scale& eps, const ModelParams& params, const RootOptions& opt = {}) {
    params.validate();
    if (!eps.within_validity()) {
        fail(ErrorCode::Domain, "|epsilon| = " + std::to_string(eps.modulus()) + " outside validity radius " +
                                    std::to_string(eps.eps_max()));
    }
    if (eps.value().imag() == 0.0 && eps.value().real() < 0.0) {
        fail(ErrorCode::Domain, "real negative epsilon is not supported");
    }
    const DepressedCubic dc = depressed_form(eps, params);
    const double shift = (1.0 + params.alpha) / 3.0;
    std::array<cplx, 3> z{};

    if (eps.is_real_positive()) {
        if (!(dc.discriminant.real() > 0.0)) {
            fail(ErrorCode::Degeneracy, "discriminant is not positive; three real roots cannot be labeled");
        }
        const double b1 = dc.b1.real();
        const double b0 = dc.b0.real();
        const double m = 2.0 * std::sqrt(-b1 / 3.0);
        const double arg = std::clamp(3.0 * b0 / (b1 * m), -1.0, 1.0);
        const double theta = std::acos(arg) / 3.0;
        std::array<double, 3> real_roots{};
        for (int k = 0; k < 3; ++k) {
            const double y = m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0);
            real_roots[k] = shift - y;
        }
        std::sort(real_roots.begin(), real_roots.end());
        const char* names[3] = {"z-", "z0", "z+"};
        for (int k = 0; k < 3; ++k) {
            z[k] = cplx(detail::newton_polish(cplx(real_roots[k], 0.0), eps, params, opt, names[k]).real(), 0.0);
        }
        if (!(z[0].real() < z[1].real() && z[1].real() < z[2].real())) {
            fail(ErrorCode::Degeneracy, "roots are not strictly ordered");
        }
    } else {
        const auto seeds = expansion_seeds(eps, params);
        z[0] = detail::newton_polish(seeds[0], eps, params, opt, "z-");
        z[1] = detail::newton_polish(seeds[1], eps, params, opt, "z0");
        z[2] = detail::newton_polish(seeds[2], eps, params, opt, "z+");
    }

    const double collision_tol = opt.collision_factor * std::abs(z[2] - z[0]);
    if (std::abs(z[0] - z[1]) < collision_tol || std::abs(z[1] - z[2]) < collision_tol ||
        std::abs(z[0] - z[2]) < collision_tol) {
        fail(ErrorCode::Degeneracy, "root branches collided");
    }
    return {z[0], z[1], z[2], eps.value(), dc.discriminant};
}

struct ExpansionResiduals {
    double zero;   // |z0 - (1+alpha)/3|
    double minus;  // |z- + sqrt(3)/eps - (1+alpha)/3|
    double plus;   // |z+ - sqrt(3)/eps - (1+alpha)/3|
};

inline ExpansionResiduals expansion_residuals(const Scale& eps, const ModelParams& params) {
    const Equilibria eq = solve_equilibria(eps, params);
    const auto seeds = expansion_seeds(eps, params);
    return {std::abs(eq.z_zero - seeds[1]), std::abs(eq.z_minus - seeds[0]), std::abs(eq.z_plus - seeds[2])};
}

/// Dynamic validity report: eps_0 is never quantified, so each (alpha, eps)
/// is checked rather than assumed.
struct ValidityReport {
    bool roots_found = false;
    bool discriminant_positive = false;  // only meaningful for real eps
    bool ordered = false;                // only meaningful for real eps
    double max_vieta_residual = 0.0;
    std::string reason;

    [[nodiscard]] bool ok(double tol = 1e-9) const { return roots_found && max_vieta_residual <= tol; }
};

inline ValidityReport check_validity(const Scale& eps, const ModelParams& params) {
    ValidityReport r;
    try {
        const Equilibria eq = solve_equilibria(eps, params);
        r.roots_found = true;
        r.discriminant_positive = eq.discriminant.real() > 0.0 && eq.discriminant.imag() == 0.0;
        r.ordered = eps.is_real_positive() && eq.z_minus.real() < eq.z_zero.real() &&
                    eq.z_zero.real() < eq.z_plus.real();
        const auto v = eq.vieta_residuals(params.alpha);
        r.max_vieta_residual = std::max({v[0], v[1], v[2]});
    } catch (const Error& e) {
        r.reason = e.what();
    }
    return r;
}

}  // namespace frontspec
