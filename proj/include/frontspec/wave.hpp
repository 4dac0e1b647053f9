#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "frontspec/core.hpp"
#include "frontspec/equilibria.hpp"

namespace frontspec {

inline constexpr double kPoleGuard = 1e-6;

namespace detail {

// Phi_hux has simple poles where exp(-z/sqrt2) = -1, i.e. z = i sqrt2 pi (2k+1).
inline void guard_pole(cplx z) {
    const double period = 2.0 * std::numbers::sqrt2 * std::numbers::pi;
    const double offset = std::numbers::sqrt2 * std::numbers::pi;
    const double k = std::round((z.imag() - offset) / period);
    const cplx pole(0.0, offset + k * period);
    if (std::abs(z - pole) < kPoleGuard) fail(ErrorCode::Pole, "Huxley profile evaluated at a pole");
}

}  // namespace detail

/// Phi_hux(z) = (1 + exp(-z/sqrt2))^{-1}, split at Re z = 0 so the
/// exponential never overflows.
inline cplx phi_hux(cplx z) {
    detail::guard_pole(z);
    const cplx w = z / std::numbers::sqrt2;
    if (z.real() >= 0.0) return 1.0 / (1.0 + std::exp(-w));
    const cplx e = std::exp(w);
    return e / (1.0 + e);
}

inline double phi_hux(double x) {
    const double w = x / std::numbers::sqrt2;
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-w));
    const double e = std::exp(w);
    return e / (1.0 + e);
}

/// Phi_hux' = Phi (1 - Phi) / sqrt2, with 1 - Phi(x) evaluated as Phi(-x).
inline double phi_hux_d1(double x) {
    return phi_hux(x) * phi_hux(-x) / std::numbers::sqrt2;
}

inline double phi_hux_d2(double x) {
    const double p = phi_hux(x);
    const double q = phi_hux(-x);
    return p * q * (q - p) / 2.0;
}

enum class SectorRegion { SigmaPlus, SigmaMinus, Outside };

struct SectorPoint {
    cplx z;
    SectorRegion region;

    static SectorPoint classify(cplx z) {
        if (std::abs(z.imag()) <= std::abs(z.real())) {
            return {z, z.real() >= 0.0 ? SectorRegion::SigmaPlus : SectorRegion::SigmaMinus};
        }
        return {z, SectorRegion::Outside};
    }
};

struct DecayCheck {
    double ratio;
    bool pass;
};

/// |Phi_hux(z) - limit| / exp(-|Re z|/sqrt2) on the two sectors, compared
/// against the explicit constant 2. The tail is formed in closed form
/// (Phi - 1 = -e^{-w}/(1+e^{-w})) so no cancellation occurs for large Re z.
inline DecayCheck phi_hux_decay_check(const SectorPoint& p) {
    if (p.region == SectorRegion::Outside) fail(ErrorCode::Domain, "point lies outside the sectors");
    detail::guard_pole(p.z);
    const cplx w = p.z / std::numbers::sqrt2;
    double ratio = 0.0;
    if (p.region == SectorRegion::SigmaPlus) {
        // |e^{-w}| / |1 + e^{-w}| divided by e^{-Re w}
        ratio = 1.0 / std::abs(1.0 + std::exp(-w));
    } else {
        ratio = 1.0 / std::abs(1.0 + std::exp(w));
    }
    return {ratio, ratio <= 2.0};
}

/// Deterministic sample of `count` points in a sector with |Re z| <= max_re.
/// Real parts are stratified, the slope Im/Re follows a golden-ratio sequence.
inline std::vector<SectorPoint> sector_sample(SectorRegion region, int count, double max_re = 50.0) {
    if (region == SectorRegion::Outside) fail(ErrorCode::Domain, "cannot sample outside the sectors");
    std::vector<SectorPoint> out;
    out.reserve(static_cast<std::size_t>(count));
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int k = 0; k < count; ++k) {
        const double re = max_re * (k + 0.5) / count;
        double frac = std::fmod(0.5 + golden * k, 1.0);
        const double slope = 2.0 * frac - 1.0;
        const double sign = region == SectorRegion::SigmaPlus ? 1.0 : -1.0;
        out.push_back(SectorPoint::classify(cplx(sign * re, slope * re)));
    }
    return out;
}

/// Renormalized wave data. All members are exact algebraic functions of the
/// equilibria; for real eps the imaginary parts vanish.
struct WaveData {
    cplx A_ren;
    cplx alpha_hux;
    cplx s_ren;
    Equilibria equilibria;
    ModelParams params;

    [[nodiscard]] bool is_real() const { return equilibria.epsilon.imag() == 0.0; }
    [[nodiscard]] double epsilon_real() const {
        if (!is_real()) fail(ErrorCode::Domain, "real-space profile requires real epsilon");
        return equilibria.epsilon.real();
    }
};

inline WaveData wave_data(const Scale& eps, const ModelParams& params) {
    const Equilibria eq = solve_equilibria(eps, params);
    const cplx amplitude = eq.z_plus - eq.z_minus;
    const cplx ahux = (eq.z_zero - eq.z_minus) / amplitude;
    const cplx speed = amplitude * std::numbers::sqrt2 * (ahux - 0.5);
    return {amplitude, ahux, speed, eq, params};
}

/// Phi_ren(x) = A_ren Phi_hux(A_ren x) + z-, real eps only.
inline double phi_ren(double x, const WaveData& w) {
    (void)w.epsilon_real();
    const double a = w.A_ren.real();
    return a * phi_hux(a * x) + w.equilibria.z_minus.real();
}

inline double phi_ren_d1(double x, const WaveData& w) {
    (void)w.epsilon_real();
    const double a = w.A_ren.real();
    return a * a * phi_hux_d1(a * x);
}

inline double phi_ren_d2(double x, const WaveData& w) {
    (void)w.epsilon_real();
    const double a = w.A_ren.real();
    return a * a * a * phi_hux_d2(a * x);
}

/// Phi_ren'' + s_ren Phi_ren' + f_ren(Phi_ren), zero in exact arithmetic.
inline double travelling_wave_residual(double x, const WaveData& w) {
    const double eps = w.epsilon_real();
    return phi_ren_d2(x, w) + w.s_ren.real() * phi_ren_d1(x, w) + eval_f_ren(phi_ren(x, w), eps, w.params);
}

/// eps = 0 limit of the rescaled profile: sqrt12 Phi_hux(sqrt12 x) - sqrt3 = sqrt3 tanh(sqrt6 x / 2).
inline double phi_hol_limit(double x) {
    return std::numbers::sqrt3 * std::tanh(std::sqrt(6.0) * x / 2.0);
}

inline void require_sector(const WaveData& w) {
    const cplx ea = w.equilibria.epsilon * w.A_ren;
    if (SectorPoint::classify(ea).region != SectorRegion::SigmaPlus) {
        fail(ErrorCode::Sector, "eps * A_ren lies outside the right sector");
    }
}

/// Phi_hol(x) = eps A_ren Phi_hux(eps A_ren x) + eps z-, the rescaled profile
/// that extends holomorphically to complex eps.
inline cplx phi_hol(double x, const WaveData& w) {
    require_sector(w);
    const cplx eps = w.equilibria.epsilon;
    const cplx ea = eps * w.A_ren;
    return ea * phi_hux(ea * x) + eps * w.equilibria.z_minus;
}

inline cplx phi_hol(double x, const Scale& eps, const ModelParams& params) {
    return phi_hol(x, wave_data(eps, params));
}

}  // namespace frontspec
