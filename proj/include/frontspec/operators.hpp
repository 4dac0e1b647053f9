#pragma once

#include <cmath>
#include <complex>
#include <utility>

#include "frontspec/core.hpp"
#include "frontspec/equilibria.hpp"
#include "frontspec/grid.hpp"
#include "frontspec/wave.hpp"

namespace frontspec {

/// w_beta(x) = (1 + x^2)^{-beta/2}
inline double weight_w(double x, double beta) {
    return std::pow(1.0 + x * x, -0.5 * beta);
}

/// rho(x) = exp(s x / 2). For L_ren = d^2 + s d + f'(Phi_ren) this is the
/// multiplier with rho Phi_ren' in the kernel of H_ren.
inline double rho_eps(double x, double s) {
    return std::exp(0.5 * s * x);
}

/// Coefficients of L_ren, its weight conjugate M_ren = T L_ren T^{-1}
/// (T = multiplication by w_beta^{1/2}) and the Schroedinger potential of
/// H_ren. Real eps only; asymptotic limits come from the equilibria.
class OperatorBundle {
public:
    OperatorBundle(WaveData wave, ModelParams params) : wave_(std::move(wave)), params_(params) {
        eps_ = wave_.epsilon_real();
        s_ = wave_.s_ren.real();
        a0_minus_ = eval_f_ren_prime(wave_.equilibria.z_minus.real(), eps_, params_);
        a0_plus_ = eval_f_ren_prime(wave_.equilibria.z_plus.real(), eps_, params_);
    }

    [[nodiscard]] const WaveData& wave() const noexcept { return wave_; }
    [[nodiscard]] const ModelParams& params() const noexcept { return params_; }
    [[nodiscard]] double epsilon() const noexcept { return eps_; }
    [[nodiscard]] double speed() const noexcept { return s_; }

    /// f'_ren(Phi_ren(x)), the zeroth-order coefficient of L_ren.
    [[nodiscard]] double linearized_reaction(double x) const {
        return eval_f_ren_prime(phi_ren(x, wave_), eps_, params_);
    }

    [[nodiscard]] double a1(double x) const {
        return s_ + params_.beta_weight * x / (1.0 + x * x);
    }

    [[nodiscard]] double a0(double x) const {
        const double b = params_.beta_weight;
        const double r = 1.0 + x * x;
        return s_ * b * x / (2.0 * r) + ((b * b - 2.0 * b) * x * x + 2.0 * b) / (4.0 * r * r) +
               linearized_reaction(x);
    }

    /// (a1-, a1+); the weight contribution vanishes at both ends.
    [[nodiscard]] std::pair<double, double> a1_limits() const noexcept { return {s_, s_}; }

    /// (a0-, a0+) = (f'_ren(z-), f'_ren(z+)).
    [[nodiscard]] std::pair<double, double> a0_limits() const noexcept { return {a0_minus_, a0_plus_}; }

    [[nodiscard]] double q_ren(double x) const {
        return -linearized_reaction(x) + 0.25 * s_ * s_;
    }

    /// eps^2 Q_ren(eps x): the rescaled potential in its defining form.
    [[nodiscard]] double q_hol_rescaled(double x) const {
        return eps_ * eps_ * q_ren(eps_ * x);
    }

private:
    WaveData wave_;
    ModelParams params_;
    double eps_ = 0.0;
    double s_ = 0.0;
    double a0_minus_ = 0.0;
    double a0_plus_ = 0.0;
};

inline OperatorBundle assemble_bundle(const WaveData& wave, const ModelParams& params) {
    return OperatorBundle(wave, params);
}

inline OperatorBundle assemble_bundle(const Scale& eps, const ModelParams& params) {
    if (!eps.is_real_positive()) fail(ErrorCode::Domain, "operator bundle requires real positive epsilon");
    return OperatorBundle(wave_data(eps, params), params);
}

/// Q_hol = 3 Phi_hol^2 - 2 eps (1+alpha) Phi_hol - (3 - eps^2 alpha) + (eps s_ren)^2 / 4.
/// This polynomial form is the one that extends to complex eps.
inline cplx q_hol(double x, const WaveData& w) {
    const cplx eps = w.equilibria.epsilon;
    const double a = w.params.alpha;
    const cplx p = phi_hol(x, w);
    const cplx es = eps * w.s_ren;
    return 3.0 * p * p - 2.0 * eps * (1.0 + a) * p - (3.0 - eps * eps * a) + 0.25 * es * es;
}

inline cplx q_hol(double x, const Scale& eps, const ModelParams& params) {
    return q_hol(x, wave_data(eps, params));
}

/// Pöschl–Teller limit 6 - 9 sech^2(sqrt6 x / 2) = 3 (Phi_hol^0)^2 - 3.
inline double q_hol_limit(double x) {
    const double c = std::cosh(std::sqrt(6.0) * x / 2.0);
    return 6.0 - 9.0 / (c * c);
}

enum class OperatorKind { L_ren, M_ren, H_ren, H_hol };

namespace detail {

// Central second-order differences on interior nodes; boundary entries are zero.
template <class T, class Coef>
BasicGridFunction<T> apply_second_order(const BasicGridFunction<T>& u, double c2, Coef&& coef) {
    const std::size_t n = u.values.size();
    if (n < 5) fail(ErrorCode::Domain, "grid too small for operator application");
    const double h = u.grid.spacing();
    std::vector<T> out(n, T{});
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const T d2 = (u.values[j + 1] - 2.0 * u.values[j] + u.values[j - 1]) / (h * h);
        const T d1 = (u.values[j + 1] - u.values[j - 1]) / (2.0 * h);
        const auto [c1, c0] = coef(u.grid.x(j));
        out[j] = c2 * d2 + c1 * d1 + c0 * u.values[j];
    }
    return BasicGridFunction<T>(u.grid, std::move(out));
}

}  // namespace detail

/// Applies L_ren, M_ren, H_ren or H_hol to a sampled function. H_hol uses the
/// bundle's eps; the grid is taken in the operator's own variable.
template <class T>
BasicGridFunction<T> apply_operator(OperatorKind kind, const BasicGridFunction<T>& u, const OperatorBundle& b) {
    switch (kind) {
        case OperatorKind::L_ren:
            return detail::apply_second_order(u, 1.0, [&](double x) {
                return std::pair{b.speed(), b.linearized_reaction(x)};
            });
        case OperatorKind::M_ren:
            return detail::apply_second_order(u, 1.0, [&](double x) { return std::pair{b.a1(x), b.a0(x)}; });
        case OperatorKind::H_ren:
            return detail::apply_second_order(u, -1.0, [&](double x) { return std::pair{0.0, b.q_ren(x)}; });
        case OperatorKind::H_hol:
            return detail::apply_second_order(u, -1.0, [&](double x) {
                return std::pair{0.0, q_hol(x, b.wave()).real()};
            });
    }
    fail(ErrorCode::Domain, "unknown operator kind");
}

/// -u'' + Q u for an arbitrary potential, e.g. the eps = 0 limit.
template <class T, class Potential>
BasicGridFunction<T> apply_schrodinger(const BasicGridFunction<T>& u, Potential&& q) {
    return detail::apply_second_order(u, -1.0, [&](double x) { return std::pair{0.0, q(x)}; });
}

}  // namespace frontspec
