#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "frontspec/error.hpp"

namespace frontspec {

/// Uniform grid on [-L, L] with an odd node count, so that the middle node is
/// exactly x = 0.
class Grid {
public:
    static constexpr std::size_t kMinNodes = 101;

    Grid(double half_width, std::size_t nodes) : L_(half_width), N_(nodes) {
        if (!(half_width > 0.0)) fail(ErrorCode::Domain, "grid half-width must be positive");
        if (nodes < kMinNodes || nodes % 2 == 0) {
            fail(ErrorCode::Domain, "grid node count must be odd and >= 101, got " + std::to_string(nodes));
        }
        h_ = 2.0 * L_ / static_cast<double>(N_ - 1);
    }

    [[nodiscard]] double half_width() const noexcept { return L_; }
    [[nodiscard]] std::size_t size() const noexcept { return N_; }
    [[nodiscard]] double spacing() const noexcept { return h_; }
    [[nodiscard]] std::size_t mid() const noexcept { return (N_ - 1) / 2; }

    [[nodiscard]] double x(std::size_t j) const noexcept {
        // Symmetric about the midpoint so that x(mid) == 0 and x(N-1-j) == -x(j) exactly.
        const auto m = static_cast<std::ptrdiff_t>(mid());
        return static_cast<double>(static_cast<std::ptrdiff_t>(j) - m) * h_;
    }

    [[nodiscard]] std::vector<double> nodes() const {
        std::vector<double> xs(N_);
        for (std::size_t j = 0; j < N_; ++j) xs[j] = x(j);
        return xs;
    }

    /// Same node count on [-factor L, factor L]; node j maps to factor * x(j).
    [[nodiscard]] Grid dilated(double factor) const { return Grid(factor * L_, N_); }

    /// Node count 2N - 1: spacing exactly halved, old nodes retained.
    [[nodiscard]] Grid refined() const { return Grid(L_, 2 * N_ - 1); }

private:
    double L_;
    std::size_t N_;
    double h_ = 0.0;
};

template <class T>
struct BasicGridFunction {
    Grid grid;
    std::vector<T> values;

    BasicGridFunction(Grid g, std::vector<T> v) : grid(g), values(std::move(v)) {
        if (values.size() != grid.size()) fail(ErrorCode::Domain, "grid function length does not match grid");
    }

    template <class F>
    static BasicGridFunction sample(const Grid& g, F&& f) {
        std::vector<T> v(g.size());
        for (std::size_t j = 0; j < g.size(); ++j) v[j] = static_cast<T>(f(g.x(j)));
        return BasicGridFunction(g, std::move(v));
    }

    /// Nodes 1..N-2; operator images are only defined there.
    [[nodiscard]] std::span<const T> interior() const { return std::span<const T>(values).subspan(1, values.size() - 2); }
};

using GridFunction = BasicGridFunction<std::complex<double>>;
using RealGridFunction = BasicGridFunction<double>;

}  // namespace frontspec
