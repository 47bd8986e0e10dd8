#pragma once

#include <cmath>
#include <numbers>
#include <variant>
#include <vector>

#include "wavefunction.hpp"

namespace pathint {

/// Product Gaussian (pi sigma^2)^{-n/4} exp(-|x-c|^2/(2 sigma^2) + i p.(x-c)/hbar).
struct GaussianPacket {
    double sigma = 1.0;
    Point center;
    Point momentum;
};

/// 1-D indicator of [lower, upper] scaled by height; discontinuous at both edges.
struct BoxState {
    double lower = -1.0;
    double upper = 1.0;
    double height = 1.0;
};

/// Samples given directly on the run grid.
struct TabulatedState {
    std::vector<Complex> values;
    std::vector<Point> singular_points;
};

/// Builtin initial/final state description.
class StateSpec {
public:
    using Kind = std::variant<GaussianPacket, BoxState, TabulatedState>;

    StateSpec() = default;
    explicit StateSpec(Kind kind, bool conjugated = false)
        : kind_(std::move(kind)), conjugated_(conjugated) {}

    static StateSpec gaussian(double sigma, Point center, Point momentum = {}) {
        if (momentum.empty()) momentum.assign(center.size(), 0.0);
        return StateSpec(GaussianPacket{sigma, std::move(center), std::move(momentum)});
    }

    const Kind& kind() const { return kind_; }
    bool conjugated() const { return conjugated_; }
    StateSpec conjugate() const { return StateSpec(kind_, !conjugated_); }

    const GaussianPacket* as_gaussian() const { return std::get_if<GaussianPacket>(&kind_); }

    std::vector<Point> singular_points() const {
        if (const auto* b = std::get_if<BoxState>(&kind_)) return {Point{b->lower}, Point{b->upper}};
        if (const auto* t = std::get_if<TabulatedState>(&kind_)) return t->singular_points;
        return {};
    }

    Wavefunction sample(const GridSpec& grid, double hbar) const {
        Wavefunction psi = std::visit(
            [&](const auto& v) -> Wavefunction {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, GaussianPacket>) {
                    return sample_gaussian(grid, v, hbar);
                } else if constexpr (std::is_same_v<T, BoxState>) {
                    if (grid.dim() != 1) throw DomainError("box state is one-dimensional");
                    return sample_function(
                        grid,
                        [&](const Point& x) {
                            return (x[0] > v.lower && x[0] < v.upper) ? Complex(v.height) : Complex{};
                        },
                        singular_points());
                } else {
                    if (v.values.size() != grid.size())
                        throw DomainError("tabulated state has " + std::to_string(v.values.size()) +
                                          " samples, grid has " + std::to_string(grid.size()));
                    std::vector<Complex> vals = v.values;
                    for (std::size_t i = 0; i < vals.size(); ++i)
                        if (near_any(grid.point(i), v.singular_points)) vals[i] = Complex{};
                    return Wavefunction(grid, std::move(vals), v.singular_points);
                }
            },
            kind_);
        return conjugated_ ? pathint::conjugate(psi) : psi;
    }

private:
    static Wavefunction sample_gaussian(const GridSpec& grid, const GaussianPacket& g, double hbar) {
        if (!(g.sigma > 0.0)) throw DomainError("gaussian width must be positive");
        if (g.center.size() != grid.dim() || g.momentum.size() != grid.dim())
            throw DomainError("gaussian center/momentum dimension differs from grid");
        const double n = static_cast<double>(grid.dim());
        const double norm = std::pow(std::numbers::pi * g.sigma * g.sigma, -0.25 * n);
        return sample_function(grid, [&](const Point& x) {
            double re = 0.0, im = 0.0;
            for (std::size_t a = 0; a < x.size(); ++a) {
                const double d = x[a] - g.center[a];
                re -= d * d / (2.0 * g.sigma * g.sigma);
                im += g.momentum[a] * d / hbar;
            }
            return norm * std::exp(Complex(re, im));
        });
    }

    Kind kind_ = GaussianPacket{1.0, {0.0}, {0.0}};
    bool conjugated_ = false;
};

}  // namespace pathint
