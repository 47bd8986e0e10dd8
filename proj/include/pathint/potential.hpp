#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "wavefunction.hpp"

namespace pathint {

struct ZeroPotential {};

/// V = m omega^2 |x|^2 / 2
struct HarmonicPotential {
    double omega = 1.0;
    double mass = 1.0;
};

/// 1-D step: 0 left of the edge, height right of it.
struct StepPotential {
    double height = 1.0;
    double edge = 0.0;
};

/// V = strength / |x - center|
struct InverseDistancePotential {
    double strength = 1.0;
    Point center;
};

/// 1-D piecewise-linear interpolation of (nodes, values), clamped outside the node range.
struct TabulatedPotential {
    std::vector<double> nodes;
    std::vector<double> values;
    std::vector<Point> singular_points;
};

/// A real potential together with its finite singular/discontinuous set K.
class PotentialSpec {
public:
    using Kind = std::variant<ZeroPotential, HarmonicPotential, StepPotential,
                              InverseDistancePotential, TabulatedPotential>;

    PotentialSpec() = default;
    explicit PotentialSpec(Kind kind) : kind_(std::move(kind)) { validate(); }

    static PotentialSpec zero() { return PotentialSpec(ZeroPotential{}); }
    static PotentialSpec harmonic(double omega, double mass = 1.0) {
        return PotentialSpec(HarmonicPotential{omega, mass});
    }
    static PotentialSpec step(double height, double edge) {
        return PotentialSpec(StepPotential{height, edge});
    }
    static PotentialSpec inverse_distance(double strength, Point center) {
        return PotentialSpec(InverseDistancePotential{strength, std::move(center)});
    }
    static PotentialSpec tabulated(std::vector<double> nodes, std::vector<double> values,
                                   std::vector<Point> singular_points = {}) {
        return PotentialSpec(
            TabulatedPotential{std::move(nodes), std::move(values), std::move(singular_points)});
    }
    static PotentialSpec constant(double c) { return tabulated({0.0}, {c}); }

    const Kind& kind() const { return kind_; }
    bool is_zero() const { return std::holds_alternative<ZeroPotential>(kind_); }

    std::string name() const {
        return std::visit(
            [](const auto& v) -> std::string {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, ZeroPotential>) return "zero";
                else if constexpr (std::is_same_v<T, HarmonicPotential>) return "harmonic";
                else if constexpr (std::is_same_v<T, StepPotential>) return "step";
                else if constexpr (std::is_same_v<T, InverseDistancePotential>) return "inverse_distance";
                else return "tabulated";
            },
            kind_);
    }

    std::vector<Point> singular_points() const {
        return std::visit(
            [](const auto& v) -> std::vector<Point> {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, StepPotential>) return {Point{v.edge}};
                else if constexpr (std::is_same_v<T, InverseDistancePotential>) return {v.center};
                else if constexpr (std::is_same_v<T, TabulatedPotential>) return v.singular_points;
                else return {};
            },
            kind_);
    }

    bool is_singular_at(const Point& x) const { return near_any(x, singular_points()); }

    /// Finite value at any point outside K; DomainError on K.
    double operator()(const Point& x) const {
        if (is_singular_at(x))
            throw DomainError("potential '" + name() + "' is singular at " + format_point(x));
        return std::visit(
            [&](const auto& v) -> double {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, ZeroPotential>) {
                    return 0.0;
                } else if constexpr (std::is_same_v<T, HarmonicPotential>) {
                    double r2 = 0.0;
                    for (double xi : x) r2 += xi * xi;
                    return 0.5 * v.mass * v.omega * v.omega * r2;
                } else if constexpr (std::is_same_v<T, StepPotential>) {
                    require_dim(x, 1);
                    return x[0] > v.edge ? v.height : 0.0;
                } else if constexpr (std::is_same_v<T, InverseDistancePotential>) {
                    require_dim(x, v.center.size());
                    double r2 = 0.0;
                    for (std::size_t a = 0; a < x.size(); ++a) r2 += (x[a] - v.center[a]) * (x[a] - v.center[a]);
                    return v.strength / std::sqrt(r2);
                } else {
                    require_dim(x, 1);
                    return interpolate(v, x[0]);
                }
            },
            kind_);
    }

private:
    static void require_dim(const Point& x, std::size_t n) {
        if (x.size() != n)
            throw DomainError("potential expects " + std::to_string(n) + "-dimensional points");
    }

    static double interpolate(const TabulatedPotential& tab, double x) {
        const auto& xs = tab.nodes;
        if (x <= xs.front()) return tab.values.front();
        if (x >= xs.back()) return tab.values.back();
        const auto it = std::upper_bound(xs.begin(), xs.end(), x);
        const std::size_t j = static_cast<std::size_t>(it - xs.begin());
        const double s = (x - xs[j - 1]) / (xs[j] - xs[j - 1]);
        return (1.0 - s) * tab.values[j - 1] + s * tab.values[j];
    }

    void validate() const {
        std::visit(
            [](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, HarmonicPotential>) {
                    if (!std::isfinite(v.omega) || !(v.mass > 0.0))
                        throw DomainError("harmonic potential needs finite omega and positive mass");
                } else if constexpr (std::is_same_v<T, StepPotential>) {
                    if (!std::isfinite(v.height) || !std::isfinite(v.edge))
                        throw DomainError("step potential parameters must be finite");
                } else if constexpr (std::is_same_v<T, InverseDistancePotential>) {
                    if (v.center.empty() || !std::isfinite(v.strength))
                        throw DomainError("inverse-distance potential needs a center and finite strength");
                } else if constexpr (std::is_same_v<T, TabulatedPotential>) {
                    if (v.nodes.empty() || v.nodes.size() != v.values.size())
                        throw DomainError("tabulated potential needs matching, non-empty nodes and values");
                    if (!std::is_sorted(v.nodes.begin(), v.nodes.end()) ||
                        std::adjacent_find(v.nodes.begin(), v.nodes.end()) != v.nodes.end())
                        throw DomainError("tabulated potential nodes must be strictly increasing");
                    for (double y : v.values)
                        if (!std::isfinite(y)) throw DomainError("tabulated potential values must be finite");
                }
            },
            kind_);
    }

    Kind kind_ = ZeroPotential{};
};

}  // namespace pathint
