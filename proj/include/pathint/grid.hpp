#pragma once

#include <cmath>
#include <cstdio>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"

namespace pathint {

using Point = std::vector<double>;

/// Mass, action quantum and total evolution time.
struct PhysicalParams {
    double m = 1.0;
    double hbar = 1.0;
    double t = 0.0;

    void validate() const {
        if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("mass must be positive and finite");
        if (!(hbar > 0.0) || !std::isfinite(hbar))
            throw DomainError("hbar must be positive and finite");
        if (!std::isfinite(t)) throw DomainError("evolution time must be finite");
    }

    PhysicalParams with_time(double time) const { return {m, hbar, time}; }
};

/// k slices of step epsilon = t / k.
struct SlicingConfig {
    std::size_t k = 1;
    double epsilon = 0.0;

    static SlicingConfig from(const PhysicalParams& params, std::size_t k) {
        params.validate();
        if (k < 1) throw DomainError("slice count must be at least 1");
        if (params.t == 0.0) throw DomainError("slice propagation needs t != 0 (epsilon would vanish)");
        return {k, params.t / static_cast<double>(k)};
    }
};

/// One axis of a uniform grid, endpoints included.
struct Axis {
    double lower = 0.0;
    double upper = 0.0;
    std::size_t samples = 0;

    double extent() const { return upper - lower; }
    double spacing() const { return extent() / static_cast<double>(samples - 1); }

    double coordinate(std::size_t i) const {
        // Pin the last sample so the upper face is hit exactly.
        return i + 1 == samples ? upper : lower + static_cast<double>(i) * spacing();
    }

    bool operator==(const Axis&) const = default;
};

/// Tensor-product uniform grid; linear indices are row-major (last axis fastest).
class GridSpec {
public:
    GridSpec() = default;

    explicit GridSpec(std::vector<Axis> axes) : axes_(std::move(axes)) {
        if (axes_.empty()) throw DomainError("grid needs at least one axis");
        strides_.assign(axes_.size(), 1);
        total_ = 1;
        for (std::size_t a = axes_.size(); a-- > 0;) {
            const Axis& ax = axes_[a];
            if (!std::isfinite(ax.lower) || !std::isfinite(ax.upper))
                throw DomainError("grid bounds must be finite");
            if (!(ax.upper > ax.lower))
                throw DomainError("grid axis " + std::to_string(a) + " has non-positive extent");
            if (ax.samples < 2)
                throw DomainError("grid axis " + std::to_string(a) + " needs at least 2 samples");
            strides_[a] = total_;
            total_ *= ax.samples;
        }
    }

    std::size_t dim() const { return axes_.size(); }
    std::size_t size() const { return total_; }
    const std::vector<Axis>& axes() const { return axes_; }
    const Axis& axis(std::size_t a) const { return axes_[a]; }
    double spacing(std::size_t a) const { return axes_[a].spacing(); }
    std::size_t stride(std::size_t a) const { return strides_[a]; }

    /// Product of the per-axis spacings.
    double cell_volume() const {
        double v = 1.0;
        for (const auto& ax : axes_) v *= ax.spacing();
        return v;
    }

    std::size_t axis_index(std::size_t linear, std::size_t a) const {
        return (linear / strides_[a]) % axes_[a].samples;
    }

    Point point(std::size_t linear) const {
        Point x(dim());
        for (std::size_t a = 0; a < dim(); ++a) x[a] = axes_[a].coordinate(axis_index(linear, a));
        return x;
    }

    /// Trapezoidal quadrature weights (half weight on every boundary face, per axis).
    std::vector<double> trapezoid_weights() const {
        std::vector<double> w(total_);
        for (std::size_t i = 0; i < total_; ++i) {
            double wi = 1.0;
            for (std::size_t a = 0; a < dim(); ++a) {
                const std::size_t j = axis_index(i, a);
                const double h = axes_[a].spacing();
                wi *= (j == 0 || j + 1 == axes_[a].samples) ? 0.5 * h : h;
            }
            w[i] = wi;
        }
        return w;
    }

    bool operator==(const GridSpec& other) const { return axes_ == other.axes_; }

private:
    std::vector<Axis> axes_;
    std::vector<std::size_t> strides_;
    std::size_t total_ = 0;
};

inline GridSpec make_grid(std::span<const double> lower, std::span<const double> upper,
                          std::span<const std::size_t> samples) {
    if (lower.size() != upper.size() || lower.size() != samples.size())
        throw DomainError("grid bounds and sample counts must have one entry per axis");
    std::vector<Axis> axes;
    axes.reserve(lower.size());
    for (std::size_t a = 0; a < lower.size(); ++a) axes.push_back({lower[a], upper[a], samples[a]});
    return GridSpec(std::move(axes));
}

inline GridSpec make_grid_1d(double lower, double upper, std::size_t samples) {
    return GridSpec({Axis{lower, upper, samples}});
}

inline void require_same_grid(const GridSpec& a, const GridSpec& b, const char* what) {
    if (!(a == b)) throw DomainError(std::string(what) + ": wavefunctions live on different grids");
}

inline std::string format_point(const Point& x) {
    std::string s = "(";
    char buf[32];
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", x[i]);
        s += buf;
        if (i + 1 < x.size()) s += ", ";
    }
    return s + ")";
}

}  // namespace pathint
