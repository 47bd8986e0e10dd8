#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "potential.hpp"

namespace pathint {

/// Single-slice normalization (m / (2 pi i hbar eps))^{n/2}, principal branch:
/// (m / (2 pi hbar |eps|))^{n/2} exp(-i sign(eps) n pi / 4).
inline Complex slice_weight(std::size_t n, const PhysicalParams& params, double epsilon) {
    if (epsilon == 0.0) throw DomainError("slice_weight: epsilon must be non-zero");
    const double dn = static_cast<double>(n);
    const double mod = std::pow(params.m / (2.0 * std::numbers::pi * params.hbar * std::abs(epsilon)), 0.5 * dn);
    const double sign = epsilon > 0.0 ? 1.0 : -1.0;
    return std::polar(mod, -sign * dn * std::numbers::pi / 4.0);
}

/// Unnormalized one-slice kernel exp[i m |x1 - x0|^2 / (2 hbar eps)].
inline Complex free_kernel(const Point& x1, const Point& x0, double epsilon, const PhysicalParams& params) {
    if (epsilon == 0.0) throw DomainError("free_kernel: epsilon must be non-zero");
    if (x1.size() != x0.size()) throw DomainError("free_kernel: point dimensions differ");
    double d2 = 0.0;
    for (std::size_t a = 0; a < x1.size(); ++a) d2 += (x1[a] - x0[a]) * (x1[a] - x0[a]);
    return std::polar(1.0, params.m * d2 / (2.0 * params.hbar * epsilon));
}

/// Discrete action S_k = sum_{j=1..k} [ m/2 ((x_j - x_{j-1})/eps)^2 - V(x_j) ].
inline double action(std::span<const Point> path, double epsilon, const PotentialSpec& V,
                     const PhysicalParams& params) {
    if (epsilon == 0.0) throw DomainError("action: epsilon must be non-zero");
    if (path.size() < 2) throw DomainError("action: a path needs at least two points");
    double s = 0.0;
    for (std::size_t j = 1; j < path.size(); ++j) {
        if (path[j].size() != path[0].size()) throw DomainError("action: path points differ in dimension");
        if (V.is_singular_at(path[j]))
            throw DomainError("action: path point " + std::to_string(j) + " " + format_point(path[j]) +
                              " lies on a singular point of the potential");
        double d2 = 0.0;
        for (std::size_t a = 0; a < path[j].size(); ++a) {
            const double v = (path[j][a] - path[j - 1][a]) / epsilon;
            d2 += v * v;
        }
        s += 0.5 * params.m * d2 - V(path[j]);
    }
    return s;
}

enum class GuardStatus { pass, warn, fail };

inline const char* to_string(GuardStatus s) {
    switch (s) {
        case GuardStatus::pass: return "PASS";
        case GuardStatus::warn: return "WARN";
        case GuardStatus::fail: return "FAIL";
    }
    return "?";
}

/// Largest kernel phase increment between adjacent samples over the grid.
struct PhaseDiagnostic {
    double max_increment = 0.0;
    GuardStatus status = GuardStatus::pass;

    std::string describe() const {
        char buf[160];
        std::snprintf(buf, sizeof buf, "kernel phase increment %.6g rad per sample (%s; warn > pi/2, fail > pi)",
                      max_increment, to_string(status));
        return buf;
    }
};

inline PhaseDiagnostic phase_resolution_check(const GridSpec& grid, double epsilon, const PhysicalParams& params) {
    PhaseDiagnostic d;
    if (epsilon == 0.0) {
        d.max_increment = std::numeric_limits<double>::infinity();
        d.status = GuardStatus::fail;
        return d;
    }
    for (const auto& ax : grid.axes())
        d.max_increment = std::max(d.max_increment,
                                   params.m * ax.extent() * ax.spacing() / (params.hbar * std::abs(epsilon)));
    constexpr double pi = std::numbers::pi;
    d.status = d.max_increment > pi ? GuardStatus::fail
             : d.max_increment > pi / 2 ? GuardStatus::warn
                                        : GuardStatus::pass;
    return d;
}

/// One-slice kernel on every grid displacement. The kernel factorizes over
/// axes, so per axis we keep exp[i m (j dx)^2 / (2 hbar eps)] for j = 0..N-1.
class KernelTable {
public:
    KernelTable(const GridSpec& grid, double epsilon, const PhysicalParams& params)
        : grid_(grid), epsilon_(epsilon), weight_(slice_weight(grid.dim(), params, epsilon)) {
        axes_.resize(grid.dim());
        for (std::size_t a = 0; a < grid.dim(); ++a) {
            const Axis& ax = grid.axis(a);
            const double h = ax.spacing();
            auto& tab = axes_[a];
            tab.resize(ax.samples);
            for (std::size_t j = 0; j < ax.samples; ++j) {
                const double d = static_cast<double>(j) * h;
                tab[j] = std::polar(1.0, params.m * d * d / (2.0 * params.hbar * epsilon));
            }
        }
    }

    const GridSpec& grid() const { return grid_; }
    double epsilon() const { return epsilon_; }
    Complex weight() const { return weight_; }

    /// Kernel factor for an index displacement along one axis (sign irrelevant).
    std::span<const Complex> axis_values(std::size_t a) const { return axes_[a]; }

    Complex value(std::span<const std::ptrdiff_t> offsets) const {
        Complex v{1.0, 0.0};
        for (std::size_t a = 0; a < offsets.size(); ++a)
            v *= axes_[a][static_cast<std::size_t>(std::abs(offsets[a]))];
        return v;
    }

private:
    GridSpec grid_;
    double epsilon_;
    Complex weight_;
    std::vector<std::vector<Complex>> axes_;
};

}  // namespace pathint
