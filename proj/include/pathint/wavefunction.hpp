#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "region.hpp"

namespace pathint {

using Complex = std::complex<double>;

/// Complex samples on a grid, plus the points where the sampled function is
/// singular or discontinuous.
class Wavefunction {
public:
    Wavefunction() = default;

    Wavefunction(GridSpec grid, std::vector<Complex> values, std::vector<Point> singular_points = {})
        : grid_(std::move(grid)), values_(std::move(values)),
          singular_(std::move(singular_points)) {
        if (values_.size() != grid_.size())
            throw DomainError("wavefunction sample count differs from grid size");
        for (const auto& p : singular_)
            if (p.size() != grid_.dim())
                throw DomainError("singular point dimension differs from grid");
    }

    static Wavefunction zeros(const GridSpec& grid) {
        return {grid, std::vector<Complex>(grid.size())};
    }

    const GridSpec& grid() const { return grid_; }
    std::span<const Complex> values() const { return values_; }
    std::span<Complex> values() { return values_; }
    const std::vector<Point>& singular_points() const { return singular_; }
    std::size_t size() const { return values_.size(); }
    const Complex& operator[](std::size_t i) const { return values_[i]; }
    Complex& operator[](std::size_t i) { return values_[i]; }

    Wavefunction with_values(std::vector<Complex> values) const {
        return {grid_, std::move(values), singular_};
    }

private:
    GridSpec grid_;
    std::vector<Complex> values_;
    std::vector<Point> singular_;
};

inline bool near_any(const Point& x, const std::vector<Point>& points) {
    for (const auto& p : points) {
        bool same = true;
        for (std::size_t a = 0; a < x.size() && same; ++a) same = std::abs(x[a] - p[a]) <= kFaceSlack;
        if (same) return true;
    }
    return false;
}

/// Samples f on the grid; samples sitting on a declared singular point are stored as 0.
template <class F>
Wavefunction sample_function(const GridSpec& grid, F&& f, std::vector<Point> singular_points = {}) {
    std::vector<Complex> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Point x = grid.point(i);
        v[i] = near_any(x, singular_points) ? Complex{} : Complex(f(x));
    }
    return {grid, std::move(v), std::move(singular_points)};
}

inline Wavefunction apply_mask(const Wavefunction& psi, const ExcisedRegion& region) {
    require_covers(psi.grid(), region);
    const auto mask = region_mask(psi.grid(), region);
    std::vector<Complex> v(psi.values().begin(), psi.values().end());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!mask[i]) v[i] = Complex{};
    return psi.with_values(std::move(v));
}

inline double l2_norm(const Wavefunction& psi) {
    const auto w = psi.grid().trapezoid_weights();
    double s = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) s += w[i] * std::norm(psi[i]);
    return std::sqrt(s);
}

/// Trapezoidal integral of phi * psi. No conjugation.
inline Complex bilinear_pair(const Wavefunction& phi, const Wavefunction& psi) {
    require_same_grid(phi.grid(), psi.grid(), "bilinear_pair");
    const auto w = psi.grid().trapezoid_weights();
    Complex s{};
    for (std::size_t i = 0; i < psi.size(); ++i) s += w[i] * (phi[i] * psi[i]);
    return s;
}

inline Wavefunction conjugate(const Wavefunction& psi) {
    std::vector<Complex> v(psi.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::conj(psi[i]);
    return psi.with_values(std::move(v));
}

/// alpha * a + beta * b, pointwise.
inline Wavefunction combine(Complex alpha, const Wavefunction& a, Complex beta, const Wavefunction& b) {
    require_same_grid(a.grid(), b.grid(), "combine");
    std::vector<Complex> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = alpha * a[i] + beta * b[i];
    return a.with_values(std::move(v));
}

inline double max_abs_difference(const Wavefunction& a, const Wavefunction& b) {
    require_same_grid(a.grid(), b.grid(), "max_abs_difference");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs(const Wavefunction& a) {
    double m = 0.0;
    for (const auto& v : a.values()) m = std::max(m, std::abs(v));
    return m;
}

/// ||a - b|| / ||b||
inline double relative_l2_error(const Wavefunction& a, const Wavefunction& b) {
    return l2_norm(combine(1.0, a, -1.0, b)) / l2_norm(b);
}

}  // namespace pathint
