#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "bounds.hpp"
#include "fft.hpp"
#include "parallel.hpp"
#include "potential.hpp"
#include "states.hpp"

namespace pathint {

/// Periodic reading of a grid and its discrete Fourier dual wavenumbers.
class SpectralConfig {
public:
    explicit SpectralConfig(const GridSpec& grid) : grid_(grid) {
        wavenumbers_.resize(grid.dim());
        for (std::size_t a = 0; a < grid.dim(); ++a) {
            const std::size_t n = grid.axis(a).samples;
            const double period = static_cast<double>(n) * grid.spacing(a);
            auto& kv = wavenumbers_[a];
            kv.resize(n);
            for (std::size_t j = 0; j < n; ++j) {
                const double f = j <= (n - 1) / 2 ? static_cast<double>(j)
                                                   : static_cast<double>(j) - static_cast<double>(n);
                kv[j] = 2.0 * std::numbers::pi * f / period;
            }
        }
        for (const auto& ax : grid.axes()) dims_.push_back(static_cast<int>(ax.samples));
    }

    const GridSpec& grid() const { return grid_; }
    const std::vector<int>& dims() const { return dims_; }
    const std::vector<double>& wavenumbers(std::size_t a) const { return wavenumbers_[a]; }

    /// exp(-i eps hbar |k|^2 / (2m)) on the DFT ordering of the grid.
    std::vector<Complex> free_multiplier(double epsilon, const PhysicalParams& params) const {
        std::vector<Complex> mult(grid_.size());
        for (std::size_t i = 0; i < mult.size(); ++i) {
            double k2 = 0.0;
            for (std::size_t a = 0; a < grid_.dim(); ++a) {
                const double k = wavenumbers_[a][grid_.axis_index(i, a)];
                k2 += k * k;
            }
            mult[i] = std::polar(1.0, -epsilon * params.hbar * k2 / (2.0 * params.m));
        }
        return mult;
    }

private:
    GridSpec grid_;
    std::vector<std::vector<double>> wavenumbers_;
    std::vector<int> dims_;
};

inline Wavefunction spectral_free_step(const Wavefunction& psi, double epsilon, const PhysicalParams& params) {
    const SpectralConfig spec(psi.grid());
    const auto mult = spec.free_multiplier(epsilon, params);
    std::vector<Complex> buf(psi.values().begin(), psi.values().end());
    FftPlan forward(spec.dims(), buf.data(), FFTW_FORWARD);
    FftPlan backward(spec.dims(), buf.data(), FFTW_BACKWARD);
    forward.execute();
    const double scale = 1.0 / static_cast<double>(buf.size());
    for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= mult[i] * scale;
    backward.execute();
    return Wavefunction(psi.grid(), std::move(buf));
}

inline constexpr double kSpectralBoundaryGuard = 1e-8;

/// k repetitions of (spectral free step, potential phase), time step t/k.
inline Wavefunction trotter_split_step(const Wavefunction& psi0, const PotentialSpec& V, const PhysicalParams& params,
                                       std::size_t k, double boundary_guard = kSpectralBoundaryGuard) {
    const auto slicing = SlicingConfig::from(params, k);
    const double edge = boundary_mass(psi0);
    if (!(edge < boundary_guard)) {
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "refusing spectral propagation: boundary mass %.3e >= %.1e (periodic wrap-around)", edge,
                      boundary_guard);
        throw GuardError("boundary_mass", edge, boundary_guard, buf);
    }
    const GridSpec& grid = psi0.grid();
    const SpectralConfig spec(grid);
    const auto mult = spec.free_multiplier(slicing.epsilon, params);
    std::vector<Complex> phase(grid.size(), Complex{1.0, 0.0});
    if (!V.is_zero())
        for (std::size_t i = 0; i < grid.size(); ++i)
            phase[i] = std::polar(1.0, -slicing.epsilon * V(grid.point(i)) / params.hbar);

    std::vector<Complex> buf(psi0.values().begin(), psi0.values().end());
    FftPlan forward(spec.dims(), buf.data(), FFTW_FORWARD);
    FftPlan backward(spec.dims(), buf.data(), FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(buf.size());
    for (std::size_t s = 0; s < k; ++s) {
        forward.execute();
        for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= mult[i] * scale;
        backward.execute();
        for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= phase[i];
    }
    return Wavefunction(grid, std::move(buf));
}

/// Closed-form free evolution of a product Gaussian packet.
inline Wavefunction exact_free_gaussian(const GridSpec& grid, const PhysicalParams& params, double sigma,
                                        const Point& center, const Point& momentum, double t) {
    if (!(sigma > 0.0)) throw DomainError("exact_free_gaussian: sigma must be positive");
    const StateSpec initial = StateSpec::gaussian(sigma, center, momentum);
    if (t == 0.0) return initial.sample(grid, params.hbar);
    if (center.size() != grid.dim() || momentum.size() != grid.dim())
        throw DomainError("exact_free_gaussian: center/momentum dimension differs from grid");
    const double s2 = sigma * sigma;
    const Complex a(s2, params.hbar * t / params.m);
    const Complex axis_norm = std::pow(std::numbers::pi * s2, -0.25) * std::sqrt(s2 / a);
    return sample_function(grid, [&](const Point& x) {
        Complex v{1.0, 0.0};
        Complex expo{};
        for (std::size_t q = 0; q < x.size(); ++q) {
            const double p = momentum[q];
            const double shifted = x[q] - center[q] - p * t / params.m;
            expo += -shifted * shifted / (2.0 * a) +
                    Complex(0.0, p * (x[q] - center[q]) / params.hbar - p * p * t / (2.0 * params.m * params.hbar));
            v *= axis_norm;
        }
        return v * std::exp(expo);
    });
}

/// Exact oscillator kernel (m w / (2 pi i hbar sin wt))^{1/2}
/// exp{i m w [(x^2 + x'^2) cos wt - 2 x x'] / (2 hbar sin wt)} per axis,
/// applied by direct trapezoidal quadrature.
inline Wavefunction mehler_propagate(const Wavefunction& psi0, double omega, const PhysicalParams& params, double t,
                                     unsigned threads = 1) {
    const double s = std::sin(omega * t);
    const double c = std::cos(omega * t);
    if (std::abs(s) < 1e-6) throw DomainError("mehler_propagate: |sin(omega t)| < 1e-6 (kernel caustic)");
    const GridSpec& grid = psi0.grid();
    const std::size_t n = grid.dim();
    const double scale = params.m * omega / (2.0 * params.hbar * s);
    const Complex pref = std::sqrt(Complex(0.0, -params.m * omega / (2.0 * std::numbers::pi * params.hbar * s)));
    Complex total_pref{1.0, 0.0};
    for (std::size_t a = 0; a < n; ++a) total_pref *= pref;

    const auto w = grid.trapezoid_weights();
    std::vector<Complex> u(grid.size());
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = w[j] * psi0[j];
    std::vector<Complex> out(grid.size());

    parallel_for(grid.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const Point xi = grid.point(i);
            Complex acc{};
            for (std::size_t j = 0; j < u.size(); ++j) {
                double ph = 0.0;
                for (std::size_t a = 0; a < n; ++a) {
                    const double xj = grid.axis(a).coordinate(grid.axis_index(j, a));
                    ph += (xi[a] * xi[a] + xj * xj) * c - 2.0 * xi[a] * xj;
                }
                acc += std::polar(1.0, scale * ph) * u[j];
            }
            out[i] = total_pref * acc;
        }
    });
    return Wavefunction(grid, std::move(out));
}

enum class ReferenceMethod { spectral, mehler, free_exact };

inline const char* to_string(ReferenceMethod m) {
    switch (m) {
        case ReferenceMethod::spectral: return "spectral";
        case ReferenceMethod::mehler: return "mehler";
        case ReferenceMethod::free_exact: return "free_exact";
    }
    return "?";
}

/// Oracle amplitude <phi, exp(-itH/hbar) psi0> on phi's grid.
inline Complex amplitude_reference(const Wavefunction& phi, const StateSpec& psi0, const PotentialSpec& V,
                                   const PhysicalParams& params, ReferenceMethod method,
                                   std::size_t spectral_k = 64, unsigned threads = 1) {
    const GridSpec& grid = phi.grid();
    switch (method) {
        case ReferenceMethod::mehler:
            if (!std::holds_alternative<HarmonicPotential>(V.kind()))
                throw ConfigError("mehler reference requires a harmonic potential");
            break;
        case ReferenceMethod::free_exact:
            if (!V.is_zero()) throw ConfigError("free_exact reference requires V == 0");
            if (!psi0.as_gaussian()) throw ConfigError("free_exact reference requires a Gaussian initial state");
            break;
        case ReferenceMethod::spectral: break;
    }
    if (params.t == 0.0) return bilinear_pair(phi, psi0.sample(grid, params.hbar));

    switch (method) {
        case ReferenceMethod::spectral:
            return bilinear_pair(phi, trotter_split_step(psi0.sample(grid, params.hbar), V, params, spectral_k));
        case ReferenceMethod::mehler: {
            const auto& h = std::get<HarmonicPotential>(V.kind());
            if (std::abs(h.mass - params.m) > 1e-12 * params.m)
                throw ConfigError("mehler reference: harmonic potential mass differs from the particle mass");
            return bilinear_pair(phi, mehler_propagate(psi0.sample(grid, params.hbar), h.omega, params, params.t, threads));
        }
        case ReferenceMethod::free_exact: {
            const GaussianPacket& g = *psi0.as_gaussian();
            Point p = g.momentum;
            if (psi0.conjugated())
                for (double& v : p) v = -v;
            return bilinear_pair(phi, exact_free_gaussian(grid, params, g.sigma, g.center, p, params.t));
        }
    }
    return {};
}

}  // namespace pathint
