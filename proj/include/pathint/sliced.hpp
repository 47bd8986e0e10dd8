#pragma once

#include <complex>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "fft.hpp"
#include "kernels.hpp"
#include "parallel.hpp"
#include "potential.hpp"
#include "region.hpp"
#include "wavefunction.hpp"

namespace pathint {

enum class GuardPolicy { enforce, warn, off };

/// Direct is the Riemann sum itself; fast is the same sum as an FFT convolution.
enum class SummationPath { direct, fast };

struct StepOptions {
    GuardPolicy policy = GuardPolicy::enforce;
    SummationPath path = SummationPath::direct;
    unsigned threads = 1;
};

/// Region family C^0..C^k plus how to evaluate each slice.
struct QuadratureConfig {
    RegionFamily family;
    StepOptions options;

    static QuadratureConfig uniform(const ExcisedRegion& region, std::size_t k, StepOptions options = {}) {
        return {RegionFamily::uniform(region, k), options};
    }
};

/// Throws GuardError if the policy is enforce and the phase check fails.
inline PhaseDiagnostic check_phase_guard(const GridSpec& grid, double epsilon, const PhysicalParams& params,
                                         GuardPolicy policy) {
    const PhaseDiagnostic d = phase_resolution_check(grid, epsilon, params);
    if (policy == GuardPolicy::enforce && d.status == GuardStatus::fail)
        throw GuardError("phase_resolution", d.max_increment, std::numbers::pi,
                         "refusing to propagate: " + d.describe());
    return d;
}

namespace detail {

inline std::vector<Complex> masked_weighted(const Wavefunction& psi, const ExcisedRegion& region) {
    const auto mask = region_mask(psi.grid(), region);
    const auto w = psi.grid().trapezoid_weights();
    std::vector<Complex> u(psi.size());
    for (std::size_t j = 0; j < u.size(); ++j)
        if (mask[j]) u[j] = w[j] * psi[j];
    return u;
}

inline void direct_sum_1d(const KernelTable& table, const std::vector<Complex>& u, std::vector<Complex>& out,
                          unsigned threads) {
    const auto tab = table.axis_values(0);
    const std::size_t n = u.size();
    const Complex weight = table.weight();
    parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            double re = 0.0, im = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const Complex& k = tab[i > j ? i - j : j - i];
                re += k.real() * u[j].real() - k.imag() * u[j].imag();
                im += k.real() * u[j].imag() + k.imag() * u[j].real();
            }
            out[i] = weight * Complex(re, im);
        }
    });
}

inline void direct_sum_nd(const KernelTable& table, const std::vector<Complex>& u, std::vector<Complex>& out,
                          unsigned threads) {
    const GridSpec& grid = table.grid();
    const std::size_t n = grid.dim();
    const Complex weight = table.weight();
    parallel_for(grid.size(), threads, [&](std::size_t begin, std::size_t end) {
        std::vector<std::size_t> oi(n), ji(n);
        for (std::size_t i = begin; i < end; ++i) {
            for (std::size_t a = 0; a < n; ++a) oi[a] = grid.axis_index(i, a);
            std::fill(ji.begin(), ji.end(), 0);
            Complex acc{};
            for (std::size_t j = 0; j < u.size(); ++j) {
                Complex k{1.0, 0.0};
                for (std::size_t a = 0; a < n; ++a)
                    k *= table.axis_values(a)[oi[a] > ji[a] ? oi[a] - ji[a] : ji[a] - oi[a]];
                acc += k * u[j];
                for (std::size_t a = n; a-- > 0;) {
                    if (++ji[a] < grid.axis(a).samples) break;
                    ji[a] = 0;
                }
            }
            out[i] = weight * acc;
        }
    });
}

/// Linear convolution with the displacement kernel through a zero-padded DFT.
inline void fft_convolve(const KernelTable& table, const std::vector<Complex>& u, std::vector<Complex>& out) {
    const GridSpec& grid = table.grid();
    const std::size_t n = grid.dim();
    std::vector<int> dims(n);
    std::vector<std::size_t> pstride(n, 1);
    std::size_t padded = 1;
    for (std::size_t a = n; a-- > 0;) {
        dims[a] = static_cast<int>(2 * grid.axis(a).samples);
        pstride[a] = padded;
        padded *= static_cast<std::size_t>(dims[a]);
    }
    std::vector<Complex> ubuf(padded), kbuf(padded);
    std::vector<std::size_t> idx(n);
    for (std::size_t p = 0; p < padded; ++p) {
        bool inside = true;
        Complex k{1.0, 0.0};
        for (std::size_t a = 0; a < n; ++a) {
            const std::size_t m = static_cast<std::size_t>(dims[a]);
            const std::size_t s = grid.axis(a).samples;
            idx[a] = (p / pstride[a]) % m;
            if (idx[a] >= s) inside = false;
            // circular displacement: m - idx for the negative half, 0 at the unused middle slot
            if (idx[a] < s) k *= table.axis_values(a)[idx[a]];
            else if (idx[a] > s) k *= table.axis_values(a)[m - idx[a]];
            else k = Complex{};
        }
        kbuf[p] = k;
        if (inside) {
            std::size_t lin = 0;
            for (std::size_t a = 0; a < n; ++a) lin += idx[a] * grid.stride(a);
            ubuf[p] = u[lin];
        }
    }
    fft_inplace(ubuf, dims, FFTW_FORWARD);
    fft_inplace(kbuf, dims, FFTW_FORWARD);
    for (std::size_t p = 0; p < padded; ++p) ubuf[p] *= kbuf[p];
    fft_inplace(ubuf, dims, FFTW_BACKWARD);
    const Complex scale = table.weight() / static_cast<double>(padded);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::size_t p = 0;
        for (std::size_t a = 0; a < n; ++a) p += grid.axis_index(i, a) * pstride[a];
        out[i] = scale * ubuf[p];
    }
}

}  // namespace detail

/// One truncated free slice: weight * sum over grid points in the region of
/// kernel(x', x) psi(x) times trapezoidal weights, evaluated at every grid point x'.
inline Wavefunction free_step_truncated(const Wavefunction& psi, const ExcisedRegion& region,
                                        const KernelTable& table, const StepOptions& options = {}) {
    require_same_grid(psi.grid(), table.grid(), "free_step_truncated");
    require_covers(psi.grid(), region);
    const auto u = detail::masked_weighted(psi, region);
    std::vector<Complex> out(psi.size());
    if (options.path == SummationPath::fast) detail::fft_convolve(table, u, out);
    else if (psi.grid().dim() == 1) detail::direct_sum_1d(table, u, out, options.threads);
    else detail::direct_sum_nd(table, u, out, options.threads);
    return Wavefunction(psi.grid(), std::move(out));
}

inline Wavefunction free_step_truncated(const Wavefunction& psi, const ExcisedRegion& region, double epsilon,
                                        const PhysicalParams& params, const StepOptions& options = {}) {
    if (epsilon == 0.0) throw DomainError("free_step_truncated: epsilon must be non-zero");
    check_phase_guard(psi.grid(), epsilon, params, options.policy);
    return free_step_truncated(psi, region, KernelTable(psi.grid(), epsilon, params), options);
}

/// Multiplies by exp(-i eps V / hbar) on the region and zeroes everything else.
inline Wavefunction potential_phase(const Wavefunction& psi, const PotentialSpec& V, double epsilon,
                                    const ExcisedRegion& region, const PhysicalParams& params) {
    require_covers(psi.grid(), region);
    const auto mask = region_mask(psi.grid(), region);
    std::vector<Complex> v(psi.size());
    const bool free = V.is_zero();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!mask[i]) continue;
        if (free) {
            v[i] = psi[i];
            continue;
        }
        const Point x = psi.grid().point(i);
        if (V.is_singular_at(x))
            throw DomainError("potential_phase: grid point " + format_point(x) +
                              " is not excised but lies on a singular point of the potential");
        v[i] = std::polar(1.0, -epsilon * V(x) / params.hbar) * psi[i];
    }
    return Wavefunction(psi.grid(), std::move(v));
}

namespace detail {
inline void require_family(const QuadratureConfig& quad, std::size_t k) {
    if (quad.family.regions.size() != k + 1)
        throw ConfigError("region family has " + std::to_string(quad.family.regions.size()) +
                          " regions, expected k + 1 = " + std::to_string(k + 1));
}
}  // namespace detail

/// k truncated slices: for l = 0..k-1 mask by C^l, free step, potential phase on C^{l+1}.
inline Wavefunction rho(const Wavefunction& psi0, const PotentialSpec& V, const PhysicalParams& params,
                        const SlicingConfig& slicing, const QuadratureConfig& quad) {
    if (slicing.k < 1) throw DomainError("rho: k must be at least 1");
    detail::require_family(quad, slicing.k);
    check_phase_guard(psi0.grid(), slicing.epsilon, params, quad.options.policy);
    const KernelTable table(psi0.grid(), slicing.epsilon, params);
    Wavefunction psi = psi0;
    for (std::size_t l = 0; l < slicing.k; ++l) {
        psi = free_step_truncated(psi, quad.family[l], table, quad.options);
        psi = potential_phase(psi, V, slicing.epsilon, quad.family[l + 1], params);
    }
    return psi;
}

/// The truncated (k+1)n-fold Riemann integral <chi_k phi, rho>.
inline Complex amplitude_time_sliced(const Wavefunction& phi, const Wavefunction& psi0, const PotentialSpec& V,
                                     const PhysicalParams& params, const SlicingConfig& slicing,
                                     const QuadratureConfig& quad) {
    require_same_grid(phi.grid(), psi0.grid(), "amplitude_time_sliced");
    detail::require_family(quad, slicing.k);
    const Wavefunction r = rho(psi0, V, params, slicing, quad);
    return bilinear_pair(apply_mask(phi, quad.family[slicing.k]), r);
}

struct AmplitudeResult {
    Complex amplitude;
    std::size_t k = 0;
    PhaseDiagnostic phase;
    double initial_boundary_mass = 0.0;
    double final_boundary_mass = 0.0;
};

inline AmplitudeResult evaluate_amplitude(const Wavefunction& phi, const Wavefunction& psi0, const PotentialSpec& V,
                                          const PhysicalParams& params, const SlicingConfig& slicing,
                                          const QuadratureConfig& quad) {
    AmplitudeResult r;
    r.k = slicing.k;
    r.phase = phase_resolution_check(psi0.grid(), slicing.epsilon, params);
    r.initial_boundary_mass = boundary_mass(psi0);
    r.final_boundary_mass = boundary_mass(phi);
    r.amplitude = amplitude_time_sliced(phi, psi0, V, params, slicing, quad);
    return r;
}

}  // namespace pathint
