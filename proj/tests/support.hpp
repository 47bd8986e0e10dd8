#pragma once

#include <cmath>
#include <complex>
#include <random>

#include <pathint/pathint.hpp>

namespace testing_support {

using pathint::Complex;

inline const pathint::PhysicalParams kUnit{1.0, 1.0, 0.5};

inline double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

/// <g, exp(-itH0) g> for a centered 1-D Gaussian of width sigma and momentum p, m = hbar = 1.
inline Complex free_survival(double sigma, double p, double t) {
    const double tau = t / 2.0;
    const Complex d = sigma * sigma + Complex(0, tau);
    return sigma / std::sqrt(d) * std::exp(-sigma * sigma * Complex(0, tau) * p * p / d);
}

/// Harmonic (m = hbar = omega = 1) overlap of the ground state with the evolved state
/// pi^{-1/4} exp(-x^2/2 + i p x): a coherent state with alpha = i p / sqrt(2).
inline Complex coherent_ground_overlap(double p, double t) {
    return std::exp(Complex(-p * p / 4.0, -t / 2.0));
}

inline pathint::Wavefunction random_gaussian(std::mt19937& rng, const pathint::GridSpec& g, double hbar = 1.0) {
    std::uniform_real_distribution<double> sig(0.6, 1.6), cen(-2.0, 2.0), mom(-1.5, 1.5);
    return pathint::StateSpec::gaussian(sig(rng), {cen(rng)}, {mom(rng)}).sample(g, hbar);
}

}  // namespace testing_support
