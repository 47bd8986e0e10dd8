#pragma once

#include <algorithm>
#include <cmath>

#include "wavefunction.hpp"

namespace pathint {

/// ||f|| ||p - h|| + ||f - chi f|| ||h||
struct TruncationBound {
    double term_a = 0.0;
    double term_b = 0.0;
    double total = 0.0;
};

/// ||psi - chi_R psi||
inline double tail_mass(const Wavefunction& psi, const ExcisedRegion& region) {
    return l2_norm(combine(1.0, psi, -1.0, apply_mask(psi, region)));
}

/// Schwarz-inequality bound on |<f, p> - <chi f, h>| where chi is the
/// region's characteristic function. Holds exactly for the discrete pairing
/// because the trapezoidal weights are positive.
inline TruncationBound schwarz_truncation_bound(const Wavefunction& f, const Wavefunction& p,
                                                const Wavefunction& h, const ExcisedRegion& region) {
    require_same_grid(f.grid(), p.grid(), "schwarz_truncation_bound");
    require_same_grid(f.grid(), h.grid(), "schwarz_truncation_bound");
    TruncationBound b;
    b.term_a = l2_norm(f) * l2_norm(combine(1.0, p, -1.0, h));
    b.term_b = tail_mass(f, region) * l2_norm(h);
    b.total = b.term_a + b.term_b;
    return b;
}

/// The grid box with a band of `band_fraction` of each axis extent removed on both sides.
inline ExcisedRegion interior_region(const GridSpec& grid, double band_fraction) {
    ExcisedRegion r = full_region(grid);
    for (std::size_t a = 0; a < grid.dim(); ++a) {
        const double band = band_fraction * grid.axis(a).extent();
        r.outer.lower[a] += band;
        r.outer.upper[a] -= band;
    }
    return r;
}

inline constexpr double kDefaultBoundaryBand = 1.0 / 32.0;

/// L2 mass of psi within the outer boundary band of its grid.
inline double boundary_mass(const Wavefunction& psi, double band_fraction = kDefaultBoundaryBand) {
    return tail_mass(psi, interior_region(psi.grid(), band_fraction));
}

}  // namespace pathint
