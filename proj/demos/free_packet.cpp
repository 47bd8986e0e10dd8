// Free Gaussian survival amplitude at several slice counts, next to the closed form.

#include <cstdio>

#include <pathint/pathint.hpp>

int main() {
    using namespace pathint;
    const PhysicalParams params{1.0, 1.0, 0.5};
    const GridSpec grid = make_grid_1d(-8.0, 8.0, 2048);
    const StateSpec packet = StateSpec::gaussian(1.0, {0.0}, {0.5});
    const Wavefunction psi0 = packet.sample(grid, params.hbar);
    const Wavefunction phi = packet.conjugate().sample(grid, params.hbar);

    const Complex exact = amplitude_reference(phi, packet, PotentialSpec::zero(), params, ReferenceMethod::free_exact);
    std::printf("exact      % .12f % .12f\n", exact.real(), exact.imag());
    for (std::size_t k : {1, 2, 4, 8}) {
        const auto slicing = SlicingConfig::from(params, k);
        const auto quad = QuadratureConfig::uniform(full_region(grid), k);
        const Complex a = amplitude_time_sliced(phi, psi0, PotentialSpec::zero(), params, slicing, quad);
        const auto guard = phase_resolution_check(grid, slicing.epsilon, params);
        std::printf("k = %-6zu % .12f % .12f  |diff| %.2e  guard %s\n", k, a.real(), a.imag(), std::abs(a - exact),
                    guard.describe().c_str());
    }
}
