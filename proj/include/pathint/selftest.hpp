#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "bounds.hpp"
#include "config.hpp"
#include "drivers.hpp"
#include "reference.hpp"
#include "runner.hpp"

namespace pathint {

struct SelfTestCase {
    std::string name;
    std::function<bool()> check;
};

/// Fast closed-form checks of the basic operations.
inline std::vector<SelfTestCase> selftest_cases() {
    using std::abs;
    constexpr double pi = std::numbers::pi;
    const PhysicalParams unit{1.0, 1.0, 1.0};
    auto close = [](Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; };
    auto ones = [](const GridSpec& g) { return sample_function(g, [](const Point&) { return 1.0; }); };

    std::vector<SelfTestCase> c;
    c.push_back({"make_grid 3 points on [-1,1]", [] {
                     const auto g = make_grid_1d(-1, 1, 3);
                     return g.point(0)[0] == -1 && g.point(1)[0] == 0 && g.point(2)[0] == 1 && g.spacing(0) == 1;
                 }});
    c.push_back({"make_grid spacing (10+10)/(5-1)", [] { return make_grid_1d(-10, 10, 5).spacing(0) == 5.0; }});
    c.push_back({"make_grid 2-D tensor product", [] {
                     const double lo[] = {-1, 0}, hi[] = {1, 2};
                     const std::size_t n[] = {3, 3};
                     const auto g = make_grid(lo, hi, n);
                     return g.size() == 9 && g.spacing(0) == 1 && g.spacing(1) == 1;
                 }});
    c.push_back({"region membership", [] {
                     ExcisedRegion open{{{-5}, {5}}, {}};
                     ExcisedRegion holed{{{-5}, {5}}, {ExcisionBox::symmetric({0}, 1)}};
                     return region_membership(open, {0}) && !region_membership(holed, {0.5}) &&
                            region_membership(holed, {2});
                 }});
    c.push_back({"apply_mask full box unchanged, hole zeroed, idempotent", [=] {
                     const auto g = make_grid_1d(-5, 5, 101);
                     const auto psi = ones(g);
                     const auto full = apply_mask(psi, full_region(g));
                     ExcisedRegion holed{bounding_box(g), {ExcisionBox::symmetric({0}, 1)}};
                     const auto once = apply_mask(psi, holed);
                     const auto twice = apply_mask(once, holed);
                     bool ok = max_abs_difference(full, psi) == 0 && max_abs_difference(once, twice) == 0;
                     for (std::size_t i = 0; i < g.size(); ++i)
                         if (std::abs(g.point(i)[0]) < 1 && once[i] != Complex{}) ok = false;
                     return ok;
                 }});
    c.push_back({"l2_norm of 1 on [0,1]", [=] { return abs(l2_norm(ones(make_grid_1d(0, 1, 101))) - 1) < 1e-12; }});
    c.push_back({"bilinear_pair linearity", [] {
                     const auto g = make_grid_1d(-3, 3, 61);
                     const auto psi = sample_function(g, [](const Point& x) { return std::exp(-x[0] * x[0]); });
                     const auto phi = combine(Complex(0, 1), psi, 0.0, psi);
                     const double n = l2_norm(psi);
                     return std::abs(bilinear_pair(phi, psi) - Complex(0, n * n)) < 1e-12;
                 }});
    c.push_back({"slice_weight branch", [=] {
                     const double r = 1 / std::sqrt(2 * pi);
                     return close(slice_weight(1, unit, 1), std::polar(r, -pi / 4), 1e-15) &&
                            close(slice_weight(2, unit, 1), Complex(0, -1 / (2 * pi)), 1e-15);
                 }});
    c.push_back({"slice_weight modulus identity", [=] {
                     const PhysicalParams p{2.5, 0.7, 1};
                     const double eps = -0.3;
                     return abs(std::norm(slice_weight(3, p, eps)) * std::pow(2 * pi * p.hbar * abs(eps) / p.m, 3) - 1) < 1e-12;
                 }});
    c.push_back({"free_kernel values", [=] {
                     return free_kernel({1.3}, {1.3}, 1, unit) == Complex(1, 0) &&
                            close(free_kernel({std::sqrt(pi)}, {0}, 1, unit), Complex(0, 1), 1e-14) &&
                            free_kernel({0.4}, {-1.1}, 0.2, unit) == free_kernel({-1.1}, {0.4}, 0.2, unit);
                 }});
    c.push_back({"action examples", [=] {
                     const std::vector<Point> flat{{1}, {1}, {1}};
                     const std::vector<Point> hop{{0}, {1}};
                     const std::vector<Point> path{{0}, {0.5}, {-0.2}, {0.1}};
                     const PhysicalParams m2{2, 1, 1};
                     const double free = action(path, 0.1, PotentialSpec::zero(), unit);
                     const double shifted = action(path, 0.1, PotentialSpec::constant(0.7), unit);
                     return action(flat, 0.5, PotentialSpec::zero(), unit) == 0 &&
                            action(hop, 1, PotentialSpec::zero(), m2) == 1 && abs(shifted - (free - 3 * 0.7)) < 1e-12;
                 }});
    c.push_back({"phase_resolution_check examples", [=] {
                     const auto a = phase_resolution_check(make_grid_1d(-1, 1, 201), 1, unit);
                     const auto b = phase_resolution_check(make_grid_1d(-10, 10, 201), 0.01, unit);
                     const auto h = phase_resolution_check(make_grid_1d(-1, 1, 401), 1, unit);
                     return abs(a.max_increment - 0.02) < 1e-15 && a.status == GuardStatus::pass &&
                            abs(b.max_increment - 200) < 1e-10 && b.status == GuardStatus::fail &&
                            abs(h.max_increment - 0.01) < 1e-15;
                 }});
    c.push_back({"free step of zero is zero", [=] {
                     const auto g = make_grid_1d(-4, 4, 81);
                     const auto out = free_step_truncated(Wavefunction::zeros(g), full_region(g), 0.5, unit);
                     return max_abs(out) == 0;
                 }});
    c.push_back({"potential_phase zero and constant", [=] {
                     const auto g = make_grid_1d(-4, 4, 81);
                     const auto psi = sample_function(g, [](const Point& x) { return std::exp(-x[0] * x[0]); });
                     const auto r = full_region(g);
                     const auto z = potential_phase(psi, PotentialSpec::zero(), 0.3, r, unit);
                     const auto k = potential_phase(psi, PotentialSpec::constant(2), 0.3, r, unit);
                     return max_abs_difference(z, apply_mask(psi, r)) == 0 &&
                            max_abs_difference(k, combine(std::polar(1.0, -0.6), psi, 0, psi)) < 1e-15;
                 }});
    c.push_back({"exact_free_gaussian at t=0", [=] {
                     const auto g = make_grid_1d(-6, 6, 121);
                     const auto a = exact_free_gaussian(g, unit, 1.2, {0.3}, {0.5}, 0);
                     const auto b = StateSpec::gaussian(1.2, {0.3}, {0.5}).sample(g, 1);
                     return max_abs_difference(a, b) == 0;
                 }});
    c.push_back({"tail_mass and Schwarz bound vanish", [] {
                     const auto g = make_grid_1d(-6, 6, 121);
                     const auto psi = StateSpec::gaussian(1, {0}).sample(g, 1);
                     const auto r = full_region(g);
                     return tail_mass(psi, r) == 0 && schwarz_truncation_bound(psi, psi, psi, r).total == 0 &&
                            schwarz_truncation_bound(Wavefunction::zeros(g), psi, apply_mask(psi, r), r).total == 0;
                 }});
    c.push_back({"trotter with V=0 equals one spectral step", [=] {
                     const auto g = make_grid_1d(-12, 12, 256);
                     const auto psi = StateSpec::gaussian(1, {0}, {0.5}).sample(g, 1);
                     const PhysicalParams p{1, 1, 0.8};
                     return max_abs_difference(trotter_split_step(psi, PotentialSpec::zero(), p, 7),
                                               spectral_free_step(psi, 0.8, p)) < 1e-12;
                 }});
    c.push_back({"free step is linear", [=] {
                     const auto g = make_grid_1d(-6, 6, 601);
                     const auto a = StateSpec::gaussian(1, {-1}, {0.5}).sample(g, 1);
                     const auto b = StateSpec::gaussian(0.7, {1}).sample(g, 1);
                     const Complex al(0.3, -1), be(-2, 0.5);
                     const auto r = full_region(g);
                     const auto lhs = free_step_truncated(combine(al, a, be, b), r, 0.25, unit);
                     const auto rhs = combine(al, free_step_truncated(a, r, 0.25, unit), be, free_step_truncated(b, r, 0.25, unit));
                     return max_abs_difference(lhs, rhs) < 1e-13;
                 }});
    c.push_back({"potential phase keeps the masked modulus", [=] {
                     const auto g = make_grid_1d(-4, 4, 81);
                     const auto psi = StateSpec::gaussian(1, {0.2}, {1}).sample(g, 1);
                     ExcisedRegion holed{bounding_box(g), {ExcisionBox::symmetric({0}, 1)}};
                     const auto out = potential_phase(psi, PotentialSpec::harmonic(1), 0.3, holed, unit);
                     const auto m = apply_mask(psi, holed);
                     for (std::size_t i = 0; i < g.size(); ++i)
                         if (std::abs(std::abs(out[i]) - std::abs(m[i])) > 1e-15) return false;
                     return true;
                 }});
    c.push_back({"rho unrolls for k = 1 and k = 2", [=] {
                     const auto g = make_grid_1d(-6, 6, 601);
                     const auto psi = StateSpec::gaussian(1, {0.3}, {0.2}).sample(g, 1);
                     const auto r = full_region(g);
                     const PhysicalParams p{1, 1, 0.5};
                     const auto V = PotentialSpec::harmonic(1);
                     const auto one = rho(psi, PotentialSpec::zero(), p, SlicingConfig::from(p, 1), QuadratureConfig::uniform(r, 1));
                     auto two = free_step_truncated(psi, r, 0.25, p);
                     two = free_step_truncated(potential_phase(two, V, 0.25, r, p), r, 0.25, p);
                     two = potential_phase(two, V, 0.25, r, p);
                     return max_abs_difference(one, free_step_truncated(apply_mask(psi, r), r, 0.5, p)) == 0 &&
                            max_abs_difference(rho(psi, V, p, SlicingConfig::from(p, 2), QuadratureConfig::uniform(r, 2)), two) == 0;
                 }});
    c.push_back({"amplitude of a fully excised final state is zero", [=] {
                     const auto g = make_grid_1d(-4, 4, 129);
                     const auto psi = StateSpec::gaussian(1, {0}).sample(g, 1);
                     const PhysicalParams p{1, 1, 0.5};
                     RegionFamily fam = RegionFamily::uniform(full_region(g), 1);
                     fam.regions[1] = {{{-2}, {2}}, {ExcisionBox::symmetric({0}, 3)}};
                     return amplitude_time_sliced(psi, psi, PotentialSpec::zero(), p, SlicingConfig::from(p, 1),
                                                  QuadratureConfig{fam, {}}) == Complex{};
                 }});
    c.push_back({"spectral split step is unitary", [=] {
                     const auto g = make_grid_1d(-12, 12, 512);
                     const auto psi = StateSpec::gaussian(1, {0.5}, {0.7}).sample(g, 1);
                     const PhysicalParams p{1, 1, 0.5};
                     return abs(l2_norm(trotter_split_step(psi, PotentialSpec::harmonic(1), p, 16)) - l2_norm(psi)) < 1e-12;
                 }});
    c.push_back({"exact free packet keeps parity", [=] {
                     const auto g = make_grid_1d(-8, 10, 901);
                     const auto psi = exact_free_gaussian(g, unit, 1, {1}, {0}, 0.8);
                     for (std::size_t i = 0; i < g.size(); ++i)
                         if (abs(std::abs(psi[i]) - std::abs(psi[g.size() - 1 - i])) > 1e-14) return false;
                     return true;
                 }});
    c.push_back({"reference at t = 0 is the pairing", [] {
                     const auto g = make_grid_1d(-8, 8, 256);
                     const auto psi0 = StateSpec::gaussian(1, {0.5}, {0.3});
                     const auto phi = StateSpec::gaussian(1.2, {0}).sample(g, 1);
                     const PhysicalParams p{1, 1, 0};
                     return amplitude_reference(phi, psi0, PotentialSpec::harmonic(1), p, ReferenceMethod::spectral) ==
                            bilinear_pair(phi, psi0.sample(g, 1));
                 }});
    c.push_back({"tail mass of a half-box hole", [] {
                     const auto g = make_grid_1d(-1, 1, 2001);
                     const auto one = sample_function(g, [](const Point&) { return 1.0; });
                     ExcisedRegion r{bounding_box(g), {ExcisionBox::symmetric({0}, 0.5)}};
                     return std::abs(tail_mass(one, r) - 1.0) < 2e-3;
                 }});
    c.push_back({"convergence report has one stage per schedule entry", [=] {
                     const auto g = make_grid_1d(-6, 6, 512);
                     const auto psi = StateSpec::gaussian(1, {0}).sample(g, 1);
                     const std::vector<std::size_t> ks{1, 2, 3};
                     const PhysicalParams p{1, 1, 0.5};
                     return converge_in_k(psi, psi, PotentialSpec::zero(), p, ks, full_region(g), 1e-3).stages.size() == 3;
                 }});
    c.push_back({"validation names an unexcised singular point", [] {
                     const json doc = json::parse(R"({"physical": {"t": 0.5},
                         "grid": {"lower": [-4], "upper": [4], "samples": [64]},
                         "potential": {"kind": "inverse_distance", "center": [0.5]},
                         "regions": {"holes": [[2.0]]}})");
                     try {
                         parse_config(doc);
                     } catch (const ConfigValidationError& e) {
                         for (const auto& m : e.errors())
                             if (m.find("(0.5)") != std::string::npos) return true;
                     }
                     return false;
                 }});
    c.push_back({"identical configs give identical records", [] {
                     const json doc = json::parse(R"({"physical": {"t": 0.5},
                         "grid": {"lower": [-6], "upper": [6], "samples": [256]},
                         "potential": {"kind": "harmonic"},
                         "initial_state": {"momentum": [0.5]},
                         "slicing": {"k": 2}})");
                     const auto cfg = parse_config(doc);
                     return without_timing(cli_amplitude(cfg).record) == without_timing(cli_amplitude(cfg).record);
                 }});
    return c;
}

/// Prints one PASS/FAIL line per case; true when all pass.
inline bool run_selftest(std::ostream& os) {
    bool ok = true;
    for (const auto& tc : selftest_cases()) {
        bool pass = false;
        try {
            pass = tc.check();
        } catch (const std::exception& e) {
            os << "  exception: " << e.what() << "\n";
        }
        os << (pass ? "PASS " : "FAIL ") << tc.name << "\n";
        ok = ok && pass;
    }
    return ok;
}

}  // namespace pathint
