// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: acceptance [criterion-number ...]   (no arguments runs all)

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "support.hpp"

using namespace pathint;
using testing_support::kUnit;
using testing_support::rel;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void check(bool ok, const char* fmt, double value, double tol) {
        char buf[160];
        std::snprintf(buf, sizeof buf, fmt, value, tol);
        if (!detail.empty()) detail += "; ";
        detail += buf;
        if (!ok) detail += " [x]";
        pass = pass && ok;
    }
    void note(const std::string& s) {
        if (!detail.empty()) detail += "; ";
        detail += s;
    }
};

struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
};

Wavefunction gaussian(const GridSpec& g, double sigma, double center, double p = 0.0) {
    return StateSpec::gaussian(sigma, {center}, {p}).sample(g, 1.0);
}

std::string fmt(const char* f, double v) {
    char buf[96];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

Outcome free_evolution() {
    Outcome o;
    const auto g = make_grid_1d(-16, 16, 2048);
    const auto psi = gaussian(g, 1.0, 0.0);
    const Complex exact = testing_support::free_survival(1.0, 0.0, 0.5);
    // Run every k with the guard downgraded so the quadrature itself is what is judged.
    StepOptions opts;
    opts.policy = GuardPolicy::off;
    std::vector<Complex> amps;
    for (std::size_t k : {1u, 4u, 16u}) {
        const auto slicing = SlicingConfig::from(kUnit, k);
        amps.push_back(amplitude_time_sliced(psi, psi, PotentialSpec::zero(), kUnit, slicing,
                                             QuadratureConfig::uniform(full_region(g), k, opts)));
        const auto guard = phase_resolution_check(g, slicing.epsilon, kUnit);
        o.note("k=" + std::to_string(k) + " guard " + guard.describe());
    }
    o.check(rel(amps[0], exact) < 1e-3, "k=1 vs closed form %.2e (tol %.0e)", rel(amps[0], exact), 1e-3);
    o.check(rel(amps[1], amps[0]) < 1e-8, "k=4 vs k=1 %.2e (tol %.0e)", rel(amps[1], amps[0]), 1e-8);
    o.check(rel(amps[2], amps[0]) < 1e-8, "k=16 vs k=1 %.2e (tol %.0e)", rel(amps[2], amps[0]), 1e-8);
    return o;
}

Outcome trotter_order() {
    Outcome o;
    const auto g = make_grid_1d(-5, 5, 4096);
    const auto psi0 = gaussian(g, 1.0, 0.0, 1.0);
    const auto phi = gaussian(g, 1.0, 0.0);
    const auto V = PotentialSpec::harmonic(1.0);
    const std::vector<std::size_t> ks{8, 16, 32, 64};
    const auto report = converge_in_k(phi, psi0, V, kUnit, ks, full_region(g), 5e-3);
    for (std::size_t s = 2; s < report.stages.size(); ++s) {
        const double r = *report.stages[s].difference / *report.stages[s - 1].difference;
        char f[64];
        std::snprintf(f, sizeof f, "ratio %zu/%zu %%.3f (range [0.35, %%.2f])", ks[s], ks[s - 1]);
        o.check(r >= 0.35 && r <= 0.65, f, r, 0.65);
    }
    const Complex mehler = amplitude_reference(phi, StateSpec::gaussian(1.0, {0.0}, {1.0}), V, kUnit, ReferenceMethod::mehler);
    const double e = rel(report.stages.back().amplitude, mehler);
    o.check(e < 5e-3, "k=64 vs Mehler %.2e (tol %.0e)", e, 5e-3);
    o.note("Mehler vs coherent-state closed form " +
           fmt("%.1e", rel(mehler, testing_support::coherent_ground_overlap(1.0, 0.5))));
    return o;
}

Outcome evaluator_vs_split_step() {
    Outcome o;
    const auto g = make_grid_1d(-7, 7, 4096);
    const auto psi0 = gaussian(g, 1.0, 0.0, 1.0);
    const auto V = PotentialSpec::harmonic(1.0);
    const auto slicing = SlicingConfig::from(kUnit, 32);
    const auto r = rho(psi0, V, kUnit, slicing, QuadratureConfig::uniform(full_region(g), 32));
    const auto s = trotter_split_step(psi0, V, kUnit, 32);
    const double e = relative_l2_error(r, s);
    o.check(e < 2e-3, "rho vs split-step L2 %.2e (tol %.0e)", e, 2e-3);
    return o;
}

Outcome excision() {
    Outcome o;
    const auto g = make_grid_1d(-10, 10, 2048);
    const auto psi = gaussian(g, 1.0, -3.0);
    const auto V = PotentialSpec::step(1.0, 0.0);
    BoxScheduleSpec spec;
    spec.final_outer = bounding_box(g);
    spec.box_stages = 1;
    spec.singular = {{0.0}};
    spec.initial_hole_half_width = 1.0;
    spec.hole_shrink = 0.5;
    spec.hole_stages = 4;
    const auto report = converge_in_boxes(psi, psi, V, kUnit, SlicingConfig::from(kUnit, 8), make_box_schedule(spec, 8), 1e-3);
    const auto& st = report.stages;
    bool monotone = true;
    for (std::size_t s = 2; s < st.size(); ++s) monotone = monotone && *st[s].difference < *st[s - 1].difference;
    o.check(monotone, "diffs shrinking (last/first %.2e, need < %.0f)", *st.back().difference / *st[1].difference, 1);
    o.check(*st.back().difference < 1e-3, "final diff %.2e (tol %.0e)", *st.back().difference, 1e-3);
    const Complex ref = amplitude_reference(psi, StateSpec::gaussian(1.0, {-3.0}), V, kUnit, ReferenceMethod::spectral, 8);
    const double e = rel(st.back().amplitude, ref);
    o.check(e < 5e-3, "limit vs spectral %.2e (tol %.0e)", e, 5e-3);
    return o;
}

Outcome schwarz() {
    Outcome o;
    std::mt19937 rng(15);
    const auto g = make_grid_1d(-8, 8, 512);
    const auto V = PotentialSpec::harmonic(1.0);
    const auto slicing = SlicingConfig::from(kUnit, 2);
    std::uniform_real_distribution<double> pos(-3, 3), width(0.1, 1.0), outer(5, 8);
    double worst = INFINITY;
    for (int t = 0; t < 20; ++t) {
        const auto phi = testing_support::random_gaussian(rng, g);
        const auto psi0 = testing_support::random_gaussian(rng, g);
        const ExcisedRegion r{{{-outer(rng)}, {outer(rng)}}, {ExcisionBox{{pos(rng)}, {width(rng)}, {width(rng)}}}};
        const auto p = rho(psi0, V, kUnit, slicing, QuadratureConfig::uniform(full_region(g), 2));
        const auto h = rho(psi0, V, kUnit, slicing, QuadratureConfig::uniform(r, 2));
        const double actual = std::abs(bilinear_pair(phi, p) - bilinear_pair(apply_mask(phi, r), h));
        worst = std::min(worst, schwarz_truncation_bound(phi, p, h, r).total - actual);
    }
    o.check(worst >= -1e-12, "min margin over 20 instances %.3e (slack %.0e)", worst, 1e-12);
    return o;
}

Outcome invariants() {
    Outcome o;
    std::mt19937 rng(6);
    const auto g = make_grid_1d(-10, 10, 1000);
    const auto psi = testing_support::random_gaussian(rng, g);
    const auto other = testing_support::random_gaussian(rng, g);
    const ExcisedRegion r{{{-8}, {9}}, {ExcisionBox{{0.5}, {0.4}, {0.7}}, ExcisionBox::symmetric({-3}, 0.3)}};

    const auto m = apply_mask(psi, r);
    const double idem = max_abs_difference(apply_mask(m, r), m);
    const double a = l2_norm(m), b = tail_mass(psi, r), n = l2_norm(psi);
    o.check(idem <= 1e-12, "mask idempotence %.1e (tol %.0e)", idem, 1e-12);
    o.check(std::abs(a * a + b * b - n * n) <= 1e-12, "Pythagoras %.1e (tol %.0e)", std::abs(a * a + b * b - n * n), 1e-12);

    double modulus = 0.0;
    const KernelTable table(g, 0.3, kUnit);
    for (Complex v : table.axis_values(0)) modulus = std::max(modulus, std::abs(std::abs(v) - 1.0));
    o.check(modulus <= 4 * DBL_EPSILON, "kernel |K|-1 %.1e (rounding limit %.1e)", modulus, 4 * DBL_EPSILON);

    const double unitary = std::abs(l2_norm(spectral_free_step(psi, 0.7, kUnit)) - n);
    o.check(unitary <= 1e-12, "spectral unitarity %.1e (tol %.0e)", unitary, 1e-12);

    const auto V = PotentialSpec::harmonic(1.0);
    const auto q = QuadratureConfig::uniform(r, 2);
    const auto back = kUnit.with_time(-kUnit.t);
    const double tr = max_abs_difference(conjugate(rho(psi, V, kUnit, SlicingConfig::from(kUnit, 2), q)),
                                         rho(conjugate(psi), V, back, SlicingConfig::from(back, 2), q));
    o.check(tr <= 1e-10, "time reversal %.1e (tol %.0e)", tr, 1e-10);

    const Complex al(0.3, -1.1), be(-0.8, 0.5);
    const auto s2 = SlicingConfig::from(kUnit, 2);
    const double lin = max_abs_difference(rho(combine(al, psi, be, other), V, kUnit, s2, q),
                                          combine(al, rho(psi, V, kUnit, s2, q), be, rho(other, V, kUnit, s2, q)));
    o.check(lin <= 1e-13, "linearity %.1e (tol %.0e)", lin, 1e-13);

    // Fresnel: weight * integral of exp(i x^2/(2 eps)) over [-50, 50], eps = 0.1, composite Simpson.
    const double eps = 0.1, cut = 50.0;
    const std::size_t intervals = 2'000'000;
    const double h = 2 * cut / static_cast<double>(intervals);
    Complex sum{};
    for (std::size_t j = 0; j <= intervals; ++j) {
        const double x = -cut + h * static_cast<double>(j);
        sum += ((j == 0 || j == intervals) ? 1.0 : (j % 2 ? 4.0 : 2.0)) * std::polar(1.0, x * x / (2 * eps));
    }
    const double fres = std::abs(slice_weight(1, kUnit, eps) * sum * (h / 3.0) - 1.0);
    o.check(fres < 0.01, "Fresnel |I-1| %.2e (tol %.0e)", fres, 0.01);

    StepOptions fast;
    fast.path = SummationPath::fast;
    const double fd = relative_l2_error(free_step_truncated(psi, r, 0.25, kUnit, fast), free_step_truncated(psi, r, 0.25, kUnit));
    o.check(fd <= 1e-12, "fast vs direct %.1e (tol %.0e)", fd, 1e-12);
    return o;
}

Outcome determinism() {
    Outcome o;
    const json doc = json::parse(R"({
      "physical": {"t": 0.5},
      "grid": {"lower": [-10], "upper": [10], "samples": [1024]},
      "potential": {"kind": "step", "height": 1.0, "edge": 0.0},
      "initial_state": {"sigma": 1.0, "center": [-3.0], "momentum": [0.5]},
      "final_state": {"sigma": 1.0, "center": [-2.0]},
      "slicing": {"k": 4, "k_schedule": [2, 3, 4]},
      "regions": {"box_stages": 2, "outer_growth": 1.25, "holes": [[0.0]], "hole_stages": 3},
      "quadrature": {"threads": 1},
      "reference": {"method": "spectral", "k": 4}
    })");
    json threaded = doc;
    threaded["quadrature"]["threads"] = 4;
    int runs = 0;
    bool same = true;
    for (auto run : {cli_amplitude, cli_converge_k, cli_converge_box}) {
        const auto a = run(parse_config(doc));
        const auto b = run(parse_config(doc));
        const auto c = run(parse_config(threaded));
        const std::string ra = without_timing(a.record).dump();
        same = same && ra == without_timing(b.record).dump() && ra == without_timing(c.record).dump() &&
               a.csv == b.csv && a.csv == c.csv;
        runs += 3;
    }
    o.check(same, "%.0f records byte-identical modulo timing (threads 1 and 4)%.0s", runs, 0);
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, "free-evolution exactness", free_evolution},
        {2, "first-order Trotter convergence", trotter_order},
        {3, "sliced evaluator vs split-step", evaluator_vs_split_step},
        {4, "excision convergence", excision},
        {5, "Schwarz bound validity", schwarz},
        {6, "invariant suite", invariants},
        {7, "determinism", determinism},
    };
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));

    bool ok = true;
    for (const auto& c : all) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        std::printf("%s %d %s: %s\n", out.pass ? "PASS" : "FAIL", c.id, c.title, out.detail.c_str());
        std::fflush(stdout);
        ok = ok && out.pass;
    }
    return ok ? 0 : 1;
}
