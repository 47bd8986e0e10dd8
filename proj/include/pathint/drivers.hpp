#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include "sliced.hpp"

namespace pathint {

struct ConvergenceStage {
    std::size_t k = 0;
    double outer_extent = 0.0;  ///< largest outer-box side over all slices
    double hole_width = 0.0;    ///< largest hole half-width over all slices
    Complex amplitude;
    std::optional<double> difference;  ///< |A_s - A_{s-1}|, absent for the first stage
    std::optional<double> bound;       ///< Schwarz bound on |A_last - A_s| (box drivers only)
};

struct ConvergenceReport {
    std::vector<ConvergenceStage> stages;
    bool converged = false;
    Complex final_estimate;
    double bound = 0.0;
    std::optional<double> order;  ///< fitted p in diff ~ C k^{-p} (k drivers only)
    double tolerance = 0.0;
};

/// Differences below this fraction of |A| are roundoff and compare as zero.
inline constexpr double kDifferenceNoiseFloor = 1e-12;

namespace detail {

inline void fill_differences(ConvergenceReport& report) {
    for (std::size_t s = 1; s < report.stages.size(); ++s)
        report.stages[s].difference = std::abs(report.stages[s].amplitude - report.stages[s - 1].amplitude);
}

/// Last two differences below tol*|A| and not increasing.
inline bool tail_converged(const ConvergenceReport& report) {
    const auto& st = report.stages;
    if (st.size() < 3) return false;
    const double scale = std::abs(st.back().amplitude) > 0.0 ? std::abs(st.back().amplitude) : 1.0;
    const double floor = kDifferenceNoiseFloor * scale;
    auto clamp = [&](double d) { return d <= floor ? 0.0 : d; };
    const double prev = *st[st.size() - 2].difference;
    const double last = *st.back().difference;
    return prev < report.tolerance * scale && last < report.tolerance * scale && clamp(last) <= clamp(prev);
}

inline double family_outer_extent(const RegionFamily& f) {
    double e = 0.0;
    for (const auto& r : f.regions) e = std::max(e, r.outer.max_extent());
    return e;
}

inline double family_hole_width(const RegionFamily& f) {
    double w = 0.0;
    for (const auto& r : f.regions) w = std::max(w, r.max_hole_half_width());
    return w;
}

/// Stage s+1 must contain stage s slice by slice: outer boxes grow, each hole shrinks inside its predecessor.
inline void require_monotone(std::span<const RegionFamily> schedule) {
    for (std::size_t s = 1; s < schedule.size(); ++s) {
        const auto& prev = schedule[s - 1];
        const auto& next = schedule[s];
        if (prev.regions.size() != next.regions.size())
            throw ConfigError("box schedule stages have different slice counts");
        for (std::size_t l = 0; l < next.regions.size(); ++l) {
            const auto& a = prev.regions[l];
            const auto& b = next.regions[l];
            if (!b.outer.contains(a.outer))
                throw ConfigError("box schedule is not monotone: outer box shrinks at stage " + std::to_string(s) +
                                  ", slice " + std::to_string(l));
            if (a.holes.size() != b.holes.size())
                throw ConfigError("box schedule changes the number of holes at stage " + std::to_string(s));
            for (std::size_t q = 0; q < a.holes.size(); ++q)
                if (!b.holes[q].within(a.holes[q]))
                    throw ConfigError("box schedule is not monotone: hole " + std::to_string(q) +
                                      " grows at stage " + std::to_string(s) + ", slice " + std::to_string(l));
        }
    }
}

}  // namespace detail

/// Amplitudes along a growing-box / shrinking-hole schedule at fixed k.
inline ConvergenceReport converge_in_boxes(const Wavefunction& phi, const Wavefunction& psi0, const PotentialSpec& V,
                                           const PhysicalParams& params, const SlicingConfig& slicing,
                                           std::span<const RegionFamily> schedule, double tolerance,
                                           const StepOptions& options = {}) {
    if (schedule.empty()) throw ConfigError("box schedule is empty");
    if (!(tolerance > 0.0)) throw ConfigError("tolerance must be positive");
    detail::require_monotone(schedule);
    ConvergenceReport report;
    report.tolerance = tolerance;
    require_same_grid(phi.grid(), psi0.grid(), "converge_in_boxes");
    std::vector<Wavefunction> propagated;
    for (const auto& family : schedule) {
        const QuadratureConfig quad{family, options};
        detail::require_family(quad, slicing.k);
        ConvergenceStage st;
        st.k = slicing.k;
        st.outer_extent = detail::family_outer_extent(family);
        st.hole_width = detail::family_hole_width(family);
        propagated.push_back(rho(psi0, V, params, slicing, quad));
        st.amplitude = bilinear_pair(apply_mask(phi, family[slicing.k]), propagated.back());
        report.stages.push_back(st);
    }
    // f = phi, p = last-stage rho, h = stage rho, chi = stage C^k.
    for (std::size_t s = 0; s < report.stages.size(); ++s)
        report.stages[s].bound =
            schwarz_truncation_bound(phi, propagated.back(), propagated[s], schedule[s][slicing.k]).total;
    detail::fill_differences(report);
    report.converged = detail::tail_converged(report);
    report.final_estimate = report.stages.back().amplitude;
    report.bound = report.stages.size() > 1 ? *report.stages.back().difference : 0.0;
    return report;
}

/// Amplitudes along an increasing k schedule with the same region at every slice.
/// Fits diff ~ C k^{-p} by least squares and Richardson-extrapolates the last pair.
inline ConvergenceReport converge_in_k(const Wavefunction& phi, const Wavefunction& psi0, const PotentialSpec& V,
                                       const PhysicalParams& params, std::span<const std::size_t> k_schedule,
                                       const ExcisedRegion& region, double tolerance,
                                       const StepOptions& options = {}) {
    if (k_schedule.size() < 3) throw ConfigError("k schedule needs at least 3 points");
    for (std::size_t i = 1; i < k_schedule.size(); ++i)
        if (k_schedule[i] <= k_schedule[i - 1]) throw ConfigError("k schedule must be strictly increasing");
    if (k_schedule.front() < 1) throw ConfigError("k schedule entries must be at least 1");
    if (!(tolerance > 0.0)) throw ConfigError("tolerance must be positive");

    ConvergenceReport report;
    report.tolerance = tolerance;
    for (std::size_t k : k_schedule) {
        const auto slicing = SlicingConfig::from(params, k);
        ConvergenceStage st;
        st.k = k;
        st.outer_extent = region.outer.max_extent();
        st.hole_width = region.max_hole_half_width();
        st.amplitude = amplitude_time_sliced(phi, psi0, V, params, slicing, QuadratureConfig::uniform(region, k, options));
        report.stages.push_back(st);
    }
    detail::fill_differences(report);
    report.converged = detail::tail_converged(report);

    const auto& st = report.stages;
    const double floor = kDifferenceNoiseFloor * std::max(std::abs(st.back().amplitude), 1e-300);
    // diff_s pairs (k_{s-1}, k_s); regress log diff on log k_s
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t count = 0;
    bool usable = true;
    for (std::size_t s = 1; s < st.size(); ++s) {
        const double d = *st[s].difference;
        if (!(d > floor)) {
            usable = false;
            break;
        }
        const double x = std::log(static_cast<double>(st[s].k));
        const double y = std::log(d);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++count;
    }
    const double last_diff = *st.back().difference;
    report.final_estimate = st.back().amplitude;
    report.bound = last_diff;
    if (usable && count >= 2) {
        const double c = static_cast<double>(count);
        const double slope = (c * sxy - sx * sy) / (c * sxx - sx * sx);
        const double p = -slope;
        report.order = p;
        const double ratio = static_cast<double>(st.back().k) / static_cast<double>(st[st.size() - 2].k);
        const double denom = std::pow(ratio, p) - 1.0;
        if (p > 0.0 && std::isfinite(denom) && denom > 0.0) {
            const Complex delta = st.back().amplitude - st[st.size() - 2].amplitude;
            report.final_estimate = st.back().amplitude + delta / denom;
            report.bound = last_diff / denom;
        }
    }
    return report;
}

/// Regions for one convergence stage: the outer box, plus a symmetric hole of
/// the given half-width around every point of K.
inline ExcisedRegion region_with_holes(const Box& outer, const std::vector<Point>& singular, double hole_half_width) {
    ExcisedRegion r{outer, {}};
    if (hole_half_width > 0.0)
        for (const auto& y : singular) r.holes.push_back(ExcisionBox::symmetric(y, hole_half_width));
    r.validate();
    return r;
}

/// Independent outer-growth / hole-shrink schedule. The final box stage uses
/// `final_outer`; stage s uses it scaled about its center by growth^{-(box_stages-1-s)}.
struct BoxScheduleSpec {
    Box final_outer;
    double outer_growth = 2.0;
    std::size_t box_stages = 3;
    std::vector<Point> singular;
    double initial_hole_half_width = 1.0;
    double hole_shrink = 0.5;
    std::size_t hole_stages = 4;
};

inline std::vector<RegionFamily> make_box_schedule(const BoxScheduleSpec& spec, std::size_t k) {
    if (spec.box_stages < 1 || spec.hole_stages < 1) throw ConfigError("schedules need at least one stage");
    if (!(spec.outer_growth >= 1.0)) throw ConfigError("outer growth factor must be >= 1");
    if (!(spec.hole_shrink > 0.0 && spec.hole_shrink <= 1.0)) throw ConfigError("hole shrink factor must be in (0, 1]");
    const std::size_t stages = std::max(spec.box_stages, spec.hole_stages);
    std::vector<RegionFamily> out;
    for (std::size_t s = 0; s < stages; ++s) {
        const std::size_t bs = std::min(s, spec.box_stages - 1);
        const std::size_t hs = std::min(s, spec.hole_stages - 1);
        const double scale = std::pow(spec.outer_growth, -static_cast<double>(spec.box_stages - 1 - bs));
        Box outer = spec.final_outer;
        for (std::size_t a = 0; a < outer.dim(); ++a) {
            const double c = 0.5 * (outer.lower[a] + outer.upper[a]);
            const double half = 0.5 * (outer.upper[a] - outer.lower[a]) * scale;
            outer.lower[a] = bs + 1 == spec.box_stages ? spec.final_outer.lower[a] : c - half;
            outer.upper[a] = bs + 1 == spec.box_stages ? spec.final_outer.upper[a] : c + half;
        }
        const double hole = spec.initial_hole_half_width * std::pow(spec.hole_shrink, static_cast<double>(hs));
        out.push_back(RegionFamily::uniform(region_with_holes(outer, spec.singular, hole), k));
    }
    return out;
}

}  // namespace pathint
