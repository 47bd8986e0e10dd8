#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "drivers.hpp"
#include "reference.hpp"
#include "states.hpp"

namespace pathint {

using json = nlohmann::json;

/// Thrown by parse_config with every violated invariant listed.
class ConfigValidationError : public ConfigError {
public:
    explicit ConfigValidationError(std::vector<std::string> errors)
        : ConfigError(join(errors)), errors_(std::move(errors)) {}
    const std::vector<std::string>& errors() const { return errors_; }

private:
    static std::string join(const std::vector<std::string>& e) {
        std::string s = "invalid configuration";
        for (const auto& x : e) s += "; " + x;
        return s;
    }
    std::vector<std::string> errors_;
};

struct RegionScheduleConfig {
    std::optional<Box> final_outer;  ///< defaults to the grid box
    double outer_growth = 2.0;
    std::size_t box_stages = 3;
    double hole_half_width = 1.0;
    double hole_shrink = 0.5;
    std::size_t hole_stages = 4;
    bool auto_holes = true;
    std::vector<Point> hole_centers;  ///< used when auto_holes is false
};

struct RunConfig {
    PhysicalParams physical;
    PotentialSpec potential;
    StateSpec initial;
    StateSpec final_state;
    GridSpec grid;
    std::size_t k = 8;
    std::vector<std::size_t> k_schedule{8, 16, 32, 64};
    RegionScheduleConfig regions;
    StepOptions quadrature;
    double tolerance = 1e-4;
    std::optional<ReferenceMethod> reference;
    std::size_t reference_k = 64;
    std::string out_path;
    std::string csv_path;
    json canonical;  ///< effective config without run-local fields, for digests

    /// Union of the singular sets of phi, psi and V.
    std::vector<Point> singular_set() const {
        std::vector<Point> k;
        auto add = [&](const std::vector<Point>& pts) {
            for (const auto& p : pts)
                if (!near_any(p, k)) k.push_back(p);
        };
        add(initial.singular_points());
        add(final_state.singular_points());
        add(potential.singular_points());
        return k;
    }

    std::vector<Point> hole_centers() const { return regions.auto_holes ? singular_set() : regions.hole_centers; }

    BoxScheduleSpec box_schedule() const {
        BoxScheduleSpec s;
        s.final_outer = regions.final_outer.value_or(bounding_box(grid));
        s.outer_growth = regions.outer_growth;
        s.box_stages = regions.box_stages;
        s.singular = hole_centers();
        s.initial_hole_half_width = regions.hole_half_width;
        s.hole_shrink = regions.hole_shrink;
        s.hole_stages = regions.hole_stages;
        return s;
    }

    /// The largest-box, smallest-hole region used by single-schedule runs.
    ExcisedRegion final_region() const {
        const auto spec = box_schedule();
        const double hole = spec.initial_hole_half_width *
                            std::pow(spec.hole_shrink, static_cast<double>(spec.hole_stages - 1));
        return region_with_holes(spec.final_outer, spec.singular, hole);
    }
};

namespace detail {

inline std::vector<double> number_list(const json& j, const char* what) {
    if (j.is_number()) return {j.get<double>()};
    if (!j.is_array()) throw ConfigError(std::string(what) + " must be a number or an array of numbers");
    std::vector<double> v;
    for (const auto& e : j) {
        if (!e.is_number()) throw ConfigError(std::string(what) + " must contain only numbers");
        v.push_back(e.get<double>());
    }
    return v;
}

inline std::vector<Point> point_list(const json& j, const char* what) {
    std::vector<Point> pts;
    if (!j.is_array()) throw ConfigError(std::string(what) + " must be an array of points");
    for (const auto& e : j) pts.push_back(number_list(e, what));
    return pts;
}

inline double number_or(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ConfigError(std::string(key) + " must be a number");
    return j.at(key).get<double>();
}

inline std::size_t count_or(const json& j, const char* key, std::size_t fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer() || j.at(key).get<long long>() < 0)
        throw ConfigError(std::string(key) + " must be a non-negative integer");
    return j.at(key).get<std::size_t>();
}

inline GridSpec parse_grid(const json& j) {
    const auto lo = number_list(j.at("lower"), "grid.lower");
    const auto hi = number_list(j.at("upper"), "grid.upper");
    const auto ns = number_list(j.at("samples"), "grid.samples");
    std::vector<std::size_t> counts;
    for (double n : ns) {
        if (n < 0 || n != std::floor(n)) throw ConfigError("grid.samples must be non-negative integers");
        counts.push_back(static_cast<std::size_t>(n));
    }
    return make_grid(lo, hi, counts);
}

inline PotentialSpec parse_potential(const json& j, double mass) {
    const std::string kind = j.value("kind", "zero");
    if (kind == "zero") return PotentialSpec::zero();
    if (kind == "harmonic") return PotentialSpec::harmonic(number_or(j, "omega", 1.0), mass);
    if (kind == "step") return PotentialSpec::step(number_or(j, "height", 1.0), number_or(j, "edge", 0.0));
    if (kind == "inverse_distance")
        return PotentialSpec::inverse_distance(number_or(j, "strength", 1.0), number_list(j.at("center"), "potential.center"));
    if (kind == "constant") return PotentialSpec::constant(number_or(j, "value", 0.0));
    if (kind == "tabulated")
        return PotentialSpec::tabulated(number_list(j.at("nodes"), "potential.nodes"),
                                        number_list(j.at("values"), "potential.values"),
                                        j.contains("singular_points") ? point_list(j.at("singular_points"), "potential.singular_points")
                                                                      : std::vector<Point>{});
    throw ConfigError("unknown potential kind '" + kind + "'");
}

inline StateSpec parse_state(const json& j, std::size_t dim, const char* what) {
    const std::string kind = j.value("kind", "gaussian");
    const bool conj = j.value("conjugate", false);
    if (kind == "gaussian") {
        Point center = j.contains("center") ? number_list(j.at("center"), what) : Point(dim, 0.0);
        Point momentum = j.contains("momentum") ? number_list(j.at("momentum"), what) : Point(dim, 0.0);
        const double sigma = number_or(j, "sigma", 1.0);
        if (!(sigma > 0.0)) throw ConfigError(std::string(what) + ": sigma must be positive");
        return StateSpec(GaussianPacket{sigma, std::move(center), std::move(momentum)}, conj);
    }
    if (kind == "box")
        return StateSpec(BoxState{number_or(j, "lower", -1.0), number_or(j, "upper", 1.0), number_or(j, "height", 1.0)}, conj);
    if (kind == "tabulated") {
        TabulatedState t;
        for (const auto& e : j.at("values")) {
            const auto v = number_list(e, what);
            t.values.emplace_back(v.at(0), v.size() > 1 ? v[1] : 0.0);
        }
        if (j.contains("singular_points")) t.singular_points = point_list(j.at("singular_points"), what);
        return StateSpec(std::move(t), conj);
    }
    throw ConfigError(std::string(what) + ": unknown state kind '" + kind + "'");
}

inline GuardPolicy parse_policy(const std::string& s) {
    if (s == "enforce") return GuardPolicy::enforce;
    if (s == "warn") return GuardPolicy::warn;
    if (s == "off") return GuardPolicy::off;
    throw ConfigError("quadrature.policy must be enforce, warn or off");
}

inline SummationPath parse_path(const std::string& s) {
    if (s == "direct") return SummationPath::direct;
    if (s == "fast") return SummationPath::fast;
    throw ConfigError("quadrature.path must be direct or fast");
}

inline std::optional<ReferenceMethod> parse_reference(const std::string& s) {
    if (s == "none") return std::nullopt;
    if (s == "spectral") return ReferenceMethod::spectral;
    if (s == "mehler") return ReferenceMethod::mehler;
    if (s == "free_exact") return ReferenceMethod::free_exact;
    throw ConfigError("reference.method must be none, spectral, mehler or free_exact");
}

/// Runs one parsing step, turning any failure into an error line.
template <class F>
void collect(std::vector<std::string>& errors, const char* section, F&& f) {
    try {
        f();
    } catch (const json::exception& e) {
        errors.push_back(std::string(section) + ": " + e.what());
    } catch (const std::exception& e) {
        errors.push_back(std::string(section) + ": " + e.what());
    }
}

}  // namespace detail

/// Parses and validates a run configuration; ConfigValidationError lists every violation.
inline RunConfig parse_config(const json& doc) {
    std::vector<std::string> errors;
    RunConfig cfg;
    if (!doc.is_object()) throw ConfigValidationError({"configuration must be a JSON object"});

    bool grid_ok = false;
    detail::collect(errors, "physical", [&] {
        const json& p = doc.at("physical");
        cfg.physical = {detail::number_or(p, "m", 1.0), detail::number_or(p, "hbar", 1.0), p.at("t").get<double>()};
        cfg.physical.validate();
        if (cfg.physical.t == 0.0) throw ConfigError("t must be non-zero for slice propagation");
    });
    detail::collect(errors, "grid", [&] {
        cfg.grid = detail::parse_grid(doc.at("grid"));
        grid_ok = true;
    });
    detail::collect(errors, "potential", [&] {
        cfg.potential = detail::parse_potential(doc.value("potential", json::object()), cfg.physical.m);
    });
    const std::size_t dim = grid_ok ? cfg.grid.dim() : 1;
    detail::collect(errors, "initial_state", [&] {
        cfg.initial = detail::parse_state(doc.value("initial_state", json::object()), dim, "initial_state");
        if (grid_ok) (void)cfg.initial.sample(cfg.grid, cfg.physical.hbar);
    });
    detail::collect(errors, "final_state", [&] {
        cfg.final_state = detail::parse_state(doc.value("final_state", json::object()), dim, "final_state");
        if (grid_ok) (void)cfg.final_state.sample(cfg.grid, cfg.physical.hbar);
    });
    detail::collect(errors, "slicing", [&] {
        const json s = doc.value("slicing", json::object());
        cfg.k = detail::count_or(s, "k", cfg.k);
        if (cfg.k < 1) throw ConfigError("k must be at least 1");
        if (s.contains("k_schedule")) {
            cfg.k_schedule.clear();
            for (const auto& e : s.at("k_schedule")) cfg.k_schedule.push_back(e.get<std::size_t>());
        }
        if (cfg.k_schedule.size() < 3) throw ConfigError("k_schedule needs at least 3 entries");
        for (std::size_t i = 0; i < cfg.k_schedule.size(); ++i)
            if (cfg.k_schedule[i] < 1 || (i > 0 && cfg.k_schedule[i] <= cfg.k_schedule[i - 1]))
                throw ConfigError("k_schedule must be strictly increasing positive integers");
    });
    detail::collect(errors, "regions", [&] {
        const json r = doc.value("regions", json::object());
        auto& rc = cfg.regions;
        if (r.contains("outer_lower") || r.contains("outer_upper"))
            rc.final_outer = Box{detail::number_list(r.at("outer_lower"), "regions.outer_lower"),
                                 detail::number_list(r.at("outer_upper"), "regions.outer_upper")};
        rc.outer_growth = detail::number_or(r, "outer_growth", rc.outer_growth);
        rc.box_stages = detail::count_or(r, "box_stages", rc.box_stages);
        rc.hole_half_width = detail::number_or(r, "hole_half_width", rc.hole_half_width);
        rc.hole_shrink = detail::number_or(r, "hole_shrink", rc.hole_shrink);
        rc.hole_stages = detail::count_or(r, "hole_stages", rc.hole_stages);
        if (r.contains("holes") && !(r.at("holes").is_string() && r.at("holes") == "auto")) {
            rc.auto_holes = false;
            rc.hole_centers = detail::point_list(r.at("holes"), "regions.holes");
        }
        if (rc.box_stages < 1 || rc.hole_stages < 1) throw ConfigError("stage counts must be at least 1");
        if (!(rc.outer_growth >= 1.0)) throw ConfigError("outer_growth must be >= 1");
        if (!(rc.hole_shrink > 0.0 && rc.hole_shrink <= 1.0)) throw ConfigError("hole_shrink must be in (0, 1]");
        if (!(rc.hole_half_width > 0.0)) throw ConfigError("hole_half_width must be positive");
    });
    detail::collect(errors, "quadrature", [&] {
        const json q = doc.value("quadrature", json::object());
        cfg.quadrature.policy = detail::parse_policy(q.value("policy", "enforce"));
        cfg.quadrature.path = detail::parse_path(q.value("path", "direct"));
        cfg.quadrature.threads = static_cast<unsigned>(detail::count_or(q, "threads", 0));
    });
    detail::collect(errors, "tolerance", [&] {
        cfg.tolerance = detail::number_or(doc, "tolerance", cfg.tolerance);
        if (!(cfg.tolerance > 0.0) || !std::isfinite(cfg.tolerance)) throw ConfigError("tolerance must be positive");
    });
    detail::collect(errors, "reference", [&] {
        const json r = doc.value("reference", json::object());
        cfg.reference = detail::parse_reference(r.value("method", "none"));
        cfg.reference_k = detail::count_or(r, "k", cfg.reference_k);
        if (cfg.reference_k < 1) throw ConfigError("reference.k must be at least 1");
        if (cfg.reference == ReferenceMethod::mehler && !std::holds_alternative<HarmonicPotential>(cfg.potential.kind()))
            throw ConfigError("mehler reference requires a harmonic potential");
        if (cfg.reference == ReferenceMethod::free_exact && (!cfg.potential.is_zero() || !cfg.initial.as_gaussian()))
            throw ConfigError("free_exact reference requires V == 0 and a Gaussian initial state");
    });
    detail::collect(errors, "output", [&] {
        const json o = doc.value("output", json::object());
        cfg.out_path = o.value("record", "");
        cfg.csv_path = o.value("csv", "");
    });

    // Cross-section invariants.
    if (grid_ok && errors.empty()) {
        const Box grid_box = bounding_box(cfg.grid);
        if (cfg.regions.final_outer) {
            const Box& fo = *cfg.regions.final_outer;
            if (fo.dim() != cfg.grid.dim())
                errors.push_back("regions: outer box dimension differs from grid");
            else if (!grid_box.contains(fo))
                errors.push_back("regions: grid does not cover the outer box");
        }
        const auto K = cfg.singular_set();
        const auto centers = cfg.hole_centers();
        for (const auto& y : K)
            if (!near_any(y, centers))
                errors.push_back("regions: singular point " + format_point(y) + " is not the center of any hole");
        for (const auto& c : centers)
            if (c.size() != cfg.grid.dim()) errors.push_back("regions: hole center dimension differs from grid");
        if (errors.empty()) {
            // Every non-excised grid point must be a regular point of V.
            const ExcisedRegion r = cfg.final_region();
            for (std::size_t i = 0; i < cfg.grid.size(); ++i) {
                const Point x = cfg.grid.point(i);
                if (region_membership(r, x) && cfg.potential.is_singular_at(x)) {
                    errors.push_back("potential: grid point " + format_point(x) + " is singular but not excised");
                    break;
                }
            }
        }
    }
    if (!errors.empty()) throw ConfigValidationError(std::move(errors));

    cfg.canonical = doc;
    if (cfg.canonical.contains("output")) cfg.canonical.erase("output");
    if (cfg.canonical.contains("quadrature") && cfg.canonical["quadrature"].is_object()) {
        cfg.canonical["quadrature"].erase("threads");
        if (cfg.canonical["quadrature"].empty()) cfg.canonical.erase("quadrature");
    }
    cfg.canonical["tolerance"] = cfg.tolerance;
    return cfg;
}

}  // namespace pathint
