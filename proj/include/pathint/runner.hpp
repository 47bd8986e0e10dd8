#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>

#include "config.hpp"

namespace pathint {

enum ExitCode : int { kExitOk = 0, kExitInvalid = 1, kExitGuard = 2, kExitNotConverged = 3 };

/// One finished run: the structured record, the optional per-stage CSV and the process exit code.
struct RunOutcome {
    json record;
    std::string csv;
    int exit_code = kExitOk;
};

inline std::string fnv1a_digest(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace detail {

/// Builds record fields, replacing non-finite numbers by null plus a diagnostic.
class RecordWriter {
public:
    json number(double v, const std::string& field) {
        if (std::isfinite(v)) return v;
        messages_.push_back("non-finite value suppressed in " + field);
        return nullptr;
    }
    json complex(Complex z, const std::string& field) {
        return json{{"re", number(z.real(), field + ".re")}, {"im", number(z.imag(), field + ".im")}};
    }
    std::vector<std::string>& messages() { return messages_; }

private:
    std::vector<std::string> messages_;
};

inline std::string csv_number(double v) {
    if (!std::isfinite(v)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string stages_csv(const ConvergenceReport& report, const std::vector<std::optional<double>>& bounds) {
    std::string s = "stage,k,outer_extent,hole_width,re,im,diff,bound\n";
    for (std::size_t i = 0; i < report.stages.size(); ++i) {
        const auto& st = report.stages[i];
        s += std::to_string(i) + "," + std::to_string(st.k) + "," + csv_number(st.outer_extent) + "," +
             csv_number(st.hole_width) + "," + csv_number(st.amplitude.real()) + "," +
             csv_number(st.amplitude.imag()) + "," + (st.difference ? csv_number(*st.difference) : "") + "," +
             (i < bounds.size() && bounds[i] ? csv_number(*bounds[i]) : "") + "\n";
    }
    return s;
}

inline json base_record(const RunConfig& cfg, const char* command) {
    return json{{"schema", "pathint.result/1"},
                {"command", command},
                {"config_digest", fnv1a_digest(cfg.canonical.dump())},
                {"status", "ok"}};
}

inline json phase_json(RecordWriter& w, const PhaseDiagnostic& d) {
    return json{{"max_increment", w.number(d.max_increment, "phase_guard.max_increment")},
                {"status", to_string(d.status)}};
}

inline json diagnostics(RecordWriter& w, const RunConfig& cfg, double epsilon) {
    const Wavefunction psi0 = cfg.initial.sample(cfg.grid, cfg.physical.hbar);
    const Wavefunction phi = cfg.final_state.sample(cfg.grid, cfg.physical.hbar);
    const ExcisedRegion region = cfg.final_region();
    return json{{"phase_guard", phase_json(w, phase_resolution_check(cfg.grid, epsilon, cfg.physical))},
                {"boundary_mass", {{"initial", w.number(boundary_mass(psi0), "boundary_mass.initial")},
                                   {"final", w.number(boundary_mass(phi), "boundary_mass.final")}}},
                {"tail_mass", {{"initial", w.number(tail_mass(psi0, region), "tail_mass.initial")},
                               {"final", w.number(tail_mass(phi, region), "tail_mass.final")}}}};
}

inline json reference_json(RecordWriter& w, const RunConfig& cfg, Complex computed) {
    if (!cfg.reference) return nullptr;
    const Wavefunction phi = cfg.final_state.sample(cfg.grid, cfg.physical.hbar);
    const Complex ref = amplitude_reference(phi, cfg.initial, cfg.potential, cfg.physical, *cfg.reference,
                                            cfg.reference_k, cfg.quadrature.threads);
    const double rel = std::abs(computed - ref) / std::max(std::abs(ref), 1e-300);
    return json{{"method", to_string(*cfg.reference)},
                {"amplitude", w.complex(ref, "reference.amplitude")},
                {"relative_difference", w.number(rel, "reference.relative_difference")},
                {"within_tolerance", rel <= cfg.tolerance}};
}

inline json stages_json(RecordWriter& w, const ConvergenceReport& report,
                        const std::vector<std::optional<double>>& bounds) {
    json arr = json::array();
    for (std::size_t i = 0; i < report.stages.size(); ++i) {
        const auto& st = report.stages[i];
        const std::string f = "stages[" + std::to_string(i) + "]";
        arr.push_back({{"stage", i},
                       {"k", st.k},
                       {"outer_extent", w.number(st.outer_extent, f + ".outer_extent")},
                       {"hole_width", w.number(st.hole_width, f + ".hole_width")},
                       {"amplitude", w.complex(st.amplitude, f + ".amplitude")},
                       {"difference", st.difference ? w.number(*st.difference, f + ".difference") : json(nullptr)},
                       {"bound", i < bounds.size() && bounds[i] ? w.number(*bounds[i], f + ".bound") : json(nullptr)}});
    }
    return arr;
}

inline json convergence_json(RecordWriter& w, const ConvergenceReport& r) {
    return json{{"converged", r.converged},
                {"final_estimate", w.complex(r.final_estimate, "convergence.final_estimate")},
                {"bound", w.number(r.bound, "convergence.bound")},
                {"order", r.order ? w.number(*r.order, "convergence.order") : json(nullptr)},
                {"tolerance", w.number(r.tolerance, "convergence.tolerance")}};
}

/// Runs body, turning guard refusals into a structured guard_failure record.
template <class Body>
RunOutcome guarded(const RunConfig& cfg, const char* command, Body&& body) {
    const auto start = std::chrono::steady_clock::now();
    RunOutcome out;
    RecordWriter w;
    out.record = base_record(cfg, command);
    try {
        body(out, w);
    } catch (const GuardError& e) {
        out.record["status"] = "guard_failure";
        out.record["guard"] = {{"name", e.guard()},
                               {"measured", w.number(e.measured(), "guard.measured")},
                               {"threshold", w.number(e.threshold(), "guard.threshold")},
                               {"message", e.what()}};
        out.exit_code = kExitGuard;
    }
    json& diag = out.record["diagnostics"];
    if (diag.is_null()) diag = json::object();
    diag["messages"] = w.messages();
    out.record["wall_time_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

}  // namespace detail

/// Single amplitude at k slices on the final region.
inline RunOutcome cli_amplitude(const RunConfig& cfg) {
    return detail::guarded(cfg, "amplitude", [&](RunOutcome& out, detail::RecordWriter& w) {
        const auto slicing = SlicingConfig::from(cfg.physical, cfg.k);
        out.record["diagnostics"] = detail::diagnostics(w, cfg, slicing.epsilon);
        const Wavefunction psi0 = cfg.initial.sample(cfg.grid, cfg.physical.hbar);
        const Wavefunction phi = cfg.final_state.sample(cfg.grid, cfg.physical.hbar);
        const auto quad = QuadratureConfig::uniform(cfg.final_region(), cfg.k, cfg.quadrature);
        const Complex a = amplitude_time_sliced(phi, psi0, cfg.potential, cfg.physical, slicing, quad);
        out.record["k"] = cfg.k;
        out.record["amplitude"] = w.complex(a, "amplitude");
        out.record["reference"] = detail::reference_json(w, cfg, a);
        ConvergenceReport single;
        single.stages.push_back({cfg.k, cfg.final_region().outer.max_extent(), cfg.final_region().max_hole_half_width(), a, {}, {}});
        out.csv = detail::stages_csv(single, {});
    });
}

/// Amplitudes over the k schedule on the final region.
inline RunOutcome cli_converge_k(const RunConfig& cfg) {
    return detail::guarded(cfg, "converge-k", [&](RunOutcome& out, detail::RecordWriter& w) {
        const auto first = SlicingConfig::from(cfg.physical, cfg.k_schedule.back());
        out.record["diagnostics"] = detail::diagnostics(w, cfg, first.epsilon);
        const Wavefunction psi0 = cfg.initial.sample(cfg.grid, cfg.physical.hbar);
        const Wavefunction phi = cfg.final_state.sample(cfg.grid, cfg.physical.hbar);
        const auto report = converge_in_k(phi, psi0, cfg.potential, cfg.physical, cfg.k_schedule, cfg.final_region(),
                                          cfg.tolerance, cfg.quadrature);
        out.record["amplitude"] = w.complex(report.final_estimate, "amplitude");
        out.record["stages"] = detail::stages_json(w, report, {});
        out.record["convergence"] = detail::convergence_json(w, report);
        out.record["reference"] = detail::reference_json(w, cfg, report.final_estimate);
        out.csv = detail::stages_csv(report, {});
        if (!report.converged) {
            out.record["status"] = "not_converged";
            out.exit_code = kExitNotConverged;
        }
    });
}

/// Amplitudes over the box/hole schedule at k slices, with Schwarz bounds against the last stage.
inline RunOutcome cli_converge_box(const RunConfig& cfg) {
    return detail::guarded(cfg, "converge-box", [&](RunOutcome& out, detail::RecordWriter& w) {
        const auto slicing = SlicingConfig::from(cfg.physical, cfg.k);
        out.record["diagnostics"] = detail::diagnostics(w, cfg, slicing.epsilon);
        const Wavefunction psi0 = cfg.initial.sample(cfg.grid, cfg.physical.hbar);
        const Wavefunction phi = cfg.final_state.sample(cfg.grid, cfg.physical.hbar);
        const auto schedule = make_box_schedule(cfg.box_schedule(), cfg.k);
        const auto report = converge_in_boxes(phi, psi0, cfg.potential, cfg.physical, slicing, schedule,
                                              cfg.tolerance, cfg.quadrature);
        std::vector<std::optional<double>> bounds;
        for (const auto& st : report.stages) bounds.push_back(st.bound);
        out.record["amplitude"] = w.complex(report.final_estimate, "amplitude");
        out.record["stages"] = detail::stages_json(w, report, bounds);
        out.record["convergence"] = detail::convergence_json(w, report);
        out.record["reference"] = detail::reference_json(w, cfg, report.final_estimate);
        out.csv = detail::stages_csv(report, bounds);
        if (!report.converged) {
            out.record["status"] = "not_converged";
            out.exit_code = kExitNotConverged;
        }
    });
}

/// The record with run-local timing removed, as compared by determinism checks.
inline json without_timing(json record) {
    record.erase("wall_time_seconds");
    return record;
}

}  // namespace pathint
