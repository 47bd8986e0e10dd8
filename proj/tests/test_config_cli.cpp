#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "support.hpp"

using namespace pathint;
namespace fs = std::filesystem;

namespace {

json load_demo(const std::string& name) {
    std::ifstream in(std::string(PATHINT_DEMO_DIR) + "/" + name);
    return json::parse(in);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(PATHINT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

fs::path scratch_dir() {
    const fs::path d = fs::temp_directory_path() / ("pathint_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
}

json small_free_doc() {
    return json::parse(R"({
      "physical": {"t": 0.5},
      "grid": {"lower": [-8], "upper": [8], "samples": [512]},
      "initial_state": {"sigma": 1.0},
      "final_state": {"sigma": 1.0},
      "slicing": {"k": 2, "k_schedule": [1, 2, 3]}
    })");
}

}  // namespace

TEST(Config, DemosParse) {
    for (const char* name : {"free_survival.json", "harmonic_converge_k.json", "step_converge_box.json",
                             "unresolved_phase.json"})
        EXPECT_NO_THROW(parse_config(load_demo(name))) << name;
}

TEST(Config, UndeclaredSingularPointNamed) {
    try {
        parse_config(load_demo("coulomb_unexcised.json"));
        FAIL() << "expected a validation error";
    } catch (const ConfigValidationError& e) {
        ASSERT_FALSE(e.errors().empty());
        bool named = false;
        for (const auto& msg : e.errors()) named = named || msg.find("(0)") != std::string::npos;
        EXPECT_TRUE(named) << e.errors().front();
    }
}

TEST(Config, AutoHolesCoverSingularSet) {
    json doc = load_demo("coulomb_unexcised.json");
    doc["regions"]["holes"] = "auto";
    const auto cfg = parse_config(doc);
    const auto r = cfg.final_region();
    ASSERT_EQ(r.holes.size(), 1u);
    EXPECT_FALSE(region_membership(r, {0.0}));
}

TEST(Config, CollectsEveryError) {
    json doc = small_free_doc();
    doc["physical"]["m"] = -1.0;
    doc["potential"] = {{"kind", "quartic"}};
    doc["tolerance"] = 0.0;
    doc["quadrature"] = {{"policy", "sometimes"}};
    try {
        parse_config(doc);
        FAIL();
    } catch (const ConfigValidationError& e) {
        EXPECT_GE(e.errors().size(), 4u);
    }
}

TEST(Config, RejectsBadSchedules) {
    json doc = small_free_doc();
    doc["slicing"]["k_schedule"] = {4, 2, 8};
    EXPECT_THROW(parse_config(doc), ConfigValidationError);
    doc = small_free_doc();
    doc["regions"] = {{"outer_lower", {-20}}, {"outer_upper", {20}}};
    EXPECT_THROW(parse_config(doc), ConfigValidationError);
}

TEST(Runner, FreeSurvivalMatchesOracle) {
    const auto cfg = parse_config(load_demo("free_survival.json"));
    const auto out = cli_amplitude(cfg);
    EXPECT_EQ(out.exit_code, kExitOk);
    EXPECT_EQ(out.record["status"], "ok");
    const Complex a(out.record["amplitude"]["re"].get<double>(), out.record["amplitude"]["im"].get<double>());
    EXPECT_LT(testing_support::rel(a, testing_support::free_survival(1.0, 0.5, 0.5)), cfg.tolerance);
    EXPECT_TRUE(out.record["reference"]["within_tolerance"].get<bool>());
    EXPECT_EQ(out.record["reference"]["method"], "free_exact");
    EXPECT_EQ(out.csv.substr(0, out.csv.find('\n')), "stage,k,outer_extent,hole_width,re,im,diff,bound");
}

TEST(Runner, GuardFailureRecord) {
    const auto out = cli_amplitude(parse_config(load_demo("unresolved_phase.json")));
    EXPECT_EQ(out.exit_code, kExitGuard);
    EXPECT_EQ(out.record["status"], "guard_failure");
    EXPECT_EQ(out.record["guard"]["name"], "phase_resolution");
    EXPECT_GT(out.record["guard"]["measured"].get<double>(), out.record["guard"]["threshold"].get<double>());
}

TEST(Runner, NonConvergenceExitCode) {
    json doc = small_free_doc();
    doc["potential"] = {{"kind", "harmonic"}};
    doc["tolerance"] = 1e-12;
    const auto out = cli_converge_k(parse_config(doc));
    EXPECT_EQ(out.exit_code, kExitNotConverged);
    EXPECT_EQ(out.record["status"], "not_converged");
    EXPECT_EQ(out.record["stages"].size(), 3u);
}

TEST(Runner, DeterministicAcrossRunsAndThreads) {
    json doc = load_demo("step_converge_box.json");
    doc["grid"]["samples"] = {512};
    doc["slicing"]["k"] = 2;
    doc["quadrature"]["threads"] = 1;
    const auto a = cli_converge_box(parse_config(doc));
    const auto b = cli_converge_box(parse_config(doc));
    doc["quadrature"]["threads"] = 4;
    const auto c = cli_converge_box(parse_config(doc));
    EXPECT_EQ(without_timing(a.record).dump(), without_timing(b.record).dump());
    EXPECT_EQ(without_timing(a.record).dump(), without_timing(c.record).dump());
    EXPECT_EQ(a.csv, c.csv);
    EXPECT_TRUE(a.record.contains("wall_time_seconds"));
}

TEST(Runner, DigestIgnoresRunLocalFields) {
    json doc = small_free_doc();
    const auto d1 = fnv1a_digest(parse_config(doc).canonical.dump());
    doc["output"] = {{"record", "x.json"}};
    doc["quadrature"] = {{"threads", 3}};
    EXPECT_EQ(fnv1a_digest(parse_config(doc).canonical.dump()), d1);
    doc["physical"]["t"] = 0.6;
    EXPECT_NE(fnv1a_digest(parse_config(doc).canonical.dump()), d1);
}

TEST(Cli, ExitCodes) {
    const std::string demos = PATHINT_DEMO_DIR;
    EXPECT_EQ(run_cli("selftest"), 0);
    EXPECT_EQ(run_cli("amplitude --config " + demos + "/coulomb_unexcised.json"), 1);
    EXPECT_EQ(run_cli("amplitude --config " + demos + "/unresolved_phase.json"), 2);
    EXPECT_EQ(run_cli("amplitude --config " + demos + "/free_survival.json --tolerance -1"), 1);
    EXPECT_EQ(run_cli("amplitude --config /nonexistent.json"), 1);
    EXPECT_EQ(run_cli("frobnicate"), 1);
}

TEST(Cli, WritesRecordAndCsv) {
    const fs::path dir = scratch_dir();
    const fs::path cfg = dir / "small.json";
    std::ofstream(cfg) << small_free_doc().dump();
    const fs::path rec = dir / "rec.json", csv = dir / "stages.csv";
    EXPECT_EQ(run_cli("converge-k --config " + cfg.string() + " --out " + rec.string() + " --csv " + csv.string() +
                      " --tolerance 1e-3 --threads 2"),
              0);
    const json r = json::parse(slurp(rec));
    EXPECT_EQ(r["command"], "converge-k");
    EXPECT_EQ(r["stages"].size(), 3u);
    const std::string text = slurp(csv);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);

    const fs::path rec2 = dir / "rec2.json";
    EXPECT_EQ(run_cli("converge-k --config " + cfg.string() + " --out " + rec2.string() + " --tolerance 1e-3"), 0);
    EXPECT_EQ(without_timing(json::parse(slurp(rec2))).dump(), without_timing(r).dump());
    json harmonic = small_free_doc();
    harmonic["potential"] = {{"kind", "harmonic"}};
    const fs::path cfg2 = dir / "harmonic.json";
    std::ofstream(cfg2) << harmonic.dump();
    EXPECT_EQ(run_cli("converge-k --config " + cfg2.string() + " --out " + rec2.string() + " --tolerance 1e-12"), 3);
    fs::remove_all(dir);
}
