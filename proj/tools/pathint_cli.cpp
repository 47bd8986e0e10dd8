// Command-line front end: amplitude, converge-k, converge-box, selftest.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <pathint/pathint.hpp>
#include <pathint/selftest.hpp>

namespace {

using pathint::json;

struct Options {
    std::string config;
    std::string out;
    std::string csv;
    std::optional<double> tolerance;
    std::optional<int> threads;
};

int report_invalid(const std::vector<std::string>& errors) {
    json rec = {{"status", "invalid_config"}, {"errors", errors}};
    std::cout << rec.dump(2) << "\n";
    return pathint::kExitInvalid;
}

bool write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) return false;
    f << text;
    return static_cast<bool>(f);
}

int run(const std::string& command, const Options& opt) {
    json doc;
    {
        std::ifstream in(opt.config);
        if (!in) return report_invalid({"config: cannot open '" + opt.config + "'"});
        try {
            doc = json::parse(in);
        } catch (const json::parse_error& e) {
            return report_invalid({std::string("config: malformed JSON: ") + e.what()});
        }
    }
    if (!doc.is_object()) return report_invalid({"configuration must be a JSON object"});
    if (opt.tolerance) doc["tolerance"] = *opt.tolerance;
    if (opt.threads) doc["quadrature"]["threads"] = *opt.threads;
    if (!opt.out.empty()) doc["output"]["record"] = opt.out;
    if (!opt.csv.empty()) doc["output"]["csv"] = opt.csv;

    pathint::RunConfig cfg;
    try {
        cfg = pathint::parse_config(doc);
    } catch (const pathint::ConfigValidationError& e) {
        return report_invalid(e.errors());
    }

    pathint::RunOutcome outcome;
    try {
        if (command == "amplitude")
            outcome = pathint::cli_amplitude(cfg);
        else if (command == "converge-k")
            outcome = pathint::cli_converge_k(cfg);
        else
            outcome = pathint::cli_converge_box(cfg);
    } catch (const pathint::ConfigError& e) {
        return report_invalid({e.what()});
    } catch (const pathint::DomainError& e) {
        return report_invalid({e.what()});
    }

    const std::string text = outcome.record.dump(2) + "\n";
    if (cfg.out_path.empty()) {
        std::cout << text;
    } else if (!write_text(cfg.out_path, text)) {
        std::cerr << "error: cannot write " << cfg.out_path << "\n";
        return pathint::kExitInvalid;
    }
    if (!cfg.csv_path.empty() && !write_text(cfg.csv_path, outcome.csv)) {
        std::cerr << "error: cannot write " << cfg.csv_path << "\n";
        return pathint::kExitInvalid;
    }
    return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-sliced path integral amplitudes on grids"};
    app.require_subcommand(1);
    Options opt;

    auto add_run = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", opt.config, "JSON run configuration")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", opt.out, "write the JSON record here instead of stdout");
        sub->add_option("--csv", opt.csv, "write per-stage CSV here");
        sub->add_option("--tolerance", opt.tolerance, "convergence tolerance (relative)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--threads", opt.threads, "worker threads, 0 = hardware concurrency")
            ->check(CLI::NonNegativeNumber);
        return sub;
    };
    auto* amp = add_run("amplitude", "single amplitude at k slices");
    auto* ck = add_run("converge-k", "refine over the slice schedule");
    auto* cb = add_run("converge-box", "refine over the box and hole schedule");
    auto* st = app.add_subcommand("selftest", "run quick built-in checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : pathint::kExitInvalid;
    }

    if (st->parsed()) return pathint::run_selftest(std::cout) ? pathint::kExitOk : pathint::kExitInvalid;
    if (amp->parsed()) return run("amplitude", opt);
    if (ck->parsed()) return run("converge-k", opt);
    if (cb->parsed()) return run("converge-box", opt);
    return pathint::kExitInvalid;
}
