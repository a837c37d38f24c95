// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "atomic_loans.h"

namespace {

// Exit codes shared by all subcommands: 0 success, 1 usage or input
// problem, 2 the operation itself failed (scenario aborted, violations
// found, trace diverged).
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailed = 2;

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << text;
    return out.good();
}

// Replaces (or inserts into [scenario]) the seed key of a config document.
std::string with_seed(const std::string& ini, uint64_t seed) {
    std::istringstream in(ini);
    std::ostringstream out;
    std::string line;
    bool replaced = false;
    while (std::getline(in, line)) {
        std::string trimmed = line;
        trimmed.erase(0, trimmed.find_first_not_of(" \t"));
        if (!replaced && trimmed.rfind("seed", 0) == 0 &&
            trimmed.find('=') != std::string::npos) {
            out << "seed = " << seed << "\n";
            replaced = true;
            continue;
        }
        out << line << "\n";
        if (!replaced && trimmed == "[scenario]") {
            out << "seed = " << seed << "\n";
            replaced = true;
        }
    }
    if (!replaced) out << "\n[scenario]\nseed = " << seed << "\n";
    return out.str();
}

int fail_usage(const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    return kExitUsage;
}

int cmd_run(const std::string& scenario, bool have_seed, uint64_t seed,
            std::string trace_path, const std::string& report_path) {
    std::string config;
    std::ifstream probe(scenario);
    if (probe.good()) {
        probe.close();
        if (!read_file(scenario, config)) return fail_usage("cannot read " + scenario);
    } else {
        const char* text = al_builtin_config_text(scenario.c_str());
        if (!text)
            return fail_usage("unknown scenario '" + scenario +
                              "' (not a builtin, not a readable file)");
        config = text;
    }
    if (have_seed) config = with_seed(config, seed);

    al_run* run = nullptr;
    al_status st = al_run_config_text(config.c_str(), &run);
    if (st == AL_ERR_PARSE || st == AL_ERR_USAGE) return fail_usage(al_last_error());
    if (st != AL_OK) {
        std::cerr << "error: scenario failed: " << al_last_error() << "\n";
        return kExitFailed;
    }

    if (trace_path.empty()) {
        if (const char* dir = std::getenv("ATOMIC_LOANS_TRACE_DIR")) {
            trace_path = std::string(dir) + "/" + al_run_label(run) + ".trace.jsonl";
        }
    }
    if (!trace_path.empty()) {
        if (!write_file(trace_path, al_run_trace_jsonl(run))) {
            al_run_free(run);
            return fail_usage("cannot write trace to " + trace_path);
        }
    }
    std::string report = al_run_report_text(run);
    if (report_path.empty()) {
        std::cout << report;
    } else if (!write_file(report_path, report)) {
        al_run_free(run);
        return fail_usage("cannot write report to " + report_path);
    }
    al_run_free(run);
    return kExitOk;
}

int cmd_enumerate(const std::string& honest, int depth, const std::string& terms_path) {
    std::string terms;
    if (!terms_path.empty() && !read_file(terms_path, terms))
        return fail_usage("cannot read " + terms_path);

    al_enum* e = nullptr;
    al_status st = al_enumerate_with_base(honest.c_str(), depth,
                                          terms.empty() ? nullptr : terms.c_str(), &e);
    if (st != AL_OK) return fail_usage(al_last_error());

    int n = al_enum_violation_count(e);
    std::cout << "runs: " << al_enum_runs(e) << "\n";
    std::cout << "violations: " << n << "\n";
    for (int i = 0; i < n; ++i) std::cout << "  " << al_enum_violation(e, i) << "\n";
    if (n > 0) {
        std::cout << "\nfirst violating scenario (replayable):\n";
        std::cout << al_enum_first_violation_scenario(e);
    }
    al_enum_free(e);
    return n == 0 ? kExitOk : kExitFailed;
}

int cmd_validate(const std::string& trace_path) {
    std::string jsonl;
    if (!read_file(trace_path, jsonl)) return fail_usage("cannot read " + trace_path);
    unsigned long long bad_line = 0;
    al_status st = al_validate_trace_text(jsonl.c_str(), &bad_line);
    if (st == AL_OK) {
        std::cout << "trace ok\n";
        return kExitOk;
    }
    if (st == AL_ERR_VALIDATION_FAILED) {
        std::cerr << "trace invalid at line " << bad_line << ": " << al_last_error() << "\n";
        return kExitFailed;
    }
    return fail_usage(al_last_error());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"atomic loans protocol simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(al_version()));

    std::string scenario, trace_path, report_path;
    uint64_t seed = 0;
    auto* run = app.add_subcommand("run", "execute a scenario and emit trace and report");
    run->add_option("--scenario", scenario, "builtin name or config file path")->required();
    auto* seed_opt = run->add_option("--seed", seed, "override the deterministic seed");
    run->add_option("--trace", trace_path, "trace output path");
    run->add_option("--report", report_path, "report output path (default stdout)");

    std::string honest, terms_path;
    int depth = 6;
    auto* en = app.add_subcommand("enumerate", "search adversarial deviations");
    en->add_option("--honest", honest, "comma-separated parties pinned to honest play");
    en->add_option("--depth", depth, "decision points to pin (max 16)");
    en->add_option("--terms", terms_path, "base scenario config file");

    std::string validate_path;
    auto* val = app.add_subcommand("validate", "replay a trace and compare byte for byte");
    val->add_option("--trace", validate_path, "trace file to check")->required();

    app.add_subcommand("list-scenarios", "print the builtin scenario names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (run->parsed()) return cmd_run(scenario, seed_opt->count() > 0, seed, trace_path, report_path);
    if (en->parsed()) return cmd_enumerate(honest, depth, terms_path);
    if (val->parsed()) return cmd_validate(validate_path);
    for (int i = 0; i < al_builtin_count(); ++i) std::cout << al_builtin_name(i) << "\n";
    return kExitOk;
}
