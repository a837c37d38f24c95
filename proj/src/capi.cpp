// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "atomic_loans.h"

#include <cstring>
#include <exception>
#include <sstream>
#include <string>
#include <vector>

#include "sim/enumerate.h"
#include "sim/replay.h"
#include "sim/report.h"
#include "sim/runner.h"
#include "sim/scenario.h"

using namespace atomicloans;

#define AL_EXPORT __attribute__((visibility("default")))

struct al_run {
    RunResult result;
    std::string trace_jsonl;
    std::string report;
};

struct al_enum {
    EnumResult result;
    std::vector<std::string> lines;  // formatted violations, same order
};

namespace {

thread_local std::string g_last_error;

al_status set_error(al_status s, std::string msg) {
    g_last_error = std::move(msg);
    return s;
}

al_status ok() {
    g_last_error.clear();
    return AL_OK;
}

al_status from_run_error(const OpError& e) {
    std::string msg = std::string(err_name(e.code)) + (e.msg.empty() ? "" : ": " + e.msg);
    switch (e.code) {
        case Err::InvalidParams:
            return set_error(AL_ERR_PARSE, std::move(msg));
        case Err::CheatingStrategy:
            return set_error(AL_ERR_SCENARIO_FAILED, std::move(msg));
        default:
            return set_error(AL_ERR_SCENARIO_FAILED, std::move(msg));
    }
}

al_status finish_run(Result<RunResult> r, al_run** out) {
    if (!r.is_ok()) return from_run_error(r.error());
    auto* handle = new al_run{std::move(r.value()), "", ""};
    handle->trace_jsonl = handle->result.jsonl();
    handle->report = render_report(handle->result);
    *out = handle;
    return ok();
}

}  // namespace

extern "C" {

AL_EXPORT const char* al_version(void) { return "1.0.0"; }

AL_EXPORT const char* al_status_str(al_status s) {
    switch (s) {
        case AL_OK: return "ok";
        case AL_ERR_USAGE: return "usage-error";
        case AL_ERR_UNKNOWN_SCENARIO: return "unknown-scenario";
        case AL_ERR_PARSE: return "parse-error";
        case AL_ERR_SCENARIO_FAILED: return "scenario-failed";
        case AL_ERR_VALIDATION_FAILED: return "validation-failed";
        case AL_ERR_DEPTH: return "depth-out-of-range";
        case AL_ERR_INTERNAL: return "internal-error";
    }
    return "unknown";
}

AL_EXPORT const char* al_last_error(void) { return g_last_error.c_str(); }

AL_EXPORT int al_builtin_count(void) {
    return static_cast<int>(builtin_scenario_names().size());
}

AL_EXPORT const char* al_builtin_name(int index) {
    static thread_local std::string name;
    const auto& names = builtin_scenario_names();
    if (index < 0 || index >= static_cast<int>(names.size())) return nullptr;
    name = names[static_cast<size_t>(index)];
    return name.c_str();
}

AL_EXPORT const char* al_builtin_config_text(const char* name) {
    static thread_local std::string text;
    if (!name) return nullptr;
    auto cfg = builtin_scenario(name);
    if (!cfg.is_ok()) return nullptr;
    text = cfg.value().to_ini();
    return text.c_str();
}

AL_EXPORT al_status al_run_builtin(const char* name, al_run** out) {
    if (!name || !out) return set_error(AL_ERR_USAGE, "null argument");
    *out = nullptr;
    try {
        auto cfg = builtin_scenario(name);
        if (!cfg.is_ok())
            return set_error(AL_ERR_UNKNOWN_SCENARIO, "no builtin scenario named '" +
                                                          std::string(name) + "'");
        return finish_run(run_scenario(cfg.value()), out);
    } catch (const std::exception& e) {
        return set_error(AL_ERR_INTERNAL, e.what());
    }
}

AL_EXPORT al_status al_run_config_text(const char* ini_text, al_run** out) {
    if (!ini_text || !out) return set_error(AL_ERR_USAGE, "null argument");
    *out = nullptr;
    try {
        auto cfg = ScenarioConfig::from_ini(ini_text);
        if (!cfg.is_ok()) return set_error(AL_ERR_PARSE, cfg.error().msg);
        auto valid = cfg.value().validate();
        if (!valid.is_ok()) return set_error(AL_ERR_PARSE, valid.error().msg);
        return finish_run(run_scenario(cfg.value()), out);
    } catch (const std::exception& e) {
        return set_error(AL_ERR_INTERNAL, e.what());
    }
}

AL_EXPORT void al_run_free(al_run* run) { delete run; }

AL_EXPORT const char* al_run_label(const al_run* run) {
    return run ? run->result.cfg.label.c_str() : nullptr;
}

AL_EXPORT const char* al_run_terminal_state(const al_run* run) {
    return run ? run->result.terminal.c_str() : nullptr;
}

AL_EXPORT const char* al_run_trace_jsonl(const al_run* run) {
    return run ? run->trace_jsonl.c_str() : nullptr;
}

AL_EXPORT const char* al_run_report_text(const al_run* run) {
    return run ? run->report.c_str() : nullptr;
}

AL_EXPORT al_status al_run_delta(const al_run* run, const char* party, const char* chain,
                                 long long* out_delta) {
    if (!run || !party || !chain || !out_delta) return set_error(AL_ERR_USAGE, "null argument");
    auto it = run->result.outcome.find(party);
    if (it == run->result.outcome.end())
        return set_error(AL_ERR_USAGE, "unknown party '" + std::string(party) + "'");
    if (std::strcmp(chain, "ACoin") == 0) {
        *out_delta = it->second.acoin_delta();
    } else if (std::strcmp(chain, "BCoin") == 0) {
        *out_delta = it->second.bcoin_delta();
    } else {
        return set_error(AL_ERR_USAGE, "unknown chain '" + std::string(chain) + "'");
    }
    return ok();
}

AL_EXPORT al_status al_enumerate_with_base(const char* honest_csv, int max_depth,
                                           const char* base_ini, al_enum** out) {
    if (!out) return set_error(AL_ERR_USAGE, "null argument");
    *out = nullptr;
    if (max_depth < 0 || max_depth > kMaxEnumDepth)
        return set_error(AL_ERR_DEPTH, "max depth must lie in [0, 16]");
    EnumOptions opts;
    opts.max_depth = max_depth;
    if (base_ini) {
        auto cfg = ScenarioConfig::from_ini(base_ini);
        if (!cfg.is_ok()) return set_error(AL_ERR_PARSE, cfg.error().msg);
        opts.base = cfg.value();
    }
    if (honest_csv) {
        std::stringstream ss(honest_csv);
        std::string part;
        while (std::getline(ss, part, ',')) {
            while (!part.empty() && part.front() == ' ') part.erase(part.begin());
            while (!part.empty() && part.back() == ' ') part.pop_back();
            if (part.empty()) continue;
            if (part != "alice" && part != "bob" && part != "charlie" && part != "rival")
                return set_error(AL_ERR_USAGE, "unknown party '" + part + "'");
            opts.honest.insert(part);
        }
    }
    try {
        auto r = enumerate_adversaries(opts);
        if (!r.is_ok()) {
            if (r.error().code == Err::DepthExceeded)
                return set_error(AL_ERR_DEPTH, r.error().msg);
            return set_error(AL_ERR_INTERNAL, r.error().msg);
        }
        auto* handle = new al_enum{std::move(r.value()), {}};
        for (const auto& v : handle->result.violations) {
            std::string plan;
            for (const auto& step : v.plan) {
                if (!plan.empty()) plan += " ";
                plan += step;
            }
            handle->lines.push_back(v.predicate + " | " + plan + " | " + v.description);
        }
        *out = handle;
        return ok();
    } catch (const std::exception& e) {
        return set_error(AL_ERR_INTERNAL, e.what());
    }
}

AL_EXPORT al_status al_enumerate(const char* honest_csv, int max_depth, al_enum** out) {
    return al_enumerate_with_base(honest_csv, max_depth, nullptr, out);
}

AL_EXPORT void al_enum_free(al_enum* e) { delete e; }

AL_EXPORT unsigned long long al_enum_runs(const al_enum* e) { return e ? e->result.runs : 0; }

AL_EXPORT int al_enum_violation_count(const al_enum* e) {
    return e ? static_cast<int>(e->result.violations.size()) : 0;
}

AL_EXPORT const char* al_enum_violation(const al_enum* e, int index) {
    if (!e || index < 0 || index >= static_cast<int>(e->lines.size())) return nullptr;
    return e->lines[static_cast<size_t>(index)].c_str();
}

AL_EXPORT const char* al_enum_first_violation_scenario(const al_enum* e) {
    if (!e || e->result.violations.empty()) return nullptr;
    return e->result.violations.front().scenario_ini.c_str();
}

AL_EXPORT al_status al_validate_trace_text(const char* jsonl, unsigned long long* bad_line) {
    if (!jsonl) return set_error(AL_ERR_USAGE, "null argument");
    if (bad_line) *bad_line = 0;
    try {
        auto r = validate_trace(jsonl);
        if (!r.is_ok()) return set_error(AL_ERR_INTERNAL, r.error().msg);
        const ReplayReport& rep = r.value();
        if (rep.ok) return ok();
        if (bad_line) *bad_line = rep.line;
        return set_error(AL_ERR_VALIDATION_FAILED, rep.reason);
    } catch (const std::exception& e) {
        return set_error(AL_ERR_INTERNAL, e.what());
    }
}

}  // extern "C"
