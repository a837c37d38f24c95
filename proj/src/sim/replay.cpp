// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "sim/replay.h"

#include <vector>

#include "sim/runner.h"
#include "sim/trace.h"

namespace atomicloans {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> out;
    size_t start = 0;
    while (start <= text.size()) {
        size_t nl = text.find('\n', start);
        if (nl == std::string::npos) {
            if (start < text.size()) out.push_back(text.substr(start));
            break;
        }
        out.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return out;
}

ReplayReport bad(uint64_t line, std::string reason) {
    return ReplayReport{false, line, std::move(reason)};
}

}  // namespace

Result<ReplayReport> validate_trace(const std::string& jsonl) {
    using R = Result<ReplayReport>;
    std::vector<std::string> lines = split_lines(jsonl);
    if (lines.empty()) return R::ok(bad(1, "empty trace"));

    std::vector<TraceEvent> events;
    events.reserve(lines.size());
    for (size_t i = 0; i < lines.size(); ++i) {
        auto ev = parse_trace_line(lines[i]);
        if (!ev.is_ok()) return R::ok(bad(i + 1, "malformed event: " + ev.error().msg));
        events.push_back(ev.value());
    }
    for (size_t i = 0; i < events.size(); ++i) {
        if (events[i].seq != i)
            return R::ok(bad(i + 1, "sequence number " + std::to_string(events[i].seq) +
                                        " where " + std::to_string(i) + " expected"));
        if (i > 0 && events[i].time < events[i - 1].time)
            return R::ok(bad(i + 1, "time moves backwards"));
    }
    const TraceEvent& head = events[0];
    if (head.kind != "run-start" || !head.detail.contains("config") ||
        !head.detail["config"].is_string())
        return R::ok(bad(1, "trace does not begin with a run-start event carrying its config"));

    auto cfg = ScenarioConfig::from_ini(head.detail["config"].get<std::string>());
    if (!cfg.is_ok()) return R::ok(bad(1, "embedded config invalid: " + cfg.error().msg));

    auto rerun = run_scenario(cfg.value());
    if (!rerun.is_ok())
        return R::ok(bad(1, "embedded scenario fails to run: " + rerun.error().msg));

    std::vector<std::string> fresh = split_lines(rerun.value().jsonl());
    size_t n = std::min(lines.size(), fresh.size());
    for (size_t i = 0; i < n; ++i) {
        if (lines[i] != fresh[i])
            return R::ok(bad(i + 1, "diverges from deterministic replay"));
    }
    if (lines.size() < fresh.size())
        return R::ok(bad(lines.size() + 1, "trace truncated: replay has " +
                                               std::to_string(fresh.size()) + " events"));
    if (lines.size() > fresh.size())
        return R::ok(bad(fresh.size() + 1, "trailing events beyond deterministic replay"));
    return R::ok(ReplayReport{true, 0, ""});
}

}  // namespace atomicloans
