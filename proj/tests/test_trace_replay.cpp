// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <doctest.h>

#include <string>
#include <vector>

#include "sim/replay.h"
#include "sim/runner.h"
#include "sim/scenario.h"
#include "sim/trace.h"

using namespace atomicloans;

namespace {

std::string builtin_jsonl(const std::string& name) {
    auto r = run_scenario(builtin_scenario(name).value());
    REQUIRE(r.is_ok());
    return r.value().jsonl();
}

std::vector<std::string> split(const std::string& text) {
    std::vector<std::string> out;
    size_t start = 0;
    while (start < text.size()) {
        size_t nl = text.find('\n', start);
        if (nl == std::string::npos) {
            out.push_back(text.substr(start));
            break;
        }
        out.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return out;
}

std::string join(const std::vector<std::string>& lines) {
    std::string out;
    for (const auto& l : lines) {
        out += l;
        out += '\n';
    }
    return out;
}

ReplayReport check_trace(const std::string& jsonl) {
    auto r = validate_trace(jsonl);
    REQUIRE(r.is_ok());
    return r.value();
}

}  // namespace

TEST_CASE("pristine traces replay byte for byte") {
    for (const std::string name : {"happy_path", "default_bidding", "atomic_swap_baseline"}) {
        INFO(name);
        ReplayReport rep = check_trace(builtin_jsonl(name));
        CHECK(rep.ok);
        CHECK(rep.line == 0);
    }
}

TEST_CASE("a deleted line is pinned to its position") {
    auto lines = split(builtin_jsonl("happy_path"));
    REQUIRE(lines.size() > 20);
    lines.erase(lines.begin() + 14);
    ReplayReport rep = check_trace(join(lines));
    CHECK_FALSE(rep.ok);
    CHECK(rep.line == 15);
    CHECK(rep.reason.find("sequence number") != std::string::npos);
}

TEST_CASE("a tampered amount diverges at its own line") {
    auto lines = split(builtin_jsonl("happy_path"));
    size_t hit = 0;
    for (size_t i = 0; i < lines.size(); ++i) {
        size_t at = lines[i].find("\"amount\":10500");
        if (at != std::string::npos) {
            lines[i].replace(at, 14, "\"amount\":10501");
            hit = i + 1;
            break;
        }
    }
    REQUIRE(hit > 0);
    ReplayReport rep = check_trace(join(lines));
    CHECK_FALSE(rep.ok);
    CHECK(rep.line == hit);
    CHECK(rep.reason == "diverges from deterministic replay");
}

TEST_CASE("truncation is noticed past the last surviving line") {
    auto lines = split(builtin_jsonl("happy_path"));
    size_t n = lines.size();
    lines.pop_back();
    lines.pop_back();
    ReplayReport rep = check_trace(join(lines));
    CHECK_FALSE(rep.ok);
    CHECK(rep.line == n - 1);
    CHECK(rep.reason.find("trace truncated") != std::string::npos);
}

TEST_CASE("appended events beyond the replay are rejected") {
    auto lines = split(builtin_jsonl("happy_path"));
    auto last = parse_trace_line(lines.back());
    REQUIRE(last.is_ok());
    TraceEvent extra = last.value();
    extra.seq += 1;
    lines.push_back(extra.to_line());
    ReplayReport rep = check_trace(join(lines));
    CHECK_FALSE(rep.ok);
    CHECK(rep.line == lines.size());
    CHECK(rep.reason.find("trailing events") != std::string::npos);
}

TEST_CASE("malformed lines report their number without replaying") {
    auto lines = split(builtin_jsonl("happy_path"));
    lines[2] = "not json at all";
    ReplayReport rep = check_trace(join(lines));
    CHECK_FALSE(rep.ok);
    CHECK(rep.line == 3);
    CHECK(rep.reason.find("malformed event") != std::string::npos);

    lines = split(builtin_jsonl("happy_path"));
    lines.push_back("{}");
    rep = check_trace(join(lines));
    CHECK_FALSE(rep.ok);
    CHECK(rep.line == lines.size());
}

TEST_CASE("time may stall but never run backwards") {
    auto lines = split(builtin_jsonl("happy_path"));
    auto ev = parse_trace_line(lines[5]);
    REQUIRE(ev.is_ok());
    TraceEvent moved = ev.value();
    moved.time = Timestamp{0};
    lines[5] = moved.to_line();
    ReplayReport rep = check_trace(join(lines));
    CHECK_FALSE(rep.ok);
    CHECK(rep.line == 6);
    CHECK(rep.reason == "time moves backwards");
}

TEST_CASE("the trace must open with its own config") {
    ReplayReport rep = check_trace("");
    CHECK_FALSE(rep.ok);
    CHECK(rep.line == 1);
    CHECK(rep.reason == "empty trace");

    std::string not_start =
        R"({"seq":0,"time":5,"chain":"-","actor":"system","kind":"tick","detail":{}})";
    rep = check_trace(not_start + "\n");
    CHECK_FALSE(rep.ok);
    CHECK(rep.line == 1);
    CHECK(rep.reason.find("run-start") != std::string::npos);

    std::string bad_cfg =
        R"({"seq":0,"time":5,"chain":"-","actor":"system","kind":"run-start",)"
        R"("detail":{"config":"nonsense"}})";
    rep = check_trace(bad_cfg + "\n");
    CHECK_FALSE(rep.ok);
    CHECK(rep.line == 1);
    CHECK(rep.reason.find("embedded config invalid") != std::string::npos);
}

TEST_CASE("trace lines parse back to the events that wrote them") {
    auto lines = split(builtin_jsonl("happy_path"));
    for (const auto& line : lines) {
        auto ev = parse_trace_line(line);
        REQUIRE(ev.is_ok());
        CHECK(ev.value().to_line() == line);
    }

    CHECK_FALSE(parse_trace_line("[1,2,3]").is_ok());
    CHECK_FALSE(parse_trace_line("{\"seq\":0}").is_ok());
    CHECK_FALSE(parse_trace_line(
                    R"({"seq":"x","time":5,"chain":"-","actor":"a","kind":"k","detail":{}})")
                    .is_ok());
}
