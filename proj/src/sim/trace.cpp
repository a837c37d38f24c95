// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "sim/trace.h"

namespace atomicloans {

nlohmann::ordered_json TraceEvent::to_json() const {
    nlohmann::ordered_json j;
    j["seq"] = seq;
    j["time"] = time.seconds;
    j["chain"] = chain;
    j["actor"] = actor;
    j["kind"] = kind;
    j["detail"] = detail;
    return j;
}

std::string TraceEvent::to_line() const { return to_json().dump(); }

std::string trace_to_jsonl(const std::vector<TraceEvent>& events) {
    std::string out;
    for (const TraceEvent& e : events) {
        out += e.to_line();
        out += '\n';
    }
    return out;
}

Result<TraceEvent> parse_trace_line(const std::string& line) {
    using R = Result<TraceEvent>;
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return R::fail(Err::InvalidParams, "not a JSON object");
    for (const char* key : {"seq", "time", "chain", "actor", "kind", "detail"})
        if (!j.contains(key)) return R::fail(Err::InvalidParams, std::string("missing ") + key);
    if (!j["seq"].is_number_unsigned() || !j["time"].is_number_unsigned() ||
        !j["chain"].is_string() || !j["actor"].is_string() || !j["kind"].is_string())
        return R::fail(Err::InvalidParams, "bad field type");
    TraceEvent e;
    e.seq = j["seq"].get<uint64_t>();
    e.time = Timestamp{j["time"].get<uint64_t>()};
    e.chain = j["chain"].get<std::string>();
    e.actor = j["actor"].get<std::string>();
    e.kind = j["kind"].get<std::string>();
    e.detail = j["detail"];
    return R::ok(std::move(e));
}

}  // namespace atomicloans
