// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ATOMICLOANS_SIM_TRACE_H
#define ATOMICLOANS_SIM_TRACE_H

#include <string>
#include <vector>

#include <json.hpp>

#include "primitives/types.h"
#include "util/result.h"

namespace atomicloans {

// One line of the JSONL trace. Key order is fixed (seq, time, chain, actor,
// kind, detail) so identical runs serialize byte-identically.
struct TraceEvent {
    uint64_t seq = 0;
    Timestamp time{0};
    std::string chain;  // "ACoin", "BCoin", or "-" for whole-run events
    std::string actor;  // party name or "system"
    std::string kind;
    nlohmann::ordered_json detail;

    nlohmann::ordered_json to_json() const;
    std::string to_line() const;
};

std::string trace_to_jsonl(const std::vector<TraceEvent>& events);
Result<TraceEvent> parse_trace_line(const std::string& line);

}  // namespace atomicloans

#endif  // ATOMICLOANS_SIM_TRACE_H
