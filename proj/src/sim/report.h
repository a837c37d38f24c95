// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ATOMICLOANS_SIM_REPORT_H
#define ATOMICLOANS_SIM_REPORT_H

#include <map>
#include <string>
#include <utility>

#include "sim/runner.h"

namespace atomicloans {

// Human-readable outcome table for one finished run.
std::string render_report(const RunResult& r);

// Per-party (ACoin delta, BCoin delta) recomputed purely from trace events,
// without consulting RunResult bookkeeping. Lets tests cross-check that the
// report numbers follow from the trace alone.
Result<std::map<std::string, std::pair<Amount, Amount>>> deltas_from_trace(
    const std::string& jsonl);

}  // namespace atomicloans

#endif  // ATOMICLOANS_SIM_REPORT_H
