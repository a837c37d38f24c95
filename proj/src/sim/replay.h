// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ATOMICLOANS_SIM_REPLAY_H
#define ATOMICLOANS_SIM_REPLAY_H

#include <string>

#include "util/result.h"

namespace atomicloans {

struct ReplayReport {
    bool ok = false;
    uint64_t line = 0;  // 1-based number of the first offending line, 0 if ok
    std::string reason;
};

// Validates a JSONL trace by re-running the scenario embedded in its
// run-start event and comparing byte for byte. Structural problems
// (malformed JSON, broken seq/time ordering) are reported with the same
// line numbering without re-running.
Result<ReplayReport> validate_trace(const std::string& jsonl);

}  // namespace atomicloans

#endif  // ATOMICLOANS_SIM_REPLAY_H
