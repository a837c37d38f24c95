// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ATOMICLOANS_SIM_ENUMERATE_H
#define ATOMICLOANS_SIM_ENUMERATE_H

#include <set>
#include <string>
#include <vector>

#include "sim/runner.h"

namespace atomicloans {

// Hard cap on adversarial search depth (number of pinned decision points).
constexpr int kMaxEnumDepth = 16;

struct EnumOptions {
    // Parties pinned to honest play; the rest deviate. "rival" is always
    // honest and never bids during enumeration.
    std::set<std::string> honest;
    int max_depth = 6;
    ScenarioConfig base;  // defaults to the standard loan terms

    EnumOptions() { base.label = "enumerated"; }
};

struct Violation {
    std::string predicate;
    std::string description;
    std::vector<std::string> plan;  // "decision-point=choice" in discovery order
    std::string scenario_ini;       // replayable config reproducing the run

    bool operator==(const Violation&) const = default;
};

struct EnumResult {
    uint64_t runs = 0;
    std::vector<Violation> violations;
};

// Depth-first search over per-decision-point deviations. Every run restarts
// from genesis with a fixed plan; the first decision point consulted but not
// yet planned becomes the next branch point. Honest parties are checked
// against the safety predicates after every run.
Result<EnumResult> enumerate_adversaries(const EnumOptions& opts);

}  // namespace atomicloans

#endif  // ATOMICLOANS_SIM_ENUMERATE_H
