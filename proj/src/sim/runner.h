// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ATOMICLOANS_SIM_RUNNER_H
#define ATOMICLOANS_SIM_RUNNER_H

#include <optional>
#include <set>

#include "chain/world.h"
#include "loan/loan_contract.h"
#include "sim/scenario.h"
#include "sim/trace.h"

namespace atomicloans {

struct PartyOutcome {
    Amount acoin_initial = 0;
    Amount acoin_final = 0;
    Amount bcoin_initial = 0;
    Amount bcoin_final = 0;

    Amount acoin_delta() const { return acoin_final - acoin_initial; }
    Amount bcoin_delta() const { return bcoin_final - bcoin_initial; }
};

struct RunResult {
    ScenarioConfig cfg;
    std::vector<TraceEvent> trace;
    std::string terminal;
    // Per-party balances; the "escrow" row holds script-locked ACoin value
    // and BCoin contract escrows so deltas sum to zero per chain.
    std::map<std::string, PartyOutcome> outcome;
    std::vector<std::pair<std::string, std::string>> revealed;  // (secret, chain)
    Amount winning_bid = 0;
    bool funded = false;
    bool withdrawn = false;
    bool repaid = false;
    bool closed = false;
    bool settled = false;
    uint64_t swap_lock_alice = 0;  // lock durations, swap runs only
    uint64_t swap_lock_bob = 0;
    std::vector<std::string> liveness_violations;
    std::vector<std::string> consulted;  // tracked decision points, first-use order
    World final_world;
    std::optional<LoanContract> final_contract;

    std::string jsonl() const { return trace_to_jsonl(trace); }
    const PartyOutcome& of(const std::string& party) const;
};

struct RunOptions {
    // Parties whose decision-point consultations get logged (adversarial
    // enumeration uses this to discover the next branch point).
    std::set<std::string> track_consults;
};

Result<RunResult> run_scenario(const ScenarioConfig& cfg);
Result<RunResult> run_scenario(const ScenarioConfig& cfg, const RunOptions& opts);

std::string display_name(const PartyId& p);

}  // namespace atomicloans

#endif  // ATOMICLOANS_SIM_RUNNER_H
