// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ATOMICLOANS_SIM_SCENARIO_H
#define ATOMICLOANS_SIM_SCENARIO_H

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "primitives/keys.h"
#include "primitives/types.h"
#include "util/result.h"

namespace atomicloans {

// What a party does at one protocol decision point: follow the honest
// schedule, skip the action entirely, or attempt it from a chosen time
// (possibly outside the legal window).
struct Directive {
    enum class Mode { Yes, No, At };
    Mode mode = Mode::Yes;
    uint64_t at = 0;

    bool operator==(const Directive&) const = default;
};

struct BidPlan {
    uint64_t at = 0;
    Amount amount = 0;
    bool operator==(const BidPlan&) const = default;
};

struct StrategySpec {
    std::map<std::string, Directive> directives;  // only deviations are stored
    std::vector<BidPlan> bids;
    std::optional<std::string> alias_of;
    bool cheat = false;

    Directive get(const std::string& key) const;
    void set(const std::string& key, Directive d);
    bool honest() const;
    bool is_default() const;
    bool operator==(const StrategySpec&) const = default;
};

// Directive keys each party understands; unknown keys are config errors.
const std::vector<std::string>& known_directives();

enum class ScenarioKind { Loan, Swap };

struct RateSpec {
    int64_t num = 1;
    int64_t den = 1;
    bool operator==(const RateSpec&) const = default;
};

struct TermsSpec {
    Amount principal = 10000;
    Amount interest = 500;
    Amount liquidation_fee = 500;
    Amount collateral_seizable = 6000;
    Amount collateral_refundable = 9000;
    bool operator==(const TermsSpec&) const = default;

    Amount collateral_total() const { return collateral_seizable + collateral_refundable; }
    Amount owed_on_liquidation() const { return principal + interest + liquidation_fee; }
};

struct TimelineSpec {
    uint64_t base = 1700000000;
    uint64_t withdraw_deadline = 1000;  // offsets from base
    uint64_t loan_expiry = 2000;
    uint64_t bidding_end = 3000;
    uint64_t bid_settlement_deadline = 3500;
    uint64_t seizure_end = 4000;
    bool operator==(const TimelineSpec&) const = default;

    Timestamp at(uint64_t offset) const { return Timestamp{base + offset}; }
};

struct GenesisSpec {
    Amount alice_acoin = 15000;
    Amount alice_bcoin = 2000;
    Amount bob_bcoin = 10000;
    Amount charlie_bcoin = 20000;
    Amount rival_bcoin = 11000;
    bool operator==(const GenesisSpec&) const = default;
};

struct SwapSpec {
    Amount amount_acoin = 7000;
    Amount amount_bcoin = 7000;
    uint64_t lock_duration = 2000;  // initiator's lock; responder gets half
    bool operator==(const SwapSpec&) const = default;
};

struct ScenarioConfig {
    std::string label = "unnamed";
    ScenarioKind kind = ScenarioKind::Loan;
    uint64_t seed = 1;
    SigSchemeKind scheme = SigSchemeKind::Ed25519;
    RateSpec rate{1, 10};            // valuation rate for outcome comparison
    RateSpec inception_rate{1, 1};   // rate at which the 150% ratio was struck
    TermsSpec terms;
    TimelineSpec timeline;
    GenesisSpec genesis;
    SwapSpec swap;
    std::map<std::string, StrategySpec> strategies;  // alice, bob, charlie, rival
    bool operator==(const ScenarioConfig&) const = default;

    StrategySpec strategy(const std::string& party) const;
    Result<> validate() const;
    std::string to_ini() const;
    static Result<ScenarioConfig> from_ini(const std::string& text);

    // Collateral value in BCoin units at the valuation rate, floor division.
    Amount bcoin_value(Amount acoin_amount) const {
        return acoin_amount * rate.num / rate.den;
    }
};

std::vector<std::string> builtin_scenario_names();
Result<ScenarioConfig> builtin_scenario(const std::string& name);

}  // namespace atomicloans

#endif  // ATOMICLOANS_SIM_SCENARIO_H
