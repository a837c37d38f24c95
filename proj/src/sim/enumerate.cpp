// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "sim/enumerate.h"

#include <algorithm>

namespace atomicloans {

namespace {

struct PlanChoice {
    std::string dp;
    std::string choice;
};
using Plan = std::vector<PlanChoice>;

std::string honest_choice(const std::string& dp) {
    return dp.ends_with(":bid") ? "none" : "yes";
}

// The deviation menu per decision point. "at:N" attempts the action from
// offset N after the timeline base regardless of the honest schedule, which
// exercises both too-early contract rejections and dead script windows.
std::vector<std::string> choices_for(const std::string& dp, const TimelineSpec& tl) {
    std::string key = dp.substr(dp.find(':') + 1);
    auto at = [](uint64_t off) { return "at:" + std::to_string(off); };
    if (key == "bid") return {"none", "bid:9000", "bid:12000"};
    if (key == "withdraw") return {"yes", "no", at(tl.loan_expiry + 5)};
    if (key == "repay") return {"yes", "no", at(35), at(tl.loan_expiry + 5)};
    if (key == "reclaim") return {"yes", "no", at(50)};
    if (key == "last_resort") return {"yes", "no", at(tl.bidding_end + 5)};
    if (key == "start_bidding") return {"yes", "no", at(50)};
    if (key == "seize") return {"yes", "no", at(50), at(tl.seizure_end + 5)};
    return {"yes", "no"};
}

void apply_choice(ScenarioConfig& cfg, const std::string& dp, const std::string& choice) {
    size_t colon = dp.find(':');
    std::string party = dp.substr(0, colon);
    std::string key = dp.substr(colon + 1);
    if (key == "bid") {
        if (choice.starts_with("bid:")) {
            Amount amt = std::stoll(choice.substr(4));
            cfg.strategies[party].bids = {{cfg.timeline.base + cfg.timeline.loan_expiry + 200, amt}};
        }
        return;
    }
    if (choice == "yes") {
        cfg.strategies[party].set(key, {Directive::Mode::Yes, 0});
    } else if (choice == "no") {
        cfg.strategies[party].set(key, {Directive::Mode::No, 0});
    } else if (choice.starts_with("at:")) {
        uint64_t off = std::stoull(choice.substr(3));
        cfg.strategies[party].set(key, {Directive::Mode::At, cfg.timeline.base + off});
    }
}

ScenarioConfig make_config(const ScenarioConfig& base, const Plan& plan) {
    ScenarioConfig cfg = base;
    for (const auto& pc : plan) apply_choice(cfg, pc.dp, pc.choice);
    return cfg;
}

std::vector<std::string> plan_strings(const Plan& plan) {
    std::vector<std::string> out;
    out.reserve(plan.size());
    for (const auto& pc : plan) out.push_back(pc.dp + "=" + pc.choice);
    return out;
}

class Search {
  public:
    explicit Search(const EnumOptions& opts) : opts_(opts) {
        for (const char* p : {"alice", "bob", "charlie"})
            if (!opts_.honest.count(p)) adversarial_.insert(p);
    }

    Result<EnumResult> go() {
        if (opts_.max_depth < 0 || opts_.max_depth > kMaxEnumDepth)
            return Result<EnumResult>::fail(
                Err::DepthExceeded, "enumeration depth must be between 0 and " +
                                        std::to_string(kMaxEnumDepth));
        Plan root;
        auto first = execute(root);
        if (!first.is_ok())
            return Result<EnumResult>::fail(first.error().code, first.error().msg);
        expand(root, first.value());
        std::stable_sort(res_.violations.begin(), res_.violations.end(),
                         [](const Violation& a, const Violation& b) {
                             if (a.predicate != b.predicate) return a.predicate < b.predicate;
                             return a.plan < b.plan;
                         });
        return Result<EnumResult>::ok(std::move(res_));
    }

  private:
    Result<RunResult> execute(const Plan& plan) {
        ScenarioConfig cfg = make_config(opts_.base, plan);
        RunOptions ro;
        ro.track_consults = adversarial_;
        auto r = run_scenario(cfg, ro);
        ++res_.runs;
        if (!r.is_ok()) {
            Violation v;
            v.predicate = "run-error";
            v.description = std::string(err_name(r.error().code)) + ": " + r.error().msg;
            v.plan = plan_strings(plan);
            v.scenario_ini = cfg.to_ini();
            res_.violations.push_back(std::move(v));
        } else {
            check(r.value(), plan);
        }
        return r;
    }

    void expand(const Plan& plan, const RunResult& run) {
        if (static_cast<int>(plan.size()) >= opts_.max_depth) return;
        std::set<std::string> pinned;
        for (const auto& pc : plan) pinned.insert(pc.dp);
        const std::string* next = nullptr;
        for (const auto& dp : run.consulted) {
            if (!pinned.count(dp)) {
                next = &dp;
                break;
            }
        }
        if (!next) return;
        for (const auto& choice : choices_for(*next, opts_.base.timeline)) {
            Plan sub = plan;
            sub.push_back({*next, choice});
            if (choice == honest_choice(*next)) {
                // Behaviourally identical to the current run; recurse without
                // re-executing so the next decision point gets expanded.
                expand(sub, run);
            } else {
                auto r = execute(sub);
                if (r.is_ok()) expand(sub, r.value());
            }
        }
    }

    void fail(const std::string& predicate, const std::string& description, const Plan& plan,
              const RunResult& r) {
        Violation v;
        v.predicate = predicate;
        v.description = description;
        v.plan = plan_strings(plan);
        v.scenario_ini = r.cfg.to_ini();
        res_.violations.push_back(std::move(v));
    }

    // Safety predicates over one finished run. Floors are expressed in BCoin
    // units with ACoin positions valued at the configured rate.
    void check(const RunResult& r, const Plan& plan) {
        const ScenarioConfig& cfg = r.cfg;
        const Amount principal = cfg.terms.principal;
        const Amount interest = cfg.terms.interest;
        const Amount owed = cfg.terms.owed_on_liquidation();
        const Amount seiz = cfg.terms.collateral_seizable;
        const Amount ref = cfg.terms.collateral_refundable;
        auto val = [&](Amount a) { return cfg.bcoin_value(a); };
        auto value_of = [&](const std::string& p) {
            const PartyOutcome& o = r.of(p);
            return o.bcoin_delta() + val(o.acoin_delta());
        };

        for (const std::string chain : {"ACoin", "BCoin"}) {
            Amount sum = 0;
            for (const auto& [p, o] : r.outcome)
                sum += chain == "ACoin" ? o.acoin_delta() : o.bcoin_delta();
            if (sum != 0)
                fail("conservation", chain + " deltas sum to " + std::to_string(sum), plan, r);
        }

        for (const auto& lv : r.liveness_violations) fail("liveness", lv, plan, r);

        bool bob_honest = opts_.honest.count("bob") > 0;
        bool alice_honest = opts_.honest.count("alice") > 0;
        bool charlie_honest = opts_.honest.count("charlie") > 0;

        if (bob_honest) {
            Amount v = value_of("bob");
            Amount floor = 0;
            std::string why = "loan never withdrawn";
            if (r.settled) {
                const Bid* w = r.final_contract ? r.final_contract->winning_bid() : nullptr;
                Amount share = w ? std::min(w->amount, owed) : 0;
                floor = -principal + share;
                why = "settled auction pays min(bid, owed)";
            } else if (r.closed) {
                floor = interest;
                why = "repaid loan yields the interest";
            } else if (r.withdrawn) {
                floor = -principal + val(seiz);
                why = "default recovers the seizable collateral";
            }
            if (v < floor)
                fail("lender-floor",
                     "bob value " + std::to_string(v) + " below floor " + std::to_string(floor) +
                         " (" + why + ")",
                     plan, r);
            if (val(seiz) >= owed && r.withdrawn && v < interest)
                fail("lender-covered",
                     "collateral covers the debt yet bob value " + std::to_string(v) +
                         " is below the interest " + std::to_string(interest),
                     plan, r);
        }

        if (alice_honest) {
            Amount v = value_of("alice");
            if (!r.withdrawn && v < 0)
                fail("borrower-floor",
                     "alice never withdrew yet lost " + std::to_string(-v), plan, r);
            Amount worst = val(seiz) + interest + cfg.terms.liquidation_fee;
            if (r.withdrawn && v < -worst)
                fail("borrower-floor",
                     "alice value " + std::to_string(v) + " below -" + std::to_string(worst),
                     plan, r);
            if (!r.settled && r.of("alice").acoin_delta() < -seiz)
                fail("borrower-refundable",
                     "no settlement yet alice lost more ACoin than the seizable portion (" +
                         std::to_string(r.of("alice").acoin_delta()) + ")",
                     plan, r);
        }

        if (charlie_honest) {
            const Bid* w = r.final_contract ? r.final_contract->winning_bid() : nullptr;
            bool charlie_won = w && w->bidder == PartyId::charlie();
            if (charlie_won && r.settled && r.of("charlie").acoin_delta() != seiz + ref)
                fail("bidder-stake",
                     "settled winner swept " + std::to_string(r.of("charlie").acoin_delta()) +
                         " instead of the full collateral",
                     plan, r);
            if (!r.settled && r.of("charlie").bcoin_delta() != 0)
                fail("bidder-stake",
                     "no settlement yet charlie's stake moved by " +
                         std::to_string(r.of("charlie").bcoin_delta()),
                     plan, r);
        }
    }

    EnumOptions opts_;
    std::set<std::string> adversarial_;
    EnumResult res_;
};

}  // namespace

Result<EnumResult> enumerate_adversaries(const EnumOptions& opts) {
    Search s(opts);
    return s.go();
}

}  // namespace atomicloans
