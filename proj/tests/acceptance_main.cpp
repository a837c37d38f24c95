// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

// End-to-end acceptance gate. Each check exercises the protocol through the
// public scenario and enumeration entry points and prints exactly one
// PASS/FAIL line. The process exits nonzero if any check fails, so this
// binary doubles as a CI gate and as a quick health report.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sim/enumerate.h"
#include "sim/replay.h"
#include "sim/runner.h"
#include "sim/scenario.h"

namespace {

using namespace atomicloans;

std::string amt(Amount a) { return std::to_string(a); }

struct TimedRun {
    RunResult run;
    double ms = 0;
};

// Runs are deterministic, so each builtin is executed once and shared by
// every check that needs it. The wall-clock time of that first execution
// is what the runtime bounds are checked against.
const TimedRun& run_of(const std::string& name) {
    static std::map<std::string, TimedRun> cache;
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;
    auto cfg = builtin_scenario(name);
    if (!cfg.is_ok()) throw std::runtime_error("unknown builtin " + name);
    auto t0 = std::chrono::steady_clock::now();
    auto res = run_scenario(cfg.value());
    auto t1 = std::chrono::steady_clock::now();
    if (!res.is_ok()) throw std::runtime_error(name + ": " + res.error().msg);
    TimedRun tr;
    tr.run = res.value();
    tr.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return cache.emplace(name, std::move(tr)).first->second;
}

struct TimedEnum {
    EnumResult res;
    double ms = 0;
};

const TimedEnum& enum_of(const std::string& honest) {
    static std::map<std::string, TimedEnum> cache;
    auto it = cache.find(honest);
    if (it != cache.end()) return it->second;
    EnumOptions opts;
    opts.honest = {honest};
    opts.max_depth = 12;
    auto t0 = std::chrono::steady_clock::now();
    auto res = enumerate_adversaries(opts);
    auto t1 = std::chrono::steady_clock::now();
    if (!res.is_ok()) throw std::runtime_error("enumerate: " + res.error().msg);
    TimedEnum te;
    te.res = res.value();
    te.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return cache.emplace(honest, std::move(te)).first->second;
}

int64_t reveal_seq(const RunResult& r, const std::string& name, const std::string& chain = "") {
    for (const auto& e : r.trace)
        if (e.kind == "secret-revealed" && e.detail.value("name", "") == name &&
            (chain.empty() || e.chain == chain))
            return static_cast<int64_t>(e.seq);
    return -1;
}

bool uses_name(const TraceEvent& e, const std::string& name) {
    if (!e.detail.contains("uses")) return false;
    for (const auto& u : e.detail["uses"])
        if (u.get<std::string>() == name) return true;
    return false;
}

// True when some event after seq `after` consumes the named secret, either
// as an op argument or inside a transaction witness.
bool used_after(const RunResult& r, const std::string& name, int64_t after) {
    for (const auto& e : r.trace)
        if (static_cast<int64_t>(e.seq) > after && uses_name(e, name)) return true;
    return false;
}

const TraceEvent* find_tx(const RunResult& r, const std::string& purpose) {
    for (const auto& e : r.trace)
        if (e.kind == "tx-accepted" && e.detail.value("purpose", "") == purpose) return &e;
    return nullptr;
}

bool has_op(const RunResult& r, const std::string& op) {
    for (const auto& e : r.trace)
        if (e.kind == "op-accepted" && e.detail.value("op", "") == op) return true;
    return false;
}

Amount claim_amount(const RunResult& r, const std::string& party) {
    for (const auto& e : r.trace)
        if (e.kind == "claim" && e.detail.value("party", "") == party)
            return e.detail["amount"].get<Amount>();
    return -1;
}

bool revealed_on(const RunResult& r, const std::string& name, const std::string& chain) {
    for (const auto& [n, c] : r.revealed)
        if (n == name && c == chain) return true;
    return false;
}

Amount delta_a(const RunResult& r, const std::string& p) { return r.of(p).acoin_delta(); }
Amount delta_b(const RunResult& r, const std::string& p) { return r.of(p).bcoin_delta(); }

// ---- the checks; each returns "" on success or a failure reason ----

std::string check_secret_lifecycle() {
    // For every secret in the protocol, some builtin shows the full
    // lifecycle: revealed on one chain first, consumed by a later op or
    // transaction. The revealing op itself also lists the secret in its
    // uses, so the probe demands a strictly later consumer.
    const std::vector<std::pair<std::string, std::string>> pairs = {
        {"B1", "happy_path"},          {"A1", "default_no_bids_seizure"},
        {"B2", "happy_path"},          {"A2", "default_bidding"},
        {"C", "default_bidding"},
    };
    for (const auto& [name, scen] : pairs) {
        const RunResult& r = run_of(scen).run;
        int64_t rs = reveal_seq(r, name);
        if (rs < 0) return name + " never revealed in " + scen;
        if (!used_after(r, name, rs)) return name + " revealed but never consumed in " + scen;
    }
    for (const auto& n : builtin_scenario_names()) {
        double ms = run_of(n).ms;
        if (ms >= 1000.0) return n + " took " + std::to_string(ms) + " ms";
    }
    return "";
}

std::string check_swap_baseline() {
    const RunResult& r = run_of("atomic_swap_baseline").run;
    if (r.terminal != "swap-complete") return "terminal " + r.terminal;
    if (r.swap_lock_bob == 0) return "responder lock missing";
    if (r.swap_lock_alice != 2 * r.swap_lock_bob)
        return "locks " + std::to_string(r.swap_lock_alice) + " vs " +
               std::to_string(r.swap_lock_bob);
    int64_t rs = reveal_seq(r, "A", "BCoin");
    if (rs < 0) return "initiator secret not revealed by the first redeem";
    for (const auto& e : r.trace)
        if (e.kind == "tx-accepted" && e.detail.value("purpose", "") == "swap-redeem" &&
            static_cast<int64_t>(e.seq) > rs && uses_name(e, "A"))
            return "";
    return "no counterparty redeem consuming the published secret";
}

std::string check_happy_path() {
    const RunResult& r = run_of("happy_path").run;
    if (r.terminal != "closed") return "terminal " + r.terminal;
    if (delta_b(r, "bob") != 500) return "bob BCoin delta " + amt(delta_b(r, "bob"));
    if (delta_a(r, "alice") != 0) return "alice ACoin delta " + amt(delta_a(r, "alice"));
    return "";
}

std::string check_auction_split() {
    const RunResult& r = run_of("default_bidding").run;
    if (r.terminal != "settled") return "terminal " + r.terminal;
    if (r.winning_bid != 12000) return "winning bid " + amt(r.winning_bid);
    Amount bob = claim_amount(r, "bob"), alice = claim_amount(r, "alice");
    if (bob != 11000) return "bob claim " + amt(bob);
    if (alice != 1000) return "alice claim " + amt(alice);
    if (bob + alice != r.winning_bid) return "claims do not sum to the bid";
    if (!r.final_contract) return "no final contract";
    const LoanContract& c = *r.final_contract;
    if (!c.bob_claimed() || !c.alice_claimed()) return "claim flags not set";

    const TraceEvent* sweep = find_tx(r, "liquidation-sweep");
    if (!sweep) return "no liquidation sweep";
    std::set<std::string> spent;
    Amount in_total = 0;
    for (const auto& i : sweep->detail["inputs"]) {
        spent.insert(i["outpoint"].get<std::string>());
        in_total += i["value"].get<Amount>();
    }
    if (!spent.count(c.seizable_outpoint().str()) || !spent.count(c.refundable_outpoint().str()))
        return "sweep does not spend both collateral outputs";
    if (in_total != 15000) return "sweep consumes " + amt(in_total);
    Amount to_winner = 0;
    for (const auto& o : sweep->detail["outputs"]) {
        if (o["dest"].get<std::string>() != "charlie") return "sweep output not to the winner";
        to_winner += o["value"].get<Amount>();
    }
    if (to_winner != 15000) return "winner received " + amt(to_winner);
    if (!r.final_world.acoin.is_spent(c.seizable_outpoint()) ||
        !r.final_world.acoin.is_spent(c.refundable_outpoint()))
        return "collateral outpoints still live";
    if (!revealed_on(r, "A2", "ACoin") || !revealed_on(r, "B2", "ACoin"))
        return "settlement secrets not scanned on ACoin";
    return "";
}

std::string check_double_agent_neutralized() {
    const RunResult& da = run_of("double_agent_alice").run;
    const RunResult& ref = run_of("default_bidding").run;
    if (da.terminal != "settled") return "terminal " + da.terminal;
    if (claim_amount(da, "bob") != claim_amount(ref, "bob"))
        return "bob claim " + amt(claim_amount(da, "bob")) + " vs honest " +
               amt(claim_amount(ref, "bob"));
    if (delta_b(da, "bob") != delta_b(ref, "bob") || delta_a(da, "bob") != delta_a(ref, "bob"))
        return "bob deltas diverge from the honest-bidding case";
    return "";
}

std::string check_seizure_fallback() {
    const RunResult& r = run_of("default_no_bids_seizure").run;
    const TraceEvent* sz = find_tx(r, "seizure");
    if (!sz) return "no seizure tx";
    if (!uses_name(*sz, "A1")) return "seizure does not consume A1";
    const auto& ins = sz->detail["inputs"];
    if (ins.size() != 1) return "seizure spends " + std::to_string(ins.size()) + " inputs";
    if (ins[0]["value"].get<Amount>() != 6000)
        return "seizure takes " + amt(ins[0]["value"].get<Amount>());
    const TimelineSpec& tl = r.cfg.timeline;
    if (sz->time < tl.at(tl.bidding_end) || sz->time >= tl.at(tl.seizure_end))
        return "seizure outside its window";
    const TraceEvent* rc = find_tx(r, "reclaim-refundable");
    if (!rc) return "no refundable reclaim";
    Amount back = 0;
    for (const auto& o : rc->detail["outputs"])
        if (o["dest"].get<std::string>() == "alice") back += o["value"].get<Amount>();
    if (back != 9000) return "alice reclaims " + amt(back);
    if (delta_a(r, "alice") != -6000 || delta_a(r, "bob") != 6000)
        return "final ACoin deltas " + amt(delta_a(r, "alice")) + "/" + amt(delta_a(r, "bob"));

    const RunResult& ww = run_of("winner_walks_away").run;
    if (ww.terminal != "seizure-fallback") return "walk-away terminal " + ww.terminal;
    if (delta_b(ww, "charlie") != 0) return "stranded stake " + amt(delta_b(ww, "charlie"));
    if (!has_op(ww, "refund_bid")) return "stake never refunded";
    return "";
}

std::string check_liveness() {
    for (const auto& n : builtin_scenario_names()) {
        const RunResult& r = run_of(n).run;
        if (!r.liveness_violations.empty()) return n + ": " + r.liveness_violations.front();
        if (r.cfg.kind == ScenarioKind::Loan) {
            const TimelineSpec& tl = r.cfg.timeline;
            if (r.final_world.now < tl.at(tl.seizure_end).plus(1))
                return n + " ends before the final deadline";
        }
    }
    return "";
}

std::string check_conservation() {
    for (const auto& n : builtin_scenario_names()) {
        const RunResult& r = run_of(n).run;
        Amount da = 0, db = 0;
        for (const auto& [p, o] : r.outcome) {
            da += o.acoin_delta();
            db += o.bcoin_delta();
        }
        if (da != 0) return n + " ACoin imbalance " + amt(da);
        if (db != 0) return n + " BCoin imbalance " + amt(db);
        if (!r.final_world.conserved()) return n + " final ledger totals drifted";
    }
    for (const std::string h : {"bob", "alice"})
        for (const auto& v : enum_of(h).res.violations)
            if (v.predicate == "conservation") return "enumerated run broke conservation";
    return "";
}

std::string check_enumeration_safety() {
    for (const std::string h : {"bob", "alice"}) {
        const TimedEnum& te = enum_of(h);
        if (te.res.runs == 0) return "no runs with honest " + h;
        if (!te.res.violations.empty()) {
            const Violation& v = te.res.violations.front();
            return "honest " + h + ": " + v.predicate + ": " + v.description;
        }
        if (te.ms >= 60000.0)
            return "honest " + h + " took " + std::to_string(te.ms) + " ms";
    }
    return "";
}

std::string check_replay_determinism() {
    for (const auto& n : builtin_scenario_names()) {
        const RunResult& first = run_of(n).run;
        auto again = run_scenario(builtin_scenario(n).value());
        if (!again.is_ok()) return n + " rerun failed";
        if (again.value().jsonl() != first.jsonl()) return n + " traces differ between runs";
        auto rep = validate_trace(first.jsonl());
        if (!rep.is_ok()) return n + " validation errored";
        if (!rep.value().ok)
            return n + " line " + std::to_string(rep.value().line) + ": " + rep.value().reason;
    }
    return "";
}

struct Criterion {
    const char* title;
    std::function<std::string()> check;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"secrets are revealed on-chain before any later step consumes them",
         check_secret_lifecycle},
        {"swap responder lock is half the initiator lock and redeems chain through the secret",
         check_swap_baseline},
        {"repaid loan closes with lender earning the interest and borrower recovering collateral",
         check_happy_path},
        {"auction settlement pays lender the debt, borrower the surplus, winner the collateral",
         check_auction_split},
        {"withholding a settlement secret cannot reduce the lender payout",
         check_double_agent_neutralized},
        {"failed auction falls back to seizing only the seizable output inside its window",
         check_seizure_fallback},
        {"no honest party is left with stranded funds after the final deadline", check_liveness},
        {"per-chain value is conserved in every builtin and enumerated run", check_conservation},
        {"depth-12 deviation search finds no violation against an honest lender or borrower",
         check_enumeration_safety},
        {"every builtin replays byte-identically and validates", check_replay_determinism},
    };

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        std::string why;
        try {
            why = criteria[i].check();
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        if (why.empty()) {
            std::printf("PASS %2zu: %s\n", i + 1, criteria[i].title);
        } else {
            std::printf("FAIL %2zu: %s (%s)\n", i + 1, criteria[i].title, why.c_str());
            ++failures;
        }
    }
    if (failures) std::printf("%d of %zu checks failed\n", failures, criteria.size());
    return failures ? 1 : 0;
}
