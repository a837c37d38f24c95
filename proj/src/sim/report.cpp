// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "sim/report.h"

#include <iomanip>
#include <set>
#include <sstream>

#include "sim/trace.h"

namespace atomicloans {

std::string render_report(const RunResult& r) {
    std::ostringstream os;
    os << "run: " << r.cfg.label << "\n";
    os << "kind: " << (r.cfg.kind == ScenarioKind::Loan ? "loan" : "swap") << "\n";
    os << "terminal: " << r.terminal << "\n";
    if (r.cfg.kind == ScenarioKind::Loan) {
        const auto& tl = r.cfg.timeline;
        os << "timeline: base=" << tl.base << " withdraw=+" << tl.withdraw_deadline
           << " expiry=+" << tl.loan_expiry << " bidding-end=+" << tl.bidding_end
           << " settle-by=+" << tl.bid_settlement_deadline << " seizure-end=+" << tl.seizure_end
           << "\n";
        if (r.winning_bid > 0) os << "winning bid: " << r.winning_bid << " BCoin\n";
    } else {
        os << "locks: alice " << r.swap_lock_alice << "s, bob " << r.swap_lock_bob << "s\n";
    }
    os << "balances:\n";
    for (const char* p : {"alice", "bob", "charlie", "rival", "escrow"}) {
        const PartyOutcome& o = r.of(p);
        os << "  " << std::left << std::setw(8) << p << std::right << " ACoin " << std::setw(7)
           << o.acoin_final << " (" << std::showpos << o.acoin_delta() << std::noshowpos << ")"
           << "  BCoin " << std::setw(7) << o.bcoin_final << " (" << std::showpos
           << o.bcoin_delta() << std::noshowpos << ")\n";
    }
    if (!r.revealed.empty()) {
        os << "secrets revealed:";
        for (const auto& [n, c] : r.revealed) os << " " << n << "@" << c;
        os << "\n";
    }
    if (r.liveness_violations.empty()) {
        os << "liveness: ok\n";
    } else {
        os << "liveness violations:\n";
        for (const auto& v : r.liveness_violations) os << "  " << v << "\n";
    }
    return os.str();
}

Result<std::map<std::string, std::pair<Amount, Amount>>> deltas_from_trace(
    const std::string& jsonl) {
    using R = Result<std::map<std::string, std::pair<Amount, Amount>>>;
    static const std::set<std::string> kParties = {"alice", "bob", "charlie", "rival"};
    std::map<std::string, std::pair<Amount, Amount>> d;
    for (const auto& p : kParties) d[p] = {0, 0};

    size_t start = 0;
    while (start < jsonl.size()) {
        size_t nl = jsonl.find('\n', start);
        std::string line =
            nl == std::string::npos ? jsonl.substr(start) : jsonl.substr(start, nl - start);
        start = nl == std::string::npos ? jsonl.size() : nl + 1;
        if (line.empty()) continue;
        auto ev = parse_trace_line(line);
        if (!ev.is_ok()) return R::fail(ev.error().code, ev.error().msg);
        const TraceEvent& e = ev.value();
        if (e.kind == "tx-accepted" && e.chain == "ACoin") {
            if (!e.detail.contains("inputs") || !e.detail.contains("outputs"))
                return R::fail(Err::InvalidParams, "tx-accepted event missing inputs/outputs");
            for (const auto& in : e.detail["inputs"]) {
                std::string src = in.value("source", "");
                if (kParties.count(src)) d[src].first -= in.value("value", Amount{0});
            }
            for (const auto& out : e.detail["outputs"]) {
                std::string dest = out.value("dest", "");
                if (kParties.count(dest)) d[dest].first += out.value("value", Amount{0});
            }
        } else if (e.kind == "op-accepted" && e.detail.contains("transfers")) {
            for (const auto& t : e.detail["transfers"]) {
                std::string party = t.value("party", "");
                if (kParties.count(party)) d[party].second += t.value("amount", Amount{0});
            }
        }
    }
    return R::ok(std::move(d));
}

}  // namespace atomicloans
