// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "sim/scenario.h"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace atomicloans {

namespace {

const std::vector<std::string> kParties = {"alice", "bob", "charlie", "rival"};

const std::vector<std::string> kDirectives = {
    // borrower
    "lock_collateral", "withdraw", "repay", "refund_repayment", "reveal_a2", "sweep_refund",
    "reclaim", "last_resort",
    // lender
    "fund", "accept_collateral", "refund_principal", "accept_repayment", "start_bidding",
    "reveal_b2", "seize",
    // either loan party
    "provide_signature", "claim", "counter_scan",
    // bidders
    "reveal_c", "sweep", "refund_bid",
    // swap
    "swap_lock", "swap_redeem", "swap_refund",
};

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool parse_u64(const std::string& s, uint64_t& out) {
    if (s.empty()) return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

bool parse_i64(const std::string& s, int64_t& out) {
    if (s.empty()) return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

std::string directive_str(const Directive& d) {
    switch (d.mode) {
        case Directive::Mode::Yes: return "yes";
        case Directive::Mode::No: return "no";
        case Directive::Mode::At: return "at:" + std::to_string(d.at);
    }
    return "yes";
}

bool parse_directive(const std::string& v, Directive& out) {
    if (v == "yes") {
        out = {};
        return true;
    }
    if (v == "no") {
        out = {Directive::Mode::No, 0};
        return true;
    }
    if (v.rfind("at:", 0) == 0) {
        uint64_t t = 0;
        if (!parse_u64(v.substr(3), t)) return false;
        out = {Directive::Mode::At, t};
        return true;
    }
    return false;
}

}  // namespace

const std::vector<std::string>& known_directives() { return kDirectives; }

Directive StrategySpec::get(const std::string& key) const {
    auto it = directives.find(key);
    return it == directives.end() ? Directive{} : it->second;
}

void StrategySpec::set(const std::string& key, Directive d) {
    if (d == Directive{})
        directives.erase(key);
    else
        directives[key] = d;
}

bool StrategySpec::honest() const {
    return directives.empty() && !cheat && !alias_of;
}

bool StrategySpec::is_default() const {
    return directives.empty() && bids.empty() && !alias_of && !cheat;
}

StrategySpec ScenarioConfig::strategy(const std::string& party) const {
    auto it = strategies.find(party);
    return it == strategies.end() ? StrategySpec{} : it->second;
}

Result<> ScenarioConfig::validate() const {
    using R = Result<>;
    if (seed == 0) return R::fail(Err::InvalidParams, "seed must be nonzero");
    for (const auto& [party, spec] : strategies) {
        if (std::find(kParties.begin(), kParties.end(), party) == kParties.end())
            return R::fail(Err::InvalidParams, "strategy references unknown party " + party);
        for (const auto& [key, d] : spec.directives)
            if (std::find(kDirectives.begin(), kDirectives.end(), key) == kDirectives.end())
                return R::fail(Err::InvalidParams, "unknown directive " + key);
        if (spec.alias_of &&
            std::find(kParties.begin(), kParties.end(), *spec.alias_of) == kParties.end())
            return R::fail(Err::InvalidParams, "alias references unknown party " + *spec.alias_of);
        for (size_t i = 1; i < spec.bids.size(); ++i)
            if (spec.bids[i].at < spec.bids[i - 1].at)
                return R::fail(Err::InvalidParams, "bid schedule must be time-ordered");
    }
    if (kind == ScenarioKind::Swap) {
        if (swap.amount_acoin <= 0 || swap.amount_bcoin <= 0)
            return R::fail(Err::InvalidParams, "swap amounts must be positive");
        if (swap.lock_duration < 2 || swap.lock_duration % 2 != 0)
            return R::fail(Err::InvalidParams, "swap lock duration must be even and >= 2");
        return R::ok();
    }
    if (terms.principal <= 0 || terms.interest < 0 || terms.liquidation_fee < 0)
        return R::fail(Err::InvalidParams, "bad principal/interest/fee");
    if (terms.collateral_seizable <= 0 || terms.collateral_refundable <= 0)
        return R::fail(Err::InvalidParams, "collateral portions must be positive");
    // Strictly increasing with enough room for the fixed agent step offsets.
    if (timeline.withdraw_deadline < 100 ||
        timeline.loan_expiry < timeline.withdraw_deadline + 200 ||
        timeline.bidding_end < timeline.loan_expiry + 200 ||
        timeline.seizure_end < timeline.bidding_end + 200)
        return R::fail(Err::InvalidParams, "timeline periods too short or not increasing");
    if (timeline.bid_settlement_deadline < timeline.bidding_end + 100 ||
        timeline.bid_settlement_deadline + 100 > timeline.seizure_end)
        return R::fail(Err::InvalidParams, "bid settlement deadline outside the seizure window");
    if (rate.num <= 0 || rate.den <= 0 || inception_rate.num <= 0 || inception_rate.den <= 0)
        return R::fail(Err::InvalidParams, "rates must be positive");
    // 150% collateral-to-debt ratio at the inception rate.
    if (2 * terms.collateral_total() * inception_rate.num <
        3 * terms.principal * inception_rate.den)
        return R::fail(Err::InvalidParams, "collateral below the 150% ratio at inception");
    return R::ok();
}

std::string ScenarioConfig::to_ini() const {
    std::ostringstream o;
    o << "[scenario]\n";
    o << "label = " << label << "\n";
    o << "kind = " << (kind == ScenarioKind::Loan ? "loan" : "swap") << "\n";
    o << "seed = " << seed << "\n";
    o << "scheme = " << (scheme == SigSchemeKind::Ed25519 ? "ed25519" : "transparent") << "\n";
    if (kind == ScenarioKind::Loan) {
        o << "\n[rate]\n";
        o << "valuation_num = " << rate.num << "\n";
        o << "valuation_den = " << rate.den << "\n";
        o << "inception_num = " << inception_rate.num << "\n";
        o << "inception_den = " << inception_rate.den << "\n";
        o << "\n[terms]\n";
        o << "principal = " << terms.principal << "\n";
        o << "interest = " << terms.interest << "\n";
        o << "liquidation_fee = " << terms.liquidation_fee << "\n";
        o << "collateral_seizable = " << terms.collateral_seizable << "\n";
        o << "collateral_refundable = " << terms.collateral_refundable << "\n";
        o << "\n[timeline]\n";
        o << "base = " << timeline.base << "\n";
        o << "withdraw_deadline = +" << timeline.withdraw_deadline << "\n";
        o << "loan_expiry = +" << timeline.loan_expiry << "\n";
        o << "bidding_end = +" << timeline.bidding_end << "\n";
        o << "bid_settlement_deadline = +" << timeline.bid_settlement_deadline << "\n";
        o << "seizure_end = +" << timeline.seizure_end << "\n";
        o << "\n[genesis]\n";
        o << "alice_acoin = " << genesis.alice_acoin << "\n";
        o << "alice_bcoin = " << genesis.alice_bcoin << "\n";
        o << "bob_bcoin = " << genesis.bob_bcoin << "\n";
        o << "charlie_bcoin = " << genesis.charlie_bcoin << "\n";
        o << "rival_bcoin = " << genesis.rival_bcoin << "\n";
    } else {
        o << "\n[genesis]\n";
        o << "alice_acoin = " << genesis.alice_acoin << "\n";
        o << "bob_bcoin = " << genesis.bob_bcoin << "\n";
        o << "\n[swap]\n";
        o << "amount_acoin = " << swap.amount_acoin << "\n";
        o << "amount_bcoin = " << swap.amount_bcoin << "\n";
        o << "lock_duration = " << swap.lock_duration << "\n";
    }
    for (const std::string& party : kParties) {
        StrategySpec s = strategy(party);
        if (s.is_default()) continue;
        o << "\n[strategy." << party << "]\n";
        for (const auto& [key, d] : s.directives)
            o << key << " = " << directive_str(d) << "\n";
        if (!s.bids.empty()) {
            o << "bid = ";
            for (size_t i = 0; i < s.bids.size(); ++i) {
                if (i) o << ",";
                o << s.bids[i].at << ":" << s.bids[i].amount;
            }
            o << "\n";
        }
        if (s.alias_of) o << "alias_of = " << *s.alias_of << "\n";
        if (s.cheat) o << "cheat = read_foreign_secret\n";
    }
    return o.str();
}

Result<ScenarioConfig> ScenarioConfig::from_ini(const std::string& text) {
    using R = Result<ScenarioConfig>;
    ScenarioConfig cfg;
    cfg.strategies.clear();
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        return R::fail(Err::InvalidParams, "line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') return fail("unterminated section header");
            section = line.substr(1, line.size() - 2);
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) return fail("expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) return fail("empty key");

        auto as_u64 = [&](uint64_t& dst) -> bool { return parse_u64(val, dst); };
        auto as_amount = [&](Amount& dst) -> bool {
            int64_t v;
            if (!parse_i64(val, v)) return false;
            dst = v;
            return true;
        };
        auto as_offset = [&](uint64_t& dst) -> bool {
            if (!val.empty() && val[0] == '+') return parse_u64(val.substr(1), dst);
            uint64_t abs;
            if (!parse_u64(val, abs)) return false;
            if (abs < cfg.timeline.base) return false;
            dst = abs - cfg.timeline.base;
            return true;
        };

        bool ok = true;
        if (section == "scenario") {
            if (key == "label")
                cfg.label = val;
            else if (key == "kind")
                ok = (val == "loan" ? (cfg.kind = ScenarioKind::Loan, true)
                                    : val == "swap" ? (cfg.kind = ScenarioKind::Swap, true)
                                                    : false);
            else if (key == "seed")
                ok = as_u64(cfg.seed);
            else if (key == "scheme")
                ok = (val == "ed25519"
                          ? (cfg.scheme = SigSchemeKind::Ed25519, true)
                          : val == "transparent" ? (cfg.scheme = SigSchemeKind::Transparent, true)
                                                 : false);
            else
                return fail("unknown key " + key);
        } else if (section == "rate") {
            if (key == "valuation_num")
                ok = parse_i64(val, cfg.rate.num);
            else if (key == "valuation_den")
                ok = parse_i64(val, cfg.rate.den);
            else if (key == "inception_num")
                ok = parse_i64(val, cfg.inception_rate.num);
            else if (key == "inception_den")
                ok = parse_i64(val, cfg.inception_rate.den);
            else
                return fail("unknown key " + key);
        } else if (section == "terms") {
            if (key == "principal")
                ok = as_amount(cfg.terms.principal);
            else if (key == "interest")
                ok = as_amount(cfg.terms.interest);
            else if (key == "liquidation_fee")
                ok = as_amount(cfg.terms.liquidation_fee);
            else if (key == "collateral_seizable")
                ok = as_amount(cfg.terms.collateral_seizable);
            else if (key == "collateral_refundable")
                ok = as_amount(cfg.terms.collateral_refundable);
            else
                return fail("unknown key " + key);
        } else if (section == "timeline") {
            if (key == "base")
                ok = as_u64(cfg.timeline.base);
            else if (key == "withdraw_deadline")
                ok = as_offset(cfg.timeline.withdraw_deadline);
            else if (key == "loan_expiry")
                ok = as_offset(cfg.timeline.loan_expiry);
            else if (key == "bidding_end")
                ok = as_offset(cfg.timeline.bidding_end);
            else if (key == "bid_settlement_deadline")
                ok = as_offset(cfg.timeline.bid_settlement_deadline);
            else if (key == "seizure_end")
                ok = as_offset(cfg.timeline.seizure_end);
            else
                return fail("unknown key " + key);
        } else if (section == "genesis") {
            if (key == "alice_acoin")
                ok = as_amount(cfg.genesis.alice_acoin);
            else if (key == "alice_bcoin")
                ok = as_amount(cfg.genesis.alice_bcoin);
            else if (key == "bob_bcoin")
                ok = as_amount(cfg.genesis.bob_bcoin);
            else if (key == "charlie_bcoin")
                ok = as_amount(cfg.genesis.charlie_bcoin);
            else if (key == "rival_bcoin")
                ok = as_amount(cfg.genesis.rival_bcoin);
            else
                return fail("unknown key " + key);
        } else if (section == "swap") {
            if (key == "amount_acoin")
                ok = as_amount(cfg.swap.amount_acoin);
            else if (key == "amount_bcoin")
                ok = as_amount(cfg.swap.amount_bcoin);
            else if (key == "lock_duration")
                ok = as_u64(cfg.swap.lock_duration);
            else
                return fail("unknown key " + key);
        } else if (section.rfind("strategy.", 0) == 0) {
            std::string party = section.substr(9);
            StrategySpec& s = cfg.strategies[party];
            if (key == "bid") {
                s.bids.clear();
                std::istringstream bs(val);
                std::string item;
                while (std::getline(bs, item, ',')) {
                    size_t c = item.find(':');
                    if (c == std::string::npos) return fail("bid entries are time:amount");
                    BidPlan b;
                    int64_t amt;
                    if (!parse_u64(trim(item.substr(0, c)), b.at) ||
                        !parse_i64(trim(item.substr(c + 1)), amt))
                        return fail("bad bid entry " + item);
                    b.amount = amt;
                    s.bids.push_back(b);
                }
            } else if (key == "alias_of") {
                s.alias_of = val;
            } else if (key == "cheat") {
                if (val != "read_foreign_secret") return fail("unknown cheat mode");
                s.cheat = true;
            } else {
                Directive d;
                if (!parse_directive(val, d)) return fail("bad directive value " + val);
                s.set(key, d);
            }
        } else {
            return fail("unknown section " + section);
        }
        if (!ok) return fail("bad value for " + key);
    }
    // Drop empty strategy sections so round-trips stay canonical.
    for (auto it = cfg.strategies.begin(); it != cfg.strategies.end();)
        it = it->second.is_default() ? cfg.strategies.erase(it) : ++it;
    if (auto v = cfg.validate(); !v.is_ok()) return R::fail(v.error().code, v.error().msg);
    return R::ok(std::move(cfg));
}

std::vector<std::string> builtin_scenario_names() {
    return {"atomic_swap_baseline", "happy_path",           "default_bidding",
            "default_no_bids_seizure", "nonreciprocating_lender", "double_agent_alice",
            "winner_walks_away",       "lender_unresponsive_refund"};
}

Result<ScenarioConfig> builtin_scenario(const std::string& name) {
    using R = Result<ScenarioConfig>;
    ScenarioConfig cfg;
    cfg.label = name;
    const Directive no{Directive::Mode::No, 0};
    if (name == "atomic_swap_baseline") {
        cfg.kind = ScenarioKind::Swap;
    } else if (name == "happy_path") {
        // all defaults
    } else if (name == "default_bidding") {
        cfg.strategies["alice"].set("repay", no);
        cfg.strategies["rival"].bids = {{cfg.timeline.base + 2100, 11000}};
        cfg.strategies["charlie"].bids = {{cfg.timeline.base + 2200, 12000}};
    } else if (name == "default_no_bids_seizure") {
        cfg.strategies["alice"].set("repay", no);
    } else if (name == "nonreciprocating_lender") {
        cfg.strategies["bob"].set("accept_repayment", no);
        cfg.strategies["bob"].set("start_bidding",
                                  {Directive::Mode::At, cfg.timeline.base + cfg.timeline.loan_expiry});
    } else if (name == "double_agent_alice") {
        cfg.strategies["alice"].set("repay", no);
        cfg.strategies["alice"].set("reveal_a2", no);
        cfg.strategies["charlie"].bids = {{cfg.timeline.base + 2200, 12000}};
        cfg.strategies["charlie"].alias_of = "alice";
    } else if (name == "winner_walks_away") {
        cfg.strategies["alice"].set("repay", no);
        cfg.strategies["charlie"].bids = {{cfg.timeline.base + 2200, 12000}};
        cfg.strategies["charlie"].set("reveal_c", no);
    } else if (name == "lender_unresponsive_refund") {
        cfg.strategies["bob"].set("accept_collateral", no);
        cfg.strategies["bob"].set("refund_principal", no);
        cfg.strategies["alice"].set("reclaim", no);
    } else {
        return R::fail(Err::InvalidParams, "unknown scenario " + name);
    }
    cfg.label = name;
    if (auto v = cfg.validate(); !v.is_ok()) return R::fail(v.error().code, v.error().msg);
    return R::ok(std::move(cfg));
}

}  // namespace atomicloans
