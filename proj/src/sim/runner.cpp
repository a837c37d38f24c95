// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "sim/runner.h"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "loan/collateral.h"

namespace atomicloans {

const PartyOutcome& RunResult::of(const std::string& party) const {
    static const PartyOutcome kZero{};
    auto it = outcome.find(party);
    return it == outcome.end() ? kZero : it->second;
}

std::string display_name(const PartyId& p) {
    if (p == PartyId::other(1)) return "rival";
    return p.name();
}

namespace {

const std::vector<std::string> kPartyNames = {"alice", "bob", "charlie", "rival"};

PartyId party_id(const std::string& name) {
    if (name == "alice") return PartyId::alice();
    if (name == "bob") return PartyId::bob();
    if (name == "charlie") return PartyId::charlie();
    return PartyId::other(1);
}

// Raised when a strategy asks its vault for a secret the party was never
// given. Information hygiene is enforced here, not trusted to strategies.
struct CheatAttempt {
    std::string party;
    std::string secret;
};

// Per-action attempt bookkeeping. Too-early rejections retry silently,
// script misses are traced once and retried a bounded number of times,
// anything else ends the attempt for good.
struct ActionCtl {
    bool done = false;
    int script_misses = 0;
    bool traced = false;
};

constexpr int kMaxScriptRetries = 8;
constexpr int kMaxRoundsPerStep = 12;

// Branch satisfaction from one party's point of view: `key` is the only
// signature available, `known` the preimages it can produce. MultiSig
// branches count as unavailable since they need the counterparty. With
// enforce_time off this asks "is the party entitled via some branch",
// with it on "can the party spend right now".
bool branch_feasible(const ScriptCondition& c, const PubKey& key,
                     const std::set<SecretHash>& known, Timestamp now, bool enforce_time) {
    return std::visit(
        [&](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, PreimageOf>) {
                return known.count(n.hash) > 0;
            } else if constexpr (std::is_same_v<T, SignedBy>) {
                return n.key == key;
            } else if constexpr (std::is_same_v<T, MultiSig2of2>) {
                return false;
            } else if constexpr (std::is_same_v<T, After>) {
                return !enforce_time || now >= n.t;
            } else if constexpr (std::is_same_v<T, Before>) {
                return !enforce_time || now < n.t;
            } else if constexpr (std::is_same_v<T, AllOf>) {
                for (const auto& k : n.kids)
                    if (!branch_feasible(k, key, known, now, enforce_time)) return false;
                return true;
            } else {
                for (const auto& k : n.kids)
                    if (branch_feasible(k, key, known, now, enforce_time)) return true;
                return false;
            }
        },
        c.node);
}

class Engine {
  public:
    Engine(const ScenarioConfig& cfg, const RunOptions& opts) : cfg_(cfg), opts_(opts) {
        res_.cfg = cfg;
    }

    Result<RunResult> run();

  private:
    using OJson = nlohmann::ordered_json;
    enum class Outcome { Idle, Acted, Rejected };

    Timestamp base() const { return Timestamp{cfg_.timeline.base}; }
    Timestamp wd() const { return cfg_.timeline.at(cfg_.timeline.withdraw_deadline); }
    Timestamp expiry() const { return cfg_.timeline.at(cfg_.timeline.loan_expiry); }
    Timestamp bend() const { return cfg_.timeline.at(cfg_.timeline.bidding_end); }
    Timestamp sdl() const { return cfg_.timeline.at(cfg_.timeline.bid_settlement_deadline); }
    Timestamp send() const { return cfg_.timeline.at(cfg_.timeline.seizure_end); }
    Timestamp now() const { return world_.now; }
    Amount valuation(Amount acoin) const { return cfg_.bcoin_value(acoin); }

    void setup_parties();
    void emit_run_start();
    void setup_genesis();
    Result<> setup_loan();
    std::vector<Timestamp> schedule() const;

    bool party_turn(const std::string& p);
    bool system_turn();
    bool alice_turn();
    bool bob_turn();
    bool bidder_turn(const std::string& p);
    bool swap_turn(const std::string& p);
    void cheat_probe(const std::string& p);

    ActionCtl& ctl(const std::string& key) { return ctl_[key]; }
    Directive dir(const std::string& party, const std::string& key) const {
        return spec_.at(party).get(key);
    }
    void consult(const std::string& party, const std::string& key);
    bool gate(const std::string& party, const std::string& key, bool core_honest,
              Timestamp honest_from, bool core_relaxed);

    SecretHash h(const std::string& name) const { return commit(secrets_.at(name)); }
    Secret own_secret(const std::string& party, const std::string& name);
    std::optional<Secret> public_secret(const SecretHash& target) const;
    bool is_public(const std::string& name) const { return public_secret(h(name)).has_value(); }
    bool acoin_public(const std::string& name) const;
    std::optional<Secret> obtainable(const std::string& party, const std::string& name) const;
    std::string secret_name(const Secret& s) const;

    void emit(const std::string& chain, const std::string& actor, const std::string& kind,
              OJson detail);
    void emit_reveals(const std::string& chain, const std::string& actor,
                      const std::vector<Secret>& secrets);
    void note_state(LoanState to);

    Outcome attempt_op(const std::string& actor, const std::string& key, const std::string& op,
                       OJson args, const std::vector<std::string>& uses,
                       const std::function<Result<>()>& fn);
    Outcome attempt_tx(const std::string& actor, const std::string& key,
                       const std::string& purpose, const Transaction& tx,
                       const std::vector<std::string>& out_tags,
                       const std::vector<std::string>& uses);

    TxOut pay_to(const std::string& party, Amount value) const {
        return TxOut{value, signed_by(kp_.at(party).pub), party_id(party)};
    }
    Transaction plain_spend(std::span<const OutPoint> ins, std::vector<TxOut> outs,
                            const KeyPair& signer, const std::vector<Secret>& preimages) const;

    bool a_lock();
    bool a_withdraw();
    bool a_repay();
    bool a_refund_repayment();
    bool a_provide_signature();
    bool a_reveal_a2();
    bool a_counter_scan();
    bool a_claim();
    bool a_sweep_refund();
    bool a_reclaim();
    bool a_last_resort();

    bool b_fund();
    bool b_accept_collateral();
    bool b_refund_principal();
    bool b_accept_repayment();
    bool b_start_bidding();
    bool b_provide_signature();
    bool b_reveal_b2();
    bool b_seize();
    bool b_claim();
    bool b_counter_scan();

    bool bid_turn(const std::string& p);
    bool c_reveal_c(const std::string& p);
    bool c_sweep(const std::string& p);
    bool c_refund_bid(const std::string& p);

    bool s_alice_lock();
    bool s_bob_lock();
    bool s_alice_redeem();
    bool s_bob_redeem();
    bool s_alice_refund();
    bool s_bob_refund();

    bool party_claim(const std::string& p, const PartyId& pid, Timestamp honest_from);
    bool collateral_unspent(std::vector<OutPoint>* ins, Amount* total) const;

    void liveness_probe();
    void finalize();

    ScenarioConfig cfg_;
    RunOptions opts_;
    RunResult res_;
    World world_;
    std::optional<LoanContract> contract_;
    std::optional<LockedCollateral> locked_;
    OutPoint alice_fund_op_;

    std::map<std::string, KeyPair> kp_;
    std::map<std::string, StrategySpec> spec_;
    std::map<std::string, std::string> brain_;
    std::map<std::string, std::map<std::string, Secret>> vault_;
    std::map<std::string, Secret> secrets_;
    std::map<SecretHash, std::string> names_;

    std::map<std::string, ActionCtl> ctl_;
    std::map<std::string, size_t> bid_next_;
    std::set<std::string> consulted_seen_;
    std::set<std::string> cheat_done_;
    uint64_t seq_ = 0;

    std::optional<OutPoint> swap_out_;
    uint32_t swap_htlc_ = 0;
    bool swap_alice_redeemed_ = false;
    bool swap_bob_redeemed_ = false;
    bool swap_alice_refunded_ = false;
    bool swap_bob_refunded_ = false;
};

void Engine::setup_parties() {
    DeterministicRng rng(cfg_.seed);
    const SignatureScheme& scheme = scheme_for(cfg_.scheme);
    world_.scheme_kind = cfg_.scheme;
    for (const auto& p : kPartyNames) {
        kp_[p] = scheme.keygen(rng);
        world_.register_party(party_id(p), kp_[p].pub);
        spec_[p] = cfg_.strategy(p);
    }
    // Fixed draw order keeps the byte stream identical across scenarios
    // that share a seed.
    for (const char* n : {"A1", "A2", "B1", "B2", "C", "C-rival", "A"}) {
        secrets_[n] = rng.next_secret();
        names_[commit(secrets_[n])] = n;
    }
    vault_["alice"] = {{"A1", secrets_["A1"]}, {"A2", secrets_["A2"]}, {"A", secrets_["A"]}};
    vault_["bob"] = {{"B1", secrets_["B1"]}, {"B2", secrets_["B2"]}};
    vault_["charlie"] = {{"C", secrets_["C"]}};
    vault_["rival"] = {{"C-rival", secrets_["C-rival"]}};
    for (const auto& p : kPartyNames) {
        brain_[p] = p;
        if (spec_[p].alias_of && vault_.count(*spec_[p].alias_of)) {
            for (const auto& [n, s] : vault_[p]) vault_[*spec_[p].alias_of][n] = s;
            brain_[p] = *spec_[p].alias_of;
        }
    }
}

void Engine::emit_run_start() {
    world_.now = base();
    OJson d;
    d["label"] = cfg_.label;
    d["kind"] = cfg_.kind == ScenarioKind::Loan ? "loan" : "swap";
    d["seed"] = cfg_.seed;
    d["scheme"] = world_.scheme().name();
    d["config"] = cfg_.to_ini();
    emit("-", "system", "run-start", std::move(d));
}

void Engine::setup_genesis() {
    auto gen_utxo = [&](const std::string& p, Amount v) {
        OutPoint op = world_.acoin.add_genesis(v, party_id(p), kp_[p].pub);
        OJson d;
        d["party"] = p;
        d["amount"] = v;
        d["outpoint"] = op.str();
        emit("ACoin", "system", "genesis-output", std::move(d));
        return op;
    };
    auto gen_bal = [&](const std::string& p, Amount v) {
        if (v <= 0) return;
        world_.bcoin.mint(party_id(p), v);
        OJson d;
        d["party"] = p;
        d["amount"] = v;
        emit("BCoin", "system", "genesis-balance", std::move(d));
    };
    if (cfg_.genesis.alice_acoin > 0) alice_fund_op_ = gen_utxo("alice", cfg_.genesis.alice_acoin);
    gen_bal("alice", cfg_.genesis.alice_bcoin);
    gen_bal("bob", cfg_.genesis.bob_bcoin);
    gen_bal("charlie", cfg_.genesis.charlie_bcoin);
    gen_bal("rival", cfg_.genesis.rival_bcoin);
    world_.seal_genesis();
    for (const auto& p : kPartyNames) {
        auto& o = res_.outcome[p];
        o.acoin_initial = world_.acoin.balance_of(party_id(p));
        o.bcoin_initial = world_.bcoin.balance_of(party_id(p));
    }
    res_.outcome["escrow"] = PartyOutcome{};
}

Result<> Engine::setup_loan() {
    CollateralParams cp;
    cp.alice = kp_["alice"].pub;
    cp.bob = kp_["bob"].pub;
    cp.h_a1 = h("A1");
    cp.h_a2 = h("A2");
    cp.h_b1 = h("B1");
    cp.h_b2 = h("B2");
    cp.timeline = PeriodTimeline{wd(), expiry(), bend(), send()};
    cp.seizable_value = cfg_.terms.collateral_seizable;
    cp.refundable_value = cfg_.terms.collateral_refundable;

    LoanTerms terms;
    terms.principal = cfg_.terms.principal;
    terms.interest = cfg_.terms.interest;
    terms.liquidation_fee = cfg_.terms.liquidation_fee;
    terms.collateral = cp;
    terms.bid_settlement_deadline = sdl();
    if (auto v = terms.validate(); !v.is_ok()) return v;

    // Inception check: collateral worth at least 150% of the principal at
    // the rate the parties struck the deal at.
    if (2 * cfg_.terms.collateral_total() * cfg_.inception_rate.num <
        3 * cfg_.terms.principal * cfg_.inception_rate.den)
        return Result<>::fail(Err::InvalidParams, "collateral below 150% of principal");

    contract_.emplace(terms, PartyId::alice(), PartyId::bob(), kp_["alice"].pub, kp_["bob"].pub);
    OJson d;
    d["principal"] = terms.principal;
    d["interest"] = terms.interest;
    d["liquidation_fee"] = terms.liquidation_fee;
    d["collateral_seizable"] = cp.seizable_value;
    d["collateral_refundable"] = cp.refundable_value;
    d["withdraw_deadline"] = wd().seconds;
    d["loan_expiry"] = expiry().seconds;
    d["bidding_end"] = bend().seconds;
    d["bid_settlement_deadline"] = sdl().seconds;
    d["seizure_end"] = send().seconds;
    emit("BCoin", "system", "contract-created", std::move(d));
    return Result<>::ok();
}

std::vector<Timestamp> Engine::schedule() const {
    std::set<uint64_t> offs;
    if (cfg_.kind == ScenarioKind::Loan) {
        const auto& tl = cfg_.timeline;
        for (uint64_t o : {5u, 10u, 20u, 30u, 40u}) offs.insert(o);
        for (uint64_t o : {0u, 5u, 10u, 20u}) offs.insert(tl.withdraw_deadline + o);
        for (uint64_t o : {100u, 90u, 80u}) offs.insert(tl.loan_expiry - o);
        for (uint64_t o : {0u, 5u}) offs.insert(tl.loan_expiry + o);
        for (uint64_t o : {0u, 5u, 10u, 20u, 30u, 40u, 50u, 60u, 70u, 80u, 90u})
            offs.insert(tl.bidding_end + o);
        for (uint64_t o : {0u, 5u, 10u, 20u}) offs.insert(tl.bid_settlement_deadline + o);
        for (uint64_t o : {0u, 5u, 10u}) offs.insert(tl.seizure_end + o);
    } else {
        uint64_t dur = cfg_.swap.lock_duration;
        for (uint64_t o : {5u, 10u, 20u, 30u, 40u, 50u}) offs.insert(o);
        offs.insert(dur / 2);
        offs.insert(dur / 2 + 10);
        offs.insert(dur);
        offs.insert(dur + 10);
    }
    for (const auto& [p, s] : spec_) {
        for (const auto& [k, d] : s.directives)
            if (d.mode == Directive::Mode::At && d.at >= cfg_.timeline.base)
                offs.insert(d.at - cfg_.timeline.base);
        for (const auto& b : s.bids)
            if (b.at >= cfg_.timeline.base) offs.insert(b.at - cfg_.timeline.base);
    }
    offs.insert((offs.empty() ? 0 : *offs.rbegin()) + 2);  // liveness probe slot
    std::vector<Timestamp> out;
    out.reserve(offs.size());
    for (uint64_t o : offs) out.push_back(cfg_.timeline.at(o));
    return out;
}

void Engine::consult(const std::string& party, const std::string& key) {
    if (!opts_.track_consults.count(party)) return;
    std::string full = party + ":" + key;
    if (consulted_seen_.insert(full).second) res_.consulted.push_back(full);
}

// Yes acts once the honest condition and schedule time hold; At acts from
// the requested time whenever either condition form holds; No never acts
// but still logs the decision point so deviations branch from it.
bool Engine::gate(const std::string& party, const std::string& key, bool core_honest,
                  Timestamp honest_from, bool core_relaxed) {
    if (core_honest) consult(party, key);
    Directive d = dir(party, key);
    switch (d.mode) {
        case Directive::Mode::No: return false;
        case Directive::Mode::Yes: return core_honest && now() >= honest_from;
        case Directive::Mode::At:
            return (core_honest || core_relaxed) && now().seconds >= d.at;
    }
    return false;
}

Secret Engine::own_secret(const std::string& party, const std::string& name) {
    const auto& v = vault_[brain_[party]];
    auto it = v.find(name);
    if (it == v.end()) throw CheatAttempt{party, name};
    return it->second;
}

std::optional<Secret> Engine::public_secret(const SecretHash& target) const {
    for (const auto& s : world_.acoin.scan_revealed())
        if (commit(s) == target) return s;
    for (const auto& s : world_.bcoin.scan_revealed())
        if (commit(s) == target) return s;
    return std::nullopt;
}

bool Engine::acoin_public(const std::string& name) const {
    SecretHash target = h(name);
    for (const auto& s : world_.acoin.scan_revealed())
        if (commit(s) == target) return true;
    return false;
}

std::optional<Secret> Engine::obtainable(const std::string& party, const std::string& name) const {
    if (auto s = public_secret(h(name))) return s;
    auto vit = vault_.find(brain_.at(party));
    if (vit != vault_.end()) {
        auto it = vit->second.find(name);
        if (it != vit->second.end()) return it->second;
    }
    return std::nullopt;
}

std::string Engine::secret_name(const Secret& s) const {
    auto it = names_.find(commit(s));
    return it == names_.end() ? "secret-" + s.hex().substr(0, 8) : it->second;
}

void Engine::emit(const std::string& chain, const std::string& actor, const std::string& kind,
                  OJson detail) {
    res_.trace.push_back(TraceEvent{seq_++, now(), chain, actor, kind, std::move(detail)});
}

void Engine::emit_reveals(const std::string& chain, const std::string& actor,
                          const std::vector<Secret>& secrets) {
    for (const auto& s : secrets) {
        std::string n = secret_name(s);
        OJson d;
        d["name"] = n;
        d["hash"] = commit(s).hex();
        emit(chain, actor, "secret-revealed", std::move(d));
        res_.revealed.push_back({n, chain});
    }
}

void Engine::note_state(LoanState to) {
    switch (to) {
        case LoanState::Funded: res_.funded = true; break;
        case LoanState::Withdrawn: res_.withdrawn = true; break;
        case LoanState::Repaid: res_.repaid = true; break;
        case LoanState::Closed: res_.closed = true; break;
        case LoanState::Settled: res_.settled = true; break;
        case LoanState::BiddingClosed:
            if (const Bid* w = contract_->winning_bid()) res_.winning_bid = w->amount;
            break;
        default: break;
    }
}

Engine::Outcome Engine::attempt_op(const std::string& actor, const std::string& key,
                                   const std::string& op, OJson args,
                                   const std::vector<std::string>& uses,
                                   const std::function<Result<>()>& fn) {
    auto& c = ctl(key);
    if (c.done) return Outcome::Idle;

    std::map<std::string, Amount> before;
    for (const auto& p : kPartyNames) before[p] = world_.bcoin.balance_of(party_id(p));
    Amount esc_before = 0;
    for (const auto& [k, v] : world_.bcoin.escrows()) esc_before += v;
    std::set<Secret> rev_before = world_.bcoin.scan_revealed();
    LoanState st_before = contract_ ? contract_->state() : LoanState::Created;

    Result<> r = fn();
    if (!r.is_ok()) {
        if (r.error().code == Err::TooEarly) return Outcome::Idle;
        c.done = true;
        OJson d;
        d["op"] = op;
        d["args"] = std::move(args);
        d["error"] = err_name(r.error().code);
        d["reason"] = r.error().msg;
        emit("BCoin", actor, "op-rejected", std::move(d));
        return Outcome::Rejected;
    }
    c.done = true;

    OJson transfers = OJson::array();
    for (const auto& p : kPartyNames) {
        Amount d = world_.bcoin.balance_of(party_id(p)) - before[p];
        if (d != 0) transfers.push_back(OJson{{"party", p}, {"amount", d}});
    }
    Amount esc_after = 0;
    for (const auto& [k, v] : world_.bcoin.escrows()) esc_after += v;
    if (esc_after != esc_before)
        transfers.push_back(OJson{{"party", "escrow"}, {"amount", esc_after - esc_before}});

    std::vector<Secret> new_rev;
    for (const auto& s : world_.bcoin.scan_revealed())
        if (!rev_before.count(s)) new_rev.push_back(s);

    OJson d;
    d["op"] = op;
    d["args"] = std::move(args);
    if (!uses.empty()) d["uses"] = uses;
    if (!transfers.empty()) d["transfers"] = std::move(transfers);
    emit("BCoin", actor, "op-accepted", std::move(d));

    if (contract_ && contract_->state() != st_before) {
        OJson t;
        t["op"] = op;
        t["from"] = loan_state_name(st_before);
        t["to"] = loan_state_name(contract_->state());
        emit("BCoin", actor, "state-transition", std::move(t));
        note_state(contract_->state());
    }
    emit_reveals("BCoin", actor, new_rev);
    return Outcome::Acted;
}

Engine::Outcome Engine::attempt_tx(const std::string& actor, const std::string& key,
                                   const std::string& purpose, const Transaction& tx,
                                   const std::vector<std::string>& out_tags,
                                   const std::vector<std::string>& uses) {
    auto& c = ctl(key);
    if (c.done) return Outcome::Idle;

    auto sub = world_.acoin.submit(tx, now(), world_.scheme());
    if (!sub.is_ok()) {
        const auto& e = sub.error();
        bool script_miss = e.code == Err::ConditionUnsatisfied;
        if (script_miss && ++c.script_misses < kMaxScriptRetries) {
            if (c.traced) return Outcome::Idle;
        } else {
            c.done = true;
        }
        if (c.traced) return Outcome::Idle;
        c.traced = true;
        OJson d;
        d["purpose"] = purpose;
        d["error"] = err_name(e.code);
        d["reason"] = e.msg;
        emit("ACoin", actor, "tx-rejected", std::move(d));
        return Outcome::Rejected;
    }
    c.done = true;
    const AcceptedTx& acc = sub.value();

    OJson ins = OJson::array();
    for (size_t i = 0; i < acc.tx.inputs.size(); ++i) {
        const TxOut& src = acc.consumed[i];
        OJson e;
        e["outpoint"] = acc.tx.inputs[i].prevout.str();
        e["value"] = src.value;
        e["source"] = src.owner ? display_name(*src.owner) : "script";
        ins.push_back(std::move(e));
    }
    OJson outs = OJson::array();
    for (size_t i = 0; i < acc.tx.outputs.size(); ++i) {
        const TxOut& o = acc.tx.outputs[i];
        OJson e;
        e["value"] = o.value;
        e["dest"] =
            i < out_tags.size() ? out_tags[i] : (o.owner ? display_name(*o.owner) : "script");
        outs.push_back(std::move(e));
    }
    OJson d;
    d["txid"] = to_hex(acc.txid);
    d["purpose"] = purpose;
    d["inputs"] = std::move(ins);
    d["outputs"] = std::move(outs);
    if (!uses.empty()) d["uses"] = uses;
    emit("ACoin", actor, "tx-accepted", std::move(d));
    emit_reveals("ACoin", actor, acc.new_reveals);
    return Outcome::Acted;
}

Transaction Engine::plain_spend(std::span<const OutPoint> ins, std::vector<TxOut> outs,
                                const KeyPair& signer, const std::vector<Secret>& preimages) const {
    Transaction tx;
    for (const auto& op : ins) tx.inputs.push_back({op, {}});
    tx.outputs = std::move(outs);
    auto msg = canonical_spend_message(world_.acoin.chain_id(), tx);
    Signature sig = world_.scheme().sign(signer, msg);
    Witness w;
    w.preimages = preimages;
    w.signatures = {{signer.pub, sig}};
    for (auto& in : tx.inputs) in.witness = w;
    return tx;
}

bool Engine::collateral_unspent(std::vector<OutPoint>* ins, Amount* total) const {
    if (!locked_) return false;
    bool any = false;
    for (const OutPoint& op : {locked_->seizable, locked_->refundable}) {
        const TxOut* o = world_.acoin.find(op);
        if (!o) continue;
        any = true;
        if (ins) ins->push_back(op);
        if (total) *total += o->value;
    }
    return any;
}

void Engine::cheat_probe(const std::string& p) {
    if (!spec_[p].cheat || cheat_done_.count(p)) return;
    cheat_done_.insert(p);
    static const std::map<std::string, std::string> kForeign = {
        {"alice", "B2"}, {"bob", "A2"}, {"charlie", "A1"}, {"rival", "A1"}};
    own_secret(p, kForeign.at(p));
}

bool Engine::party_turn(const std::string& p) {
    cheat_probe(p);
    if (cfg_.kind == ScenarioKind::Swap) return swap_turn(p);
    if (p == "alice") return alice_turn();
    if (p == "bob") return bob_turn();
    return bidder_turn(p);
}

bool Engine::system_turn() {
    if (!contract_) return false;
    if (contract_->state() != LoanState::BiddingOpen || now() < bend()) return false;
    return attempt_op("system", "system:close_bidding", "close_bidding", OJson::object(), {},
                      [&] { return contract_->close_bidding(now()); }) != Outcome::Idle;
}

bool Engine::alice_turn() {
    bool any = false;
    any |= a_lock();
    any |= a_withdraw();
    any |= a_repay();
    any |= a_refund_repayment();
    any |= a_provide_signature();
    any |= a_reveal_a2();
    any |= a_counter_scan();
    any |= a_claim();
    any |= a_sweep_refund();
    any |= a_reclaim();
    any |= a_last_resort();
    return any;
}

bool Engine::bob_turn() {
    bool any = false;
    any |= b_fund();
    any |= b_accept_collateral();
    any |= b_refund_principal();
    any |= b_accept_repayment();
    any |= b_start_bidding();
    any |= b_provide_signature();
    any |= b_reveal_b2();
    any |= b_seize();
    any |= b_counter_scan();
    any |= b_claim();
    return any;
}

bool Engine::bidder_turn(const std::string& p) {
    bool any = false;
    any |= bid_turn(p);
    any |= c_reveal_c(p);
    any |= c_sweep(p);
    any |= c_refund_bid(p);
    return any;
}

bool Engine::swap_turn(const std::string& p) {
    bool any = false;
    if (p == "alice") {
        any |= s_alice_lock();
        any |= s_alice_redeem();
        any |= s_alice_refund();
    } else if (p == "bob") {
        any |= s_bob_lock();
        any |= s_bob_redeem();
        any |= s_bob_refund();
    }
    return any;
}

// ---- borrower actions ----

bool Engine::a_lock() {
    if (!contract_ || ctl("alice:lock_collateral").done) return false;
    bool funded_live = world_.acoin.find(alice_fund_op_) != nullptr;
    bool core = contract_->state() == LoanState::Funded && now() < wd() && funded_live;
    if (!gate("alice", "lock_collateral", core, base().plus(10), funded_live)) return false;

    const TxOut* fund = world_.acoin.find(alice_fund_op_);
    if (!fund) return false;
    Amount total = cfg_.terms.collateral_total();
    if (fund->value < total) return false;

    const CollateralParams& cp = contract_->terms().collateral;
    Transaction tx;
    tx.inputs.push_back({alice_fund_op_, {}});
    tx.outputs.push_back({cp.seizable_value, seizable_script(cp), std::nullopt});
    tx.outputs.push_back({cp.refundable_value, refundable_script(cp), std::nullopt});
    std::vector<std::string> tags = {"collateral-seizable", "collateral-refundable"};
    if (fund->value > total) {
        tx.outputs.push_back(pay_to("alice", fund->value - total));
        tags.push_back("alice");
    }
    auto msg = canonical_spend_message(world_.acoin.chain_id(), tx);
    Signature sig = world_.scheme().sign(kp_["alice"], msg);
    for (auto& in : tx.inputs) in.witness.signatures = {{kp_["alice"].pub, sig}};

    std::array<uint8_t, 32> txid = compute_txid(world_.acoin.chain_id(), tx);
    Outcome out = attempt_tx("alice", "alice:lock_collateral", "collateral-lock", tx, tags, {});
    if (out == Outcome::Acted) {
        locked_ = LockedCollateral{{txid, 0}, {txid, 1}, std::nullopt, txid};
        contract_->record_collateral(locked_->seizable, locked_->refundable);
    }
    return out != Outcome::Idle;
}

bool Engine::a_withdraw() {
    if (!contract_ || ctl("alice:withdraw").done) return false;
    bool b1 = is_public("B1");
    bool funded = contract_->state() == LoanState::Funded;
    bool core = funded && b1 && now() < wd();
    if (!gate("alice", "withdraw", core, base().plus(30), funded && b1)) return false;
    Secret b1v = *public_secret(h("B1"));
    Secret a1v = own_secret("alice", "A1");
    return attempt_op("alice", "alice:withdraw", "withdraw", OJson::object(), {"A1", "B1"},
                      [&] {
                          return contract_->withdraw(world_.bcoin, PartyId::alice(), a1v, b1v,
                                                     now());
                      }) != Outcome::Idle;
}

bool Engine::a_repay() {
    if (!contract_ || ctl("alice:repay").done) return false;
    bool withdrawn = contract_->state() == LoanState::Withdrawn;
    bool core = withdrawn && now() < expiry();
    if (!gate("alice", "repay", core, Timestamp{expiry().seconds - 100}, withdrawn)) return false;
    Amount amt = contract_->terms().repayment_amount();
    OJson args;
    args["amount"] = amt;
    return attempt_op("alice", "alice:repay", "repay", std::move(args), {}, [&] {
               return contract_->repay(world_.bcoin, PartyId::alice(), amt, now());
           }) != Outcome::Idle;
}

bool Engine::a_refund_repayment() {
    if (!contract_ || ctl("alice:refund_repayment").done) return false;
    bool repaid = contract_->state() == LoanState::Repaid;
    bool core = repaid && now() >= bend();
    if (!gate("alice", "refund_repayment", core, bend(), repaid)) return false;
    return attempt_op("alice", "alice:refund_repayment", "refund_repayment", OJson::object(), {},
                      [&] {
                          return contract_->refund_repayment(world_.bcoin, PartyId::alice(),
                                                             now());
                      }) != Outcome::Idle;
}

bool Engine::a_provide_signature() {
    if (!contract_ || ctl("alice:provide_signature").done) return false;
    const Bid* w = contract_->winning_bid();
    bool closed = contract_->state() == LoanState::BiddingClosed;
    bool pending = closed && w && !contract_->registry().sig_alice && locked_;
    bool rational = false;
    if (pending) {
        Amount bob_cut = std::min(w->amount, contract_->terms().owed_on_liquidation());
        rational = w->amount - bob_cut >= valuation(cfg_.terms.collateral_refundable);
    }
    if (!gate("alice", "provide_signature", pending && rational, bend().plus(10), pending))
        return false;
    Signature sig = world_.scheme().sign(kp_["alice"], contract_->settlement_payload());
    return attempt_op("alice", "alice:provide_signature", "provide_signature", OJson::object(),
                      {}, [&] {
                          return contract_->provide_signature(PartyId::alice(), sig,
                                                              world_.scheme());
                      }) != Outcome::Idle;
}

bool Engine::a_reveal_a2() {
    if (!contract_ || ctl("alice:reveal_a2").done) return false;
    bool closed = contract_->state() == LoanState::BiddingClosed;
    bool pending = closed && !contract_->registry().a2;
    bool core = pending && contract_->registry().c.has_value();
    if (!gate("alice", "reveal_a2", core, bend().plus(40), pending)) return false;
    Secret a2 = own_secret("alice", "A2");
    return attempt_op("alice", "alice:reveal_a2", "reveal_settlement_secret", OJson{{"which", "A2"}},
                      {"A2", "C"}, [&] {
                          return contract_->reveal_settlement_secret(world_.bcoin, PartyId::alice(),
                                                                     SettlementWhich::A2, a2);
                      }) != Outcome::Idle;
}

bool Engine::a_counter_scan() {
    if (!contract_ || ctl("alice:counter_scan").done) return false;
    bool core = contract_->state() == LoanState::BiddingClosed && !contract_->registry().b2 &&
                acoin_public("B2");
    if (!gate("alice", "counter_scan", core, bend().plus(70), core)) return false;
    Secret b2 = *public_secret(h("B2"));
    return attempt_op("alice", "alice:counter_scan", "reveal_counterparty_secret",
                      OJson{{"which", "B2"}}, {"B2"}, [&] {
                          return contract_->reveal_counterparty_secret(world_.bcoin,
                                                                       PartyId::alice(), b2);
                      }) != Outcome::Idle;
}

bool Engine::party_claim(const std::string& p, const PartyId& pid, Timestamp honest_from) {
    std::string key = p + ":claim";
    if (!contract_ || ctl(key).done) return false;
    bool claimed = pid == PartyId::alice() ? contract_->alice_claimed() : contract_->bob_claimed();
    bool core = contract_->state() == LoanState::Settled && !claimed;
    if (!gate(p, "claim", core, honest_from, core)) return false;
    Amount got = 0;
    Outcome out = attempt_op(p, key, "claim_proceeds", OJson::object(), {}, [&]() -> Result<> {
        auto r = contract_->claim_proceeds(world_.bcoin, pid);
        if (!r.is_ok()) return Result<>::fail(r.error().code, r.error().msg);
        got = r.value();
        return Result<>::ok();
    });
    if (out == Outcome::Acted) {
        OJson d;
        d["party"] = p;
        d["amount"] = got;
        emit("BCoin", p, "claim", std::move(d));
    }
    return out != Outcome::Idle;
}

bool Engine::a_claim() { return party_claim("alice", PartyId::alice(), bend().plus(90)); }
bool Engine::b_claim() { return party_claim("bob", PartyId::bob(), bend().plus(80)); }

bool Engine::a_sweep_refund() {
    if (!contract_ || ctl("alice:sweep_refund").done) return false;
    std::vector<OutPoint> ins;
    Amount total = 0;
    bool alive = collateral_unspent(&ins, &total);
    // Honest use of the repayment branch is limited to the states where the
    // loan is settled on the BCoin side; during a live auction settlement
    // the collateral belongs to the winner even though B1 and B2 may both
    // be public already.
    LoanState st = contract_->state();
    bool entitled = st == LoanState::Closed || st == LoanState::PrincipalRefunded;
    bool core = alive && entitled && is_public("B1") && is_public("B2");
    auto b1 = obtainable("alice", "B1");
    auto b2 = obtainable("alice", "B2");
    if (!gate("alice", "sweep_refund", core, Timestamp{0}, alive && b1 && b2)) return false;
    if (!b1 || !b2) return false;
    Transaction tx = plain_spend(ins, {pay_to("alice", total)}, kp_["alice"], {*b1, *b2});
    return attempt_tx("alice", "alice:sweep_refund", "repayment-refund", tx, {"alice"},
                      {"B1", "B2"}) != Outcome::Idle;
}

bool Engine::a_reclaim() {
    if (!contract_ || !locked_ || ctl("alice:reclaim").done) return false;
    const TxOut* ref = world_.acoin.find(locked_->refundable);
    LoanState st = contract_->state();
    bool failed_path = st == LoanState::Funded || st == LoanState::Withdrawn ||
                       st == LoanState::PrincipalRefunded || st == LoanState::SeizureFallback ||
                       (st == LoanState::BiddingClosed && now() >= sdl());
    bool core = ref && failed_path && now() >= bend() && now() < send();
    if (!gate("alice", "reclaim", core, bend().plus(20), ref != nullptr)) return false;
    Transaction tx = plain_spend(std::span<const OutPoint>(&locked_->refundable, 1),
                                 {pay_to("alice", ref->value)}, kp_["alice"], {});
    return attempt_tx("alice", "alice:reclaim", "reclaim-refundable", tx, {"alice"}, {}) !=
           Outcome::Idle;
}

bool Engine::a_last_resort() {
    if (!contract_ || ctl("alice:last_resort").done) return false;
    std::vector<OutPoint> ins;
    Amount total = 0;
    bool alive = collateral_unspent(&ins, &total);
    bool core = alive && now() >= send() && contract_->state() != LoanState::Settled;
    if (!gate("alice", "last_resort", core, send(), alive)) return false;
    Transaction tx = plain_spend(ins, {pay_to("alice", total)}, kp_["alice"], {});
    return attempt_tx("alice", "alice:last_resort", "last-resort", tx, {"alice"}, {}) !=
           Outcome::Idle;
}

// ---- lender actions ----

bool Engine::b_fund() {
    if (!contract_ || ctl("bob:fund").done) return false;
    bool core = contract_->state() == LoanState::Created;
    if (!gate("bob", "fund", core, base().plus(5), true)) return false;
    Amount amt = contract_->terms().principal;
    OJson args;
    args["amount"] = amt;
    return attempt_op("bob", "bob:fund", "fund", std::move(args), {}, [&] {
               return contract_->fund(world_.bcoin, PartyId::bob(), amt);
           }) != Outcome::Idle;
}

bool Engine::b_accept_collateral() {
    if (!contract_ || ctl("bob:accept_collateral").done) return false;
    bool lock_ok = false;
    if (locked_ && contract_->collateral_recorded()) {
        const CollateralParams& cp = contract_->terms().collateral;
        const TxOut* s = world_.acoin.find(locked_->seizable);
        const TxOut* r = world_.acoin.find(locked_->refundable);
        lock_ok = s && r && s->value == cp.seizable_value && r->value == cp.refundable_value &&
                  s->cond == seizable_script(cp) && r->cond == refundable_script(cp);
    }
    bool funded = contract_->state() == LoanState::Funded;
    bool core = funded && lock_ok && now() < wd();
    if (!gate("bob", "accept_collateral", core, base().plus(20), funded && lock_ok)) return false;
    Secret b1 = own_secret("bob", "B1");
    return attempt_op("bob", "bob:accept_collateral", "accept_collateral", OJson::object(),
                      {"B1"}, [&] {
                          return contract_->accept_collateral(world_.bcoin, PartyId::bob(), b1);
                      }) != Outcome::Idle;
}

bool Engine::b_refund_principal() {
    if (!contract_ || ctl("bob:refund_principal").done) return false;
    bool funded = contract_->state() == LoanState::Funded;
    bool core = funded && now() >= wd();
    if (!gate("bob", "refund_principal", core, wd().plus(10), funded)) return false;
    Secret b2 = own_secret("bob", "B2");
    return attempt_op("bob", "bob:refund_principal", "refund_principal", OJson::object(), {"B2"},
                      [&] {
                          return contract_->refund_principal(world_.bcoin, PartyId::bob(), b2,
                                                             now());
                      }) != Outcome::Idle;
}

bool Engine::b_accept_repayment() {
    if (!contract_ || ctl("bob:accept_repayment").done) return false;
    bool core = contract_->state() == LoanState::Repaid;
    if (!gate("bob", "accept_repayment", core, Timestamp{expiry().seconds - 90}, core))
        return false;
    Secret b2 = own_secret("bob", "B2");
    return attempt_op("bob", "bob:accept_repayment", "accept_repayment", OJson::object(), {"B2"},
                      [&] {
                          return contract_->accept_repayment(world_.bcoin, PartyId::bob(), b2);
                      }) != Outcome::Idle;
}

bool Engine::b_start_bidding() {
    if (!contract_ || ctl("bob:start_bidding").done) return false;
    LoanState st = contract_->state();
    bool core = st == LoanState::Withdrawn && now() >= expiry();
    bool relaxed = st == LoanState::Withdrawn || st == LoanState::Repaid;
    if (!gate("bob", "start_bidding", core, expiry(), relaxed)) return false;
    return attempt_op("bob", "bob:start_bidding", "start_bidding", OJson::object(), {}, [&] {
               return contract_->start_bidding(PartyId::bob(), now());
           }) != Outcome::Idle;
}

bool Engine::b_provide_signature() {
    if (!contract_ || ctl("bob:provide_signature").done) return false;
    const Bid* w = contract_->winning_bid();
    bool pending = contract_->state() == LoanState::BiddingClosed && w &&
                   !contract_->registry().sig_bob && locked_;
    bool rational = false;
    if (pending)
        rational = std::min(w->amount, contract_->terms().owed_on_liquidation()) >=
                   valuation(cfg_.terms.collateral_seizable);
    if (!gate("bob", "provide_signature", pending && rational, bend().plus(20), pending))
        return false;
    Signature sig = world_.scheme().sign(kp_["bob"], contract_->settlement_payload());
    return attempt_op("bob", "bob:provide_signature", "provide_signature", OJson::object(), {},
                      [&] {
                          return contract_->provide_signature(PartyId::bob(), sig,
                                                              world_.scheme());
                      }) != Outcome::Idle;
}

bool Engine::b_reveal_b2() {
    if (!contract_ || ctl("bob:reveal_b2").done) return false;
    bool pending =
        contract_->state() == LoanState::BiddingClosed && !contract_->registry().b2;
    bool core = pending && contract_->registry().c.has_value();
    if (!gate("bob", "reveal_b2", core, bend().plus(50), pending)) return false;
    Secret b2 = own_secret("bob", "B2");
    return attempt_op("bob", "bob:reveal_b2", "reveal_settlement_secret", OJson{{"which", "B2"}},
                      {"B2", "C"}, [&] {
                          return contract_->reveal_settlement_secret(world_.bcoin, PartyId::bob(),
                                                                     SettlementWhich::B2, b2);
                      }) != Outcome::Idle;
}

bool Engine::b_seize() {
    if (!contract_ || !locked_ || ctl("bob:seize").done) return false;
    const TxOut* seiz = world_.acoin.find(locked_->seizable);
    LoanState st = contract_->state();
    bool failed_auction = st == LoanState::SeizureFallback ||
                          (st == LoanState::BiddingClosed && now() >= sdl());
    bool a1 = is_public("A1");
    bool core = seiz && a1 && failed_auction && now() >= bend() && now() < send();
    if (!gate("bob", "seize", core, bend().plus(10), seiz && a1)) return false;
    Secret a1v = *public_secret(h("A1"));
    Transaction tx = plain_spend(std::span<const OutPoint>(&locked_->seizable, 1),
                                 {pay_to("bob", seiz->value)}, kp_["bob"], {a1v});
    return attempt_tx("bob", "bob:seize", "seizure", tx, {"bob"}, {"A1"}) != Outcome::Idle;
}

bool Engine::b_counter_scan() {
    if (!contract_ || ctl("bob:counter_scan").done) return false;
    bool core = contract_->state() == LoanState::BiddingClosed && !contract_->registry().a2 &&
                acoin_public("A2");
    if (!gate("bob", "counter_scan", core, bend().plus(70), core)) return false;
    Secret a2 = *public_secret(h("A2"));
    return attempt_op("bob", "bob:counter_scan", "reveal_counterparty_secret",
                      OJson{{"which", "A2"}}, {"A2"}, [&] {
                          return contract_->reveal_counterparty_secret(world_.bcoin,
                                                                       PartyId::bob(), a2);
                      }) != Outcome::Idle;
}

// ---- bidder actions ----

bool Engine::bid_turn(const std::string& p) {
    if (!contract_) return false;
    if (contract_->state() == LoanState::BiddingOpen) consult(p, "bid");
    auto& idx = bid_next_[p];
    const auto& plan = spec_[p].bids;
    if (idx >= plan.size()) return false;
    const BidPlan& bp = plan[idx];
    if (now().seconds < bp.at) return false;
    LoanState st = contract_->state();
    if (st != LoanState::BiddingOpen) {
        // Keep waiting while the auction can still open; drop stale entries
        // once it is over.
        if (st == LoanState::BiddingClosed || loan_state_terminal(st)) ++idx;
        return false;
    }
    auto cs = obtainable(p, p == "rival" ? "C-rival" : "C");
    if (!cs) return false;
    Bid bid;
    bid.bidder = party_id(p);
    bid.amount = bp.amount;
    bid.h_c = commit(*cs);
    bid.acoin_dest = party_id(p);
    bid.acoin_dest_key = kp_[p].pub;
    const Bid* prev = contract_->winning_bid();
    Amount prev_amt = prev ? prev->amount : 0;
    std::string prev_name = prev ? display_name(prev->bidder) : "";
    std::string key = p + ":bid#" + std::to_string(idx);
    ++idx;
    OJson args;
    args["amount"] = bp.amount;
    Outcome out = attempt_op(p, key, "place_bid", std::move(args), {}, [&] {
        return contract_->place_bid(world_.bcoin, bid, now());
    });
    if (out == Outcome::Acted) {
        OJson d;
        d["bidder"] = p;
        d["amount"] = bp.amount;
        if (prev) {
            d["refunded"] = prev_name;
            d["refund_amount"] = prev_amt;
        }
        emit("BCoin", p, "bid-placed", std::move(d));
    }
    return out != Outcome::Idle;
}

bool Engine::c_reveal_c(const std::string& p) {
    std::string key = p + ":reveal_c";
    if (!contract_ || ctl(key).done) return false;
    const Bid* w = contract_->winning_bid();
    bool mine = contract_->state() == LoanState::BiddingClosed && w && w->bidder == party_id(p) &&
                !contract_->registry().c;
    bool sigs_good = false;
    if (mine && contract_->registry().both_signatures()) {
        auto payload = contract_->settlement_payload();
        sigs_good =
            world_.scheme().verify(kp_["alice"].pub, payload, *contract_->registry().sig_alice) &&
            world_.scheme().verify(kp_["bob"].pub, payload, *contract_->registry().sig_bob);
    }
    bool core = mine && sigs_good;
    if (!gate(p, "reveal_c", core, bend().plus(30), mine)) return false;
    std::string sname = p == "rival" ? "C-rival" : "C";
    auto cs = obtainable(p, sname);
    if (!cs) return false;
    return attempt_op(p, key, "reveal_secret_c", OJson::object(), {sname}, [&] {
               return contract_->reveal_secret_c(world_.bcoin, party_id(p), *cs);
           }) != Outcome::Idle;
}

bool Engine::c_sweep(const std::string& p) {
    std::string key = p + ":sweep";
    if (!contract_ || !locked_ || ctl(key).done) return false;
    const Bid* w = contract_->winning_bid();
    LoanState st = contract_->state();
    bool mine = (st == LoanState::BiddingClosed || st == LoanState::Settled) && w &&
                w->bidder == party_id(p) && contract_->registry().both_signatures();
    const TxOut* s = world_.acoin.find(locked_->seizable);
    const TxOut* r = world_.acoin.find(locked_->refundable);
    auto a2 = obtainable(p, "A2");
    auto b2 = obtainable(p, "B2");
    bool core = mine && s && r && a2 && b2;
    if (!gate(p, "sweep", core, bend().plus(60), core)) return false;

    // The exact transaction both settlement signatures commit to: both
    // collateral outpoints into one output paying the winner.
    Transaction tx;
    tx.inputs.push_back({locked_->seizable, {}});
    tx.inputs.push_back({locked_->refundable, {}});
    tx.outputs.push_back(TxOut{s->value + r->value, signed_by(w->acoin_dest_key), w->acoin_dest});
    Witness wit;
    wit.preimages = {*a2, *b2};
    wit.signatures = {{kp_["alice"].pub, *contract_->registry().sig_alice},
                      {kp_["bob"].pub, *contract_->registry().sig_bob}};
    for (auto& in : tx.inputs) in.witness = wit;
    return attempt_tx(p, key, "liquidation-sweep", tx, {display_name(w->acoin_dest)},
                      {"A2", "B2"}) != Outcome::Idle;
}

bool Engine::c_refund_bid(const std::string& p) {
    std::string key = p + ":refund_bid";
    if (!contract_ || ctl(key).done) return false;
    const Bid* w = contract_->winning_bid();
    bool mine = contract_->state() == LoanState::BiddingClosed && w && w->bidder == party_id(p);
    bool core = mine && now() >= sdl();
    if (!gate(p, "refund_bid", core, sdl(), mine)) return false;
    return attempt_op(p, key, "refund_bid", OJson::object(), {}, [&] {
               return contract_->refund_bid(world_.bcoin, party_id(p), now());
           }) != Outcome::Idle;
}

// ---- standalone swap actions ----

bool Engine::s_alice_lock() {
    if (ctl("alice:swap_lock").done) return false;
    const TxOut* fund = world_.acoin.find(alice_fund_op_);
    bool core = fund && fund->value >= cfg_.swap.amount_acoin;
    if (!gate("alice", "swap_lock", core, base().plus(10), core)) return false;

    Timestamp refund_at = base().plus(cfg_.swap.lock_duration);
    ScriptCondition lock = any_of({
        all_of({signed_by(kp_["bob"].pub), preimage_of(h("A"))}),
        all_of({signed_by(kp_["alice"].pub), after(refund_at)}),
    });
    Transaction tx;
    tx.inputs.push_back({alice_fund_op_, {}});
    tx.outputs.push_back({cfg_.swap.amount_acoin, lock, std::nullopt});
    std::vector<std::string> tags = {"swap-lock"};
    if (fund->value > cfg_.swap.amount_acoin) {
        tx.outputs.push_back(pay_to("alice", fund->value - cfg_.swap.amount_acoin));
        tags.push_back("alice");
    }
    auto msg = canonical_spend_message(world_.acoin.chain_id(), tx);
    Signature sig = world_.scheme().sign(kp_["alice"], msg);
    for (auto& in : tx.inputs) in.witness.signatures = {{kp_["alice"].pub, sig}};
    std::array<uint8_t, 32> txid = compute_txid(world_.acoin.chain_id(), tx);
    Outcome out = attempt_tx("alice", "alice:swap_lock", "swap-lock", tx, tags, {});
    if (out == Outcome::Acted) {
        swap_out_ = OutPoint{txid, 0};
        res_.swap_lock_alice = cfg_.swap.lock_duration;
    }
    return out != Outcome::Idle;
}

bool Engine::s_bob_lock() {
    if (ctl("bob:swap_lock").done) return false;
    bool core = swap_out_ && world_.acoin.find(*swap_out_) && swap_htlc_ == 0;
    if (!gate("bob", "swap_lock", core, base().plus(20), core)) return false;
    Timestamp refund_at = base().plus(cfg_.swap.lock_duration / 2);
    OJson args;
    args["amount"] = cfg_.swap.amount_bcoin;
    args["refund_after"] = refund_at.seconds;
    uint32_t id = 0;
    Outcome out = attempt_op("bob", "bob:swap_lock", "htlc_lock", std::move(args), {},
                             [&]() -> Result<> {
                                 auto r = world_.bcoin.htlc_lock(PartyId::bob(), PartyId::alice(),
                                                                 cfg_.swap.amount_bcoin, h("A"),
                                                                 refund_at, now());
                                 if (!r.is_ok()) return Result<>::fail(r.error().code,
                                                                       r.error().msg);
                                 id = r.value();
                                 return Result<>::ok();
                             });
    if (out == Outcome::Acted) {
        swap_htlc_ = id;
        res_.swap_lock_bob = cfg_.swap.lock_duration / 2;
    }
    return out != Outcome::Idle;
}

bool Engine::s_alice_redeem() {
    if (ctl("alice:swap_redeem").done) return false;
    const Htlc* hl = swap_htlc_ ? world_.bcoin.htlc(swap_htlc_) : nullptr;
    bool open = hl && hl->state == Htlc::State::Open;
    bool core = open && now() < hl->refund_after;
    if (!gate("alice", "swap_redeem", core, base().plus(30), open)) return false;
    Secret a = own_secret("alice", "A");
    Outcome out = attempt_op("alice", "alice:swap_redeem", "htlc_redeem", OJson::object(), {"A"},
                             [&] {
                                 return world_.bcoin.htlc_redeem(swap_htlc_, PartyId::alice(), a,
                                                                 now());
                             });
    if (out == Outcome::Acted) swap_alice_redeemed_ = true;
    return out != Outcome::Idle;
}

bool Engine::s_bob_redeem() {
    if (ctl("bob:swap_redeem").done) return false;
    bool lock_live = swap_out_ && world_.acoin.find(*swap_out_);
    bool core = lock_live && is_public("A");
    if (!gate("bob", "swap_redeem", core, base().plus(40), lock_live)) return false;
    auto a = public_secret(h("A"));
    if (!a) return false;
    const TxOut* o = world_.acoin.find(*swap_out_);
    Transaction tx = plain_spend(std::span<const OutPoint>(&*swap_out_, 1),
                                 {pay_to("bob", o->value)}, kp_["bob"], {*a});
    Outcome out = attempt_tx("bob", "bob:swap_redeem", "swap-redeem", tx, {"bob"}, {"A"});
    if (out == Outcome::Acted) swap_bob_redeemed_ = true;
    return out != Outcome::Idle;
}

bool Engine::s_alice_refund() {
    if (ctl("alice:swap_refund").done) return false;
    bool lock_live = swap_out_ && world_.acoin.find(*swap_out_);
    bool core = lock_live && now() >= base().plus(cfg_.swap.lock_duration);
    if (!gate("alice", "swap_refund", core, base().plus(cfg_.swap.lock_duration + 10), lock_live))
        return false;
    const TxOut* o = world_.acoin.find(*swap_out_);
    Transaction tx = plain_spend(std::span<const OutPoint>(&*swap_out_, 1),
                                 {pay_to("alice", o->value)}, kp_["alice"], {});
    Outcome out = attempt_tx("alice", "alice:swap_refund", "swap-refund", tx, {"alice"}, {});
    if (out == Outcome::Acted) swap_alice_refunded_ = true;
    return out != Outcome::Idle;
}

bool Engine::s_bob_refund() {
    if (ctl("bob:swap_refund").done) return false;
    const Htlc* hl = swap_htlc_ ? world_.bcoin.htlc(swap_htlc_) : nullptr;
    bool open = hl && hl->state == Htlc::State::Open;
    bool core = open && now() >= hl->refund_after;
    if (!gate("bob", "swap_refund", core, base().plus(cfg_.swap.lock_duration / 2 + 10), open))
        return false;
    Outcome out = attempt_op("bob", "bob:swap_refund", "htlc_refund", OJson::object(), {}, [&] {
        return world_.bcoin.htlc_refund(swap_htlc_, PartyId::bob(), now());
    });
    if (out == Outcome::Acted) swap_bob_refunded_ = true;
    return out != Outcome::Idle;
}

// ---- end-of-run assessment ----

void Engine::liveness_probe() {
    // Script algebra alone cannot tell a lapsed window from a stranded
    // entitlement: the seizure branch dies at seizure_end by design. Who
    // the collateral belongs to at probe time follows the contract state.
    auto collateral_claimant = [&](const OutPoint& op) -> std::string {
        bool seizable = locked_ && op == locked_->seizable;
        switch (contract_->state()) {
            case LoanState::Created:
            case LoanState::Funded:
            case LoanState::Repaid:
            case LoanState::Closed:
            case LoanState::PrincipalRefunded:
                return "alice";
            case LoanState::Settled:
                return display_name(contract_->winning_bid()->bidder);
            default:
                return seizable ? "bob" : "alice";
        }
    };
    for (const auto& p : kPartyNames) {
        if (!spec_[p].honest()) continue;
        PartyId pid = party_id(p);
        const PubKey& key = kp_[p].pub;
        std::set<SecretHash> known;
        for (const auto& [n, s] : vault_[brain_[p]]) known.insert(commit(s));
        for (const auto& s : world_.acoin.scan_revealed()) known.insert(commit(s));
        for (const auto& s : world_.bcoin.scan_revealed()) known.insert(commit(s));
        for (const auto& [op, out] : world_.acoin.utxos()) {
            if (out.owner) {
                if (*out.owner == pid && !branch_feasible(out.cond, key, known, now(), true))
                    res_.liveness_violations.push_back(p + " cannot spend own output " + op.str());
                continue;
            }
            bool entitled;
            if (contract_ && locked_ &&
                (op == locked_->seizable || op == locked_->refundable)) {
                entitled = collateral_claimant(op) == p;
            } else {
                entitled = branch_feasible(out.cond, key, known, now(), false);
            }
            if (entitled && !branch_feasible(out.cond, key, known, now(), true))
                res_.liveness_violations.push_back(p + " entitled to script output " + op.str() +
                                                   " but no branch is live");
        }
    }
    if (contract_) {
        LoanState st = contract_->state();
        auto esc = [&](const char* k) { return world_.bcoin.escrow_balance(k); };
        if (esc(kPrincipalKey) > 0 && spec_["bob"].honest())
            res_.liveness_violations.push_back("principal escrow stranded in state " +
                                               std::string(loan_state_name(st)));
        if (esc(kRepaymentKey) > 0 && spec_["alice"].honest())
            res_.liveness_violations.push_back("repayment escrow stranded in state " +
                                               std::string(loan_state_name(st)));
        if (esc(kBidKey) > 0) {
            const Bid* w = contract_->winning_bid();
            bool winner_stuck =
                w && spec_[display_name(w->bidder)].honest() && st != LoanState::Settled;
            bool claims_stuck =
                st == LoanState::Settled &&
                ((spec_["bob"].honest() && !contract_->bob_claimed() &&
                  contract_->bob_share() > 0) ||
                 (spec_["alice"].honest() && !contract_->alice_claimed() &&
                  contract_->alice_share() > 0));
            if (winner_stuck || claims_stuck)
                res_.liveness_violations.push_back("bid escrow stranded in state " +
                                                   std::string(loan_state_name(st)));
        }
    }
}

void Engine::finalize() {
    Amount owned_acoin = 0;
    Amount owned_bcoin = 0;
    for (const auto& p : kPartyNames) {
        auto& o = res_.outcome[p];
        o.acoin_final = world_.acoin.balance_of(party_id(p));
        o.bcoin_final = world_.bcoin.balance_of(party_id(p));
        owned_acoin += o.acoin_final;
        owned_bcoin += o.bcoin_final;
    }
    auto& esc = res_.outcome["escrow"];
    esc.acoin_final = world_.acoin.total_value() - owned_acoin;
    esc.bcoin_final = world_.bcoin.total_supply() - owned_bcoin;

    if (cfg_.kind == ScenarioKind::Loan) {
        res_.terminal = loan_state_name(contract_->state());
    } else if (swap_alice_redeemed_ && swap_bob_redeemed_) {
        res_.terminal = "swap-complete";
    } else if (!swap_alice_redeemed_ && !swap_bob_redeemed_ && !swap_out_ && swap_htlc_ == 0) {
        res_.terminal = "swap-aborted";
    } else if (!swap_alice_redeemed_ && !swap_bob_redeemed_ &&
               (swap_alice_refunded_ || !swap_out_) && (swap_bob_refunded_ || swap_htlc_ == 0)) {
        res_.terminal = "swap-refunded";
    } else {
        res_.terminal = "swap-partial";
    }
    res_.final_world = world_;
    res_.final_contract = contract_;
}

Result<RunResult> Engine::run() {
    using R = Result<RunResult>;
    if (auto v = cfg_.validate(); !v.is_ok()) return R::fail(v.error().code, v.error().msg);
    setup_parties();
    emit_run_start();
    setup_genesis();
    if (cfg_.kind == ScenarioKind::Loan) {
        if (auto r = setup_loan(); !r.is_ok()) return R::fail(r.error().code, r.error().msg);
    }
    try {
        for (Timestamp t : schedule()) {
            if (auto adv = world_.advance_clock(t); !adv.is_ok())
                return R::fail(adv.error().code, adv.error().msg);
            for (int round = 0; round < kMaxRoundsPerStep; ++round) {
                bool any = false;
                for (const auto& p : kPartyNames) {
                    bool acted = party_turn(p);
                    any = any || acted;
                }
                bool sys = system_turn();
                any = any || sys;
                if (!any) break;
            }
            if (!world_.conserved())
                return R::fail(Err::ValueMismatch, "value conservation violated during run");
        }
    } catch (const CheatAttempt& c) {
        return R::fail(Err::CheatingStrategy,
                       c.party + " tried to read secret " + c.secret + " outside its vault");
    }
    liveness_probe();
    finalize();
    return R::ok(std::move(res_));
}

}  // namespace

Result<RunResult> run_scenario(const ScenarioConfig& cfg) {
    return run_scenario(cfg, RunOptions{});
}

Result<RunResult> run_scenario(const ScenarioConfig& cfg, const RunOptions& opts) {
    Engine e(cfg, opts);
    return e.run();
}

}  // namespace atomicloans
