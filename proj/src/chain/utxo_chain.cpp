// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chain/utxo_chain.h"

#include <cstring>

#include "primitives/sha256.h"

namespace atomicloans {

namespace {

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<uint8_t>& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void put_blob(std::vector<uint8_t>& out, std::span<const uint8_t> b) {
    put_u32(out, static_cast<uint32_t>(b.size()));
    out.insert(out.end(), b.begin(), b.end());
}

void put_str(std::vector<uint8_t>& out, const std::string& s) {
    put_blob(out, std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(s.data()), s.size()));
}

void put_txout(std::vector<uint8_t>& out, const TxOut& o) {
    put_u64(out, static_cast<uint64_t>(o.value));
    put_str(out, script_to_json(o.cond).dump());
    if (o.owner) {
        out.push_back(0x01);
        put_str(out, o.owner->name());
    } else {
        out.push_back(0x00);
    }
}

}  // namespace

std::vector<uint8_t> canonical_spend_message(const std::string& chain_id,
                                             std::span<const OutPoint> inputs,
                                             std::span<const TxOut> outputs) {
    std::vector<uint8_t> msg;
    put_str(msg, chain_id);
    put_u32(msg, static_cast<uint32_t>(inputs.size()));
    for (const OutPoint& op : inputs) {
        msg.insert(msg.end(), op.txid.begin(), op.txid.end());
        put_u32(msg, op.vout);
    }
    put_u32(msg, static_cast<uint32_t>(outputs.size()));
    for (const TxOut& o : outputs) put_txout(msg, o);
    return msg;
}

std::vector<uint8_t> canonical_spend_message(const std::string& chain_id,
                                             const Transaction& tx) {
    std::vector<OutPoint> ins;
    ins.reserve(tx.inputs.size());
    for (const TxIn& in : tx.inputs) ins.push_back(in.prevout);
    return canonical_spend_message(chain_id, ins, tx.outputs);
}

std::array<uint8_t, 32> compute_txid(const std::string& chain_id, const Transaction& tx) {
    return sha256(canonical_spend_message(chain_id, tx));
}

OutPoint UtxoChain::add_genesis(Amount value, PartyId owner, const PubKey& key) {
    TxOut out;
    out.value = value;
    out.cond = signed_by(key);
    out.owner = owner;
    std::vector<uint8_t> tag;
    put_str(tag, "genesis");
    put_str(tag, chain_id_);
    put_u32(tag, genesis_counter_);
    OutPoint op{sha256(tag), 0};
    ++genesis_counter_;
    utxos_.emplace(op, std::move(out));
    return op;
}

OutPoint UtxoChain::add_genesis_script(Amount value, ScriptCondition cond) {
    TxOut out;
    out.value = value;
    out.cond = std::move(cond);
    std::vector<uint8_t> tag;
    put_str(tag, "genesis");
    put_str(tag, chain_id_);
    put_u32(tag, genesis_counter_);
    OutPoint op{sha256(tag), 0};
    ++genesis_counter_;
    utxos_.emplace(op, std::move(out));
    return op;
}

const TxOut* UtxoChain::find(const OutPoint& op) const {
    auto it = utxos_.find(op);
    return it == utxos_.end() ? nullptr : &it->second;
}

Result<AcceptedTx> UtxoChain::submit(const Transaction& tx, Timestamp now,
                                     const SignatureScheme& scheme) {
    if (tx.inputs.empty() || tx.outputs.empty())
        return Result<AcceptedTx>::fail(Err::ValueMismatch, "transaction needs inputs and outputs");

    std::set<OutPoint> seen;
    for (const TxIn& in : tx.inputs) {
        if (!seen.insert(in.prevout).second)
            return Result<AcceptedTx>::fail(Err::DoubleSpend,
                                            "duplicate input " + in.prevout.str());
    }

    Amount in_sum = 0;
    std::vector<const TxOut*> consumed;
    consumed.reserve(tx.inputs.size());
    for (const TxIn& in : tx.inputs) {
        auto it = utxos_.find(in.prevout);
        if (it == utxos_.end()) {
            if (spent_.count(in.prevout))
                return Result<AcceptedTx>::fail(Err::DoubleSpend,
                                                "input already spent " + in.prevout.str());
            return Result<AcceptedTx>::fail(Err::UnknownOutput,
                                            "no such output " + in.prevout.str());
        }
        consumed.push_back(&it->second);
        in_sum += it->second.value;
    }

    Amount out_sum = 0;
    for (const TxOut& o : tx.outputs) {
        if (o.value <= 0)
            return Result<AcceptedTx>::fail(Err::ValueMismatch, "non-positive output value");
        out_sum += o.value;
    }
    if (in_sum != out_sum)
        return Result<AcceptedTx>::fail(Err::ValueMismatch,
                                        "inputs " + std::to_string(in_sum) + " != outputs " +
                                            std::to_string(out_sum));

    SpendContext ctx;
    ctx.now = now;
    ctx.message = canonical_spend_message(chain_id_, tx);
    ctx.scheme = &scheme;
    for (size_t i = 0; i < tx.inputs.size(); ++i) {
        if (!eval_condition(consumed[i]->cond, tx.inputs[i].witness, ctx))
            return Result<AcceptedTx>::fail(Err::ConditionUnsatisfied,
                                            "witness fails for input " +
                                                tx.inputs[i].prevout.str());
    }

    AcceptedTx acc;
    acc.txid = sha256(ctx.message);
    acc.tx = tx;
    acc.at = now;
    for (const TxOut* o : consumed) acc.consumed.push_back(*o);
    for (const TxIn& in : tx.inputs) {
        for (const Secret& s : in.witness.preimages) {
            if (revealed_.insert(s).second) acc.new_reveals.push_back(s);
        }
    }

    for (const TxIn& in : tx.inputs) {
        utxos_.erase(in.prevout);
        spent_.insert(in.prevout);
    }
    for (uint32_t i = 0; i < tx.outputs.size(); ++i)
        utxos_.emplace(OutPoint{acc.txid, i}, tx.outputs[i]);

    log_.push_back(acc);
    return Result<AcceptedTx>::ok(std::move(acc));
}

Amount UtxoChain::total_value() const {
    Amount sum = 0;
    for (const auto& [op, out] : utxos_) sum += out.value;
    return sum;
}

Amount UtxoChain::balance_of(const PartyId& p) const {
    Amount sum = 0;
    for (const auto& [op, out] : utxos_)
        if (out.owner && *out.owner == p) sum += out.value;
    return sum;
}

Result<> UtxoChain::revalidate_log(const SignatureScheme& scheme) const {
    for (const AcceptedTx& acc : log_) {
        if (acc.consumed.size() != acc.tx.inputs.size())
            return Result<>::fail(Err::OrderingViolation, "log entry missing consumed outputs");
        SpendContext ctx;
        ctx.now = acc.at;
        ctx.message = canonical_spend_message(chain_id_, acc.tx);
        ctx.scheme = &scheme;
        if (sha256(ctx.message) != acc.txid)
            return Result<>::fail(Err::OrderingViolation, "txid mismatch in log");
        Amount in_sum = 0, out_sum = 0;
        for (const TxOut& o : acc.consumed) in_sum += o.value;
        for (const TxOut& o : acc.tx.outputs) out_sum += o.value;
        if (in_sum != out_sum)
            return Result<>::fail(Err::ValueMismatch, "log entry violates value conservation");
        for (size_t i = 0; i < acc.tx.inputs.size(); ++i) {
            if (!eval_condition(acc.consumed[i].cond, acc.tx.inputs[i].witness, ctx))
                return Result<>::fail(Err::ConditionUnsatisfied,
                                      "log entry " + to_hex(acc.txid) + " input " +
                                          std::to_string(i) + " no longer validates");
        }
    }
    return Result<>::ok();
}

}  // namespace atomicloans
