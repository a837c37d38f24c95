// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "loan/collateral.h"

#include <stdexcept>

namespace atomicloans {

const char* period_name(Period p) {
    switch (p) {
        case Period::Loan: return "loan";
        case Period::Bidding: return "bidding";
        case Period::Seizure: return "seizure";
        case Period::Refund: return "refund";
    }
    return "?";
}

Period PeriodTimeline::period_at(Timestamp now) const {
    if (now < loan_expiry) return Period::Loan;
    if (now < bidding_end) return Period::Bidding;
    if (now < seizure_end) return Period::Seizure;
    return Period::Refund;
}

ScriptCondition branch_condition(const CollateralParams& p, VaultKind vault, Branch b) {
    switch (b) {
        case Branch::Repayment:
            return all_of({signed_by(p.alice), preimage_of(p.h_b1), preimage_of(p.h_b2)});
        case Branch::Liquidation:
            return all_of(
                {multisig_2of2(p.alice, p.bob), preimage_of(p.h_a2), preimage_of(p.h_b2)});
        case Branch::Seizure:
            if (vault != VaultKind::Seizable)
                throw std::invalid_argument("seizure branch only exists on the seizable vault");
            return all_of({signed_by(p.bob), preimage_of(p.h_a1),
                           after(p.timeline.bidding_end), before(p.timeline.seizure_end)});
        case Branch::Reclaim:
            if (vault != VaultKind::Refundable)
                throw std::invalid_argument("reclaim branch only exists on the refundable vault");
            return all_of({signed_by(p.alice), after(p.timeline.bidding_end),
                           before(p.timeline.seizure_end)});
        case Branch::LastResort:
            return all_of({signed_by(p.alice), after(p.timeline.seizure_end)});
    }
    throw std::invalid_argument("unknown branch");
}

ScriptCondition seizable_script(const CollateralParams& p) {
    return any_of({branch_condition(p, VaultKind::Seizable, Branch::Repayment),
                   branch_condition(p, VaultKind::Seizable, Branch::Liquidation),
                   branch_condition(p, VaultKind::Seizable, Branch::Seizure),
                   branch_condition(p, VaultKind::Seizable, Branch::LastResort)});
}

ScriptCondition refundable_script(const CollateralParams& p) {
    return any_of({branch_condition(p, VaultKind::Refundable, Branch::Repayment),
                   branch_condition(p, VaultKind::Refundable, Branch::Liquidation),
                   branch_condition(p, VaultKind::Refundable, Branch::Reclaim),
                   branch_condition(p, VaultKind::Refundable, Branch::LastResort)});
}

Result<LockedCollateral> lock_collateral(UtxoChain& chain, Timestamp now,
                                         const SignatureScheme& scheme, const KeyPair& alice_kp,
                                         PartyId alice_id, std::span<const OutPoint> funding,
                                         const CollateralParams& params) {
    using R = Result<LockedCollateral>;
    if (params.seizable_value <= 0 || params.refundable_value <= 0)
        return R::fail(Err::WrongAmount, "collateral portions must be positive");
    if (!params.timeline.valid())
        return R::fail(Err::InvalidParams, "timeline not strictly increasing");

    Amount in_sum = 0;
    for (const OutPoint& op : funding) {
        const TxOut* out = chain.find(op);
        if (!out) return R::fail(Err::UnknownOutput, "funding output missing " + op.str());
        in_sum += out->value;
    }
    Amount need = params.seizable_value + params.refundable_value;
    if (in_sum < need)
        return R::fail(Err::InsufficientBalance, "funding " + std::to_string(in_sum) +
                                                     " short of collateral " +
                                                     std::to_string(need));

    Transaction tx;
    tx.outputs.push_back(TxOut{params.seizable_value, seizable_script(params), std::nullopt});
    tx.outputs.push_back(TxOut{params.refundable_value, refundable_script(params), std::nullopt});
    if (in_sum > need)
        tx.outputs.push_back(TxOut{in_sum - need, signed_by(params.alice), alice_id});

    for (const OutPoint& op : funding) tx.inputs.push_back(TxIn{op, {}});
    std::vector<uint8_t> msg = canonical_spend_message(chain.chain_id(), tx);
    Signature sig = scheme.sign(alice_kp, msg);
    for (TxIn& in : tx.inputs) in.witness.signatures.push_back({alice_kp.pub, sig});

    auto sub = chain.submit(tx, now, scheme);
    if (!sub.is_ok()) return R::fail(sub.error().code, sub.error().msg);

    LockedCollateral out;
    out.txid = sub.value().txid;
    out.seizable = OutPoint{out.txid, 0};
    out.refundable = OutPoint{out.txid, 1};
    if (tx.outputs.size() == 3) out.change = OutPoint{out.txid, 2};
    return R::ok(std::move(out));
}

}  // namespace atomicloans
