// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ATOMICLOANS_LOAN_COLLATERAL_H
#define ATOMICLOANS_LOAN_COLLATERAL_H

#include <optional>
#include <span>

#include "chain/utxo_chain.h"
#include "primitives/keys.h"

namespace atomicloans {

// Loan:    [0, loan_expiry)            repay or walk away
// Bidding: [loan_expiry, bidding_end)  auction runs on default
// Seizure: [bidding_end, seizure_end)  failed-auction recovery window
// Refund:  [seizure_end, inf)          borrower sweeps whatever is left
enum class Period { Loan, Bidding, Seizure, Refund };

const char* period_name(Period p);

struct PeriodTimeline {
    Timestamp withdraw_deadline;
    Timestamp loan_expiry;
    Timestamp bidding_end;
    Timestamp seizure_end;

    bool valid() const {
        return withdraw_deadline < loan_expiry && loan_expiry < bidding_end &&
               bidding_end < seizure_end;
    }
    Period period_at(Timestamp now) const;
};

enum class VaultKind { Seizable, Refundable };

// Branches of the collateral scripts. Repayment, Liquidation and LastResort
// appear in both vaults; Seizure only in the seizable vault, Reclaim only in
// the refundable one.
enum class Branch { Repayment, Liquidation, Seizure, Reclaim, LastResort };

struct CollateralParams {
    PubKey alice;
    PubKey bob;
    SecretHash h_a1;
    SecretHash h_a2;
    SecretHash h_b1;
    SecretHash h_b2;
    PeriodTimeline timeline;
    Amount seizable_value = 0;
    Amount refundable_value = 0;
};

ScriptCondition branch_condition(const CollateralParams& p, VaultKind vault, Branch b);
ScriptCondition seizable_script(const CollateralParams& p);
ScriptCondition refundable_script(const CollateralParams& p);

struct LockedCollateral {
    OutPoint seizable;
    OutPoint refundable;
    std::optional<OutPoint> change;
    std::array<uint8_t, 32> txid{};
};

// Spends the borrower's funding outputs into the two collateral vaults,
// returning change to the borrower when the inputs overshoot.
Result<LockedCollateral> lock_collateral(UtxoChain& chain, Timestamp now,
                                         const SignatureScheme& scheme, const KeyPair& alice_kp,
                                         PartyId alice_id, std::span<const OutPoint> funding,
                                         const CollateralParams& params);

}  // namespace atomicloans

#endif  // ATOMICLOANS_LOAN_COLLATERAL_H
