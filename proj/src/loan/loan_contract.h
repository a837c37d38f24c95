// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ATOMICLOANS_LOAN_LOAN_CONTRACT_H
#define ATOMICLOANS_LOAN_LOAN_CONTRACT_H

#include <optional>
#include <vector>

#include "chain/contract_chain.h"
#include "loan/collateral.h"

namespace atomicloans {

// Escrow bucket names the contract uses on the BCoin ledger.
inline constexpr const char* kPrincipalKey = "loan:principal";
inline constexpr const char* kRepaymentKey = "loan:repayment";
inline constexpr const char* kBidKey = "loan:bid";

struct LoanTerms {
    Amount principal = 0;
    Amount interest = 0;
    Amount liquidation_fee = 0;
    CollateralParams collateral;
    Timestamp bid_settlement_deadline;

    Amount repayment_amount() const { return principal + interest; }
    Amount owed_on_liquidation() const { return principal + interest + liquidation_fee; }
    Result<> validate() const;
};

enum class LoanState {
    Created,
    Funded,
    Withdrawn,
    Repaid,
    Closed,
    PrincipalRefunded,
    BiddingOpen,
    BiddingClosed,
    Settled,
    SeizureFallback,
};

const char* loan_state_name(LoanState s);
bool loan_state_terminal(LoanState s);

struct Bid {
    PartyId bidder;
    Amount amount = 0;
    SecretHash h_c;
    PartyId acoin_dest;
    PubKey acoin_dest_key;
};

struct SettlementRegistry {
    std::optional<Signature> sig_alice;
    std::optional<Signature> sig_bob;
    std::optional<Secret> a2;
    std::optional<Secret> b2;
    std::optional<Secret> c;

    bool both_signatures() const { return sig_alice.has_value() && sig_bob.has_value(); }
    bool both_settlement_secrets() const { return a2.has_value() && b2.has_value(); }
};

enum class SettlementWhich { A2, B2 };

// The BCoin-side loan: principal escrow, repayment, liquidation auction and
// settlement registry. The contract never sees ACoin; anything the script
// chain proves (collateral locked, secrets swept) reaches it only through
// parties passing secrets into calls.
class LoanContract {
  public:
    LoanContract(LoanTerms terms, PartyId alice, PartyId bob, PubKey alice_key, PubKey bob_key);

    // Both parties derive the collateral outpoints off-chain after the lock
    // confirms; recording them fixes the settlement payload.
    void record_collateral(const OutPoint& seizable, const OutPoint& refundable);

    Result<> fund(ContractChain& chain, const PartyId& caller, Amount amount);
    Result<> accept_collateral(ContractChain& chain, const PartyId& caller, const Secret& b1);
    Result<> withdraw(ContractChain& chain, const PartyId& caller, const Secret& a1,
                      const Secret& b1, Timestamp now);
    Result<> refund_principal(ContractChain& chain, const PartyId& caller, const Secret& b2,
                              Timestamp now);
    Result<> repay(ContractChain& chain, const PartyId& caller, Amount amount, Timestamp now);
    Result<> accept_repayment(ContractChain& chain, const PartyId& caller, const Secret& b2);
    Result<> refund_repayment(ContractChain& chain, const PartyId& caller, Timestamp now);
    Result<> start_bidding(const PartyId& caller, Timestamp now);
    Result<> place_bid(ContractChain& chain, const Bid& bid, Timestamp now);
    Result<> close_bidding(Timestamp now);
    Result<> provide_signature(const PartyId& caller, const Signature& sig,
                               const SignatureScheme& scheme);
    Result<> reveal_secret_c(ContractChain& chain, const PartyId& caller, const Secret& c);
    Result<> reveal_settlement_secret(ContractChain& chain, const PartyId& caller,
                                      SettlementWhich which, const Secret& secret);
    Result<> reveal_counterparty_secret(ContractChain& chain, const PartyId& caller,
                                        const Secret& secret);
    Result<Amount> claim_proceeds(ContractChain& chain, const PartyId& caller);
    Result<> refund_bid(ContractChain& chain, const PartyId& caller, Timestamp now);

    // Message both settlement signatures must cover: the sweep of both
    // collateral outpoints into one output paying the auction winner.
    std::vector<uint8_t> settlement_payload() const;

    LoanState state() const { return state_; }
    const LoanTerms& terms() const { return terms_; }
    const std::vector<Bid>& bids() const { return bids_; }
    const Bid* winning_bid() const;
    const SettlementRegistry& registry() const { return registry_; }
    bool collateral_accepted() const { return collateral_accepted_; }
    bool collateral_recorded() const { return collateral_recorded_; }
    const OutPoint& seizable_outpoint() const { return seizable_op_; }
    const OutPoint& refundable_outpoint() const { return refundable_op_; }
    bool bob_claimed() const { return bob_claimed_; }
    bool alice_claimed() const { return alice_claimed_; }
    Amount bob_share() const;
    Amount alice_share() const;

  private:
    const PeriodTimeline& tl() const { return terms_.collateral.timeline; }

    LoanTerms terms_;
    PartyId alice_;
    PartyId bob_;
    PubKey alice_key_;
    PubKey bob_key_;
    LoanState state_ = LoanState::Created;
    std::vector<Bid> bids_;
    SettlementRegistry registry_;
    OutPoint seizable_op_;
    OutPoint refundable_op_;
    bool collateral_recorded_ = false;
    bool collateral_accepted_ = false;
    bool bob_claimed_ = false;
    bool alice_claimed_ = false;
};

}  // namespace atomicloans

#endif  // ATOMICLOANS_LOAN_LOAN_CONTRACT_H
