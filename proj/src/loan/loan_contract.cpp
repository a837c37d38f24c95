// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "loan/loan_contract.h"

#include <algorithm>

namespace atomicloans {

Result<> LoanTerms::validate() const {
    if (principal <= 0 || interest < 0 || liquidation_fee < 0)
        return Result<>::fail(Err::InvalidParams, "bad principal/interest/fee");
    if (collateral.seizable_value <= 0 || collateral.refundable_value <= 0)
        return Result<>::fail(Err::InvalidParams, "collateral portions must be positive");
    if (!collateral.timeline.valid())
        return Result<>::fail(Err::InvalidParams, "timeline not strictly increasing");
    if (bid_settlement_deadline < collateral.timeline.bidding_end ||
        !(bid_settlement_deadline < collateral.timeline.seizure_end))
        return Result<>::fail(Err::InvalidParams,
                              "bid settlement deadline outside the seizure window");
    return Result<>::ok();
}

const char* loan_state_name(LoanState s) {
    switch (s) {
        case LoanState::Created: return "created";
        case LoanState::Funded: return "funded";
        case LoanState::Withdrawn: return "withdrawn";
        case LoanState::Repaid: return "repaid";
        case LoanState::Closed: return "closed";
        case LoanState::PrincipalRefunded: return "principal-refunded";
        case LoanState::BiddingOpen: return "bidding-open";
        case LoanState::BiddingClosed: return "bidding-closed";
        case LoanState::Settled: return "settled";
        case LoanState::SeizureFallback: return "seizure-fallback";
    }
    return "?";
}

bool loan_state_terminal(LoanState s) {
    return s == LoanState::Closed || s == LoanState::PrincipalRefunded ||
           s == LoanState::Settled || s == LoanState::SeizureFallback;
}

LoanContract::LoanContract(LoanTerms terms, PartyId alice, PartyId bob, PubKey alice_key,
                           PubKey bob_key)
    : terms_(std::move(terms)),
      alice_(alice),
      bob_(bob),
      alice_key_(alice_key),
      bob_key_(bob_key) {}

void LoanContract::record_collateral(const OutPoint& seizable, const OutPoint& refundable) {
    seizable_op_ = seizable;
    refundable_op_ = refundable;
    collateral_recorded_ = true;
}

Result<> LoanContract::fund(ContractChain& chain, const PartyId& caller, Amount amount) {
    if (caller != bob_) return Result<>::fail(Err::Unauthorized, "only the lender funds");
    if (state_ != LoanState::Created)
        return Result<>::fail(Err::InvalidState, "already funded");
    if (amount != terms_.principal)
        return Result<>::fail(Err::WrongAmount, "principal is " + std::to_string(terms_.principal));
    if (auto r = chain.escrow_from(caller, amount, kPrincipalKey); !r.is_ok()) return r;
    state_ = LoanState::Funded;
    return Result<>::ok();
}

Result<> LoanContract::accept_collateral(ContractChain& chain, const PartyId& caller,
                                         const Secret& b1) {
    if (caller != bob_) return Result<>::fail(Err::Unauthorized, "only the lender accepts");
    if (state_ != LoanState::Funded)
        return Result<>::fail(Err::InvalidState, "loan not in funded state");
    if (collateral_accepted_)
        return Result<>::fail(Err::InvalidState, "collateral already accepted");
    if (!verify_preimage(b1, terms_.collateral.h_b1))
        return Result<>::fail(Err::BadPreimage, "secret does not match h_B1");
    chain.reveal(b1);
    collateral_accepted_ = true;
    return Result<>::ok();
}

Result<> LoanContract::withdraw(ContractChain& chain, const PartyId& caller, const Secret& a1,
                                const Secret& b1, Timestamp now) {
    if (caller != alice_) return Result<>::fail(Err::Unauthorized, "only the borrower withdraws");
    if (state_ != LoanState::Funded)
        return Result<>::fail(Err::InvalidState, "loan not in funded state");
    if (!(now < tl().withdraw_deadline))
        return Result<>::fail(Err::TooLate, "withdrawal window closed");
    if (!verify_preimage(a1, terms_.collateral.h_a1))
        return Result<>::fail(Err::BadPreimage, "secret does not match h_A1");
    if (!verify_preimage(b1, terms_.collateral.h_b1))
        return Result<>::fail(Err::BadPreimage, "secret does not match h_B1");
    if (auto r = chain.release(kPrincipalKey, caller, terms_.principal); !r.is_ok()) return r;
    chain.reveal(a1);
    chain.reveal(b1);
    state_ = LoanState::Withdrawn;
    return Result<>::ok();
}

Result<> LoanContract::refund_principal(ContractChain& chain, const PartyId& caller,
                                        const Secret& b2, Timestamp now) {
    if (caller != bob_) return Result<>::fail(Err::Unauthorized, "only the lender refunds");
    if (state_ != LoanState::Funded)
        return Result<>::fail(Err::InvalidState, "principal not refundable in state " +
                                                     std::string(loan_state_name(state_)));
    if (now < tl().withdraw_deadline)
        return Result<>::fail(Err::TooEarly, "withdrawal window still open");
    if (!verify_preimage(b2, terms_.collateral.h_b2))
        return Result<>::fail(Err::BadPreimage, "secret does not match h_B2");
    if (auto r = chain.release(kPrincipalKey, caller, terms_.principal); !r.is_ok()) return r;
    chain.reveal(b2);
    state_ = LoanState::PrincipalRefunded;
    return Result<>::ok();
}

Result<> LoanContract::repay(ContractChain& chain, const PartyId& caller, Amount amount,
                             Timestamp now) {
    if (caller != alice_) return Result<>::fail(Err::Unauthorized, "only the borrower repays");
    if (state_ != LoanState::Withdrawn)
        return Result<>::fail(Err::InvalidState, "nothing to repay");
    if (!(now < tl().loan_expiry)) return Result<>::fail(Err::TooLate, "loan expired");
    if (amount != terms_.repayment_amount())
        return Result<>::fail(Err::WrongAmount,
                              "repayment is " + std::to_string(terms_.repayment_amount()));
    if (auto r = chain.escrow_from(caller, amount, kRepaymentKey); !r.is_ok()) return r;
    state_ = LoanState::Repaid;
    return Result<>::ok();
}

Result<> LoanContract::accept_repayment(ContractChain& chain, const PartyId& caller,
                                        const Secret& b2) {
    if (caller != bob_) return Result<>::fail(Err::Unauthorized, "only the lender accepts");
    if (state_ != LoanState::Repaid)
        return Result<>::fail(Err::InvalidState, "no repayment escrowed");
    if (!verify_preimage(b2, terms_.collateral.h_b2))
        return Result<>::fail(Err::BadPreimage, "secret does not match h_B2");
    if (auto r = chain.release(kRepaymentKey, caller, terms_.repayment_amount()); !r.is_ok())
        return r;
    chain.reveal(b2);
    state_ = LoanState::Closed;
    return Result<>::ok();
}

Result<> LoanContract::refund_repayment(ContractChain& chain, const PartyId& caller,
                                        Timestamp now) {
    if (caller != alice_) return Result<>::fail(Err::Unauthorized, "only the borrower reclaims");
    if (state_ != LoanState::Repaid)
        return Result<>::fail(Err::InvalidState, "no repayment escrowed");
    if (now < tl().bidding_end)
        return Result<>::fail(Err::TooEarly, "lender may still accept the repayment");
    if (auto r = chain.release(kRepaymentKey, caller, terms_.repayment_amount()); !r.is_ok())
        return r;
    state_ = LoanState::SeizureFallback;
    return Result<>::ok();
}

Result<> LoanContract::start_bidding(const PartyId& caller, Timestamp now) {
    if (caller != alice_ && caller != bob_)
        return Result<>::fail(Err::Unauthorized, "only loan parties start bidding");
    if (state_ == LoanState::Repaid)
        return Result<>::fail(Err::InvalidState, "repayment detected, bidding blocked");
    if (state_ != LoanState::Withdrawn)
        return Result<>::fail(Err::InvalidState, "no defaulted withdrawal to liquidate");
    if (now < tl().loan_expiry)
        return Result<>::fail(Err::TooEarly, "loan period still running");
    state_ = LoanState::BiddingOpen;
    return Result<>::ok();
}

Result<> LoanContract::place_bid(ContractChain& chain, const Bid& bid, Timestamp now) {
    if (state_ != LoanState::BiddingOpen)
        return Result<>::fail(Err::InvalidState, "bidding not open");
    if (!(now < tl().bidding_end)) return Result<>::fail(Err::TooLate, "bidding window closed");
    Amount floor = bids_.empty() ? 0 : bids_.back().amount;
    if (bid.amount <= floor)
        return Result<>::fail(Err::BidTooLow, "must exceed " + std::to_string(floor));
    if (auto r = chain.escrow_from(bid.bidder, bid.amount, kBidKey); !r.is_ok()) return r;
    if (!bids_.empty()) {
        const Bid& prev = bids_.back();
        if (auto r = chain.release(kBidKey, prev.bidder, prev.amount); !r.is_ok()) return r;
    }
    bids_.push_back(bid);
    return Result<>::ok();
}

Result<> LoanContract::close_bidding(Timestamp now) {
    if (state_ != LoanState::BiddingOpen)
        return Result<>::fail(Err::InvalidState, "bidding not open");
    if (now < tl().bidding_end)
        return Result<>::fail(Err::TooEarly, "bidding window still open");
    state_ = bids_.empty() ? LoanState::SeizureFallback : LoanState::BiddingClosed;
    return Result<>::ok();
}

const Bid* LoanContract::winning_bid() const {
    return bids_.empty() ? nullptr : &bids_.back();
}

std::vector<uint8_t> LoanContract::settlement_payload() const {
    const Bid* winner = winning_bid();
    if (!collateral_recorded_ || !winner) return {};
    TxOut sweep;
    sweep.value = terms_.collateral.seizable_value + terms_.collateral.refundable_value;
    sweep.cond = signed_by(winner->acoin_dest_key);
    sweep.owner = winner->acoin_dest;
    OutPoint ins[2] = {seizable_op_, refundable_op_};
    return canonical_spend_message("ACoin", std::span<const OutPoint>(ins, 2),
                                   std::span<const TxOut>(&sweep, 1));
}

Result<> LoanContract::provide_signature(const PartyId& caller, const Signature& sig,
                                         const SignatureScheme& scheme) {
    if (caller != alice_ && caller != bob_)
        return Result<>::fail(Err::Unauthorized, "not a loan party");
    if (state_ != LoanState::BiddingClosed)
        return Result<>::fail(Err::InvalidState, "no settlement in progress");
    if (!collateral_recorded_)
        return Result<>::fail(Err::InvalidState, "collateral outpoints unknown");
    std::vector<uint8_t> payload = settlement_payload();
    const PubKey& key = caller == alice_ ? alice_key_ : bob_key_;
    if (!scheme.verify(key, payload, sig))
        return Result<>::fail(Err::InvalidSignature, "signature does not cover the sweep payload");
    if (caller == alice_)
        registry_.sig_alice = sig;
    else
        registry_.sig_bob = sig;
    return Result<>::ok();
}

Result<> LoanContract::reveal_secret_c(ContractChain& chain, const PartyId& caller,
                                       const Secret& c) {
    if (state_ != LoanState::BiddingClosed)
        return Result<>::fail(Err::InvalidState, "no settlement in progress");
    const Bid* winner = winning_bid();
    if (!winner || caller != winner->bidder)
        return Result<>::fail(Err::Unauthorized, "only the winning bidder reveals C");
    if (!registry_.both_signatures())
        return Result<>::fail(Err::MissingSignatures, "both settlement signatures required first");
    if (!verify_preimage(c, winner->h_c))
        return Result<>::fail(Err::BadPreimage, "secret does not match h_C");
    registry_.c = c;
    chain.reveal(c);
    return Result<>::ok();
}

Result<> LoanContract::reveal_settlement_secret(ContractChain& chain, const PartyId& caller,
                                                SettlementWhich which, const Secret& secret) {
    if (state_ != LoanState::BiddingClosed)
        return Result<>::fail(Err::InvalidState, "no settlement in progress");
    if (!registry_.c.has_value())
        return Result<>::fail(Err::OrderingViolation, "secret C not yet revealed");
    if (which == SettlementWhich::A2) {
        if (caller != alice_) return Result<>::fail(Err::Unauthorized, "A2 belongs to the borrower");
        if (!verify_preimage(secret, terms_.collateral.h_a2))
            return Result<>::fail(Err::BadPreimage, "secret does not match h_A2");
        registry_.a2 = secret;
    } else {
        if (caller != bob_) return Result<>::fail(Err::Unauthorized, "B2 belongs to the lender");
        if (!verify_preimage(secret, terms_.collateral.h_b2))
            return Result<>::fail(Err::BadPreimage, "secret does not match h_B2");
        registry_.b2 = secret;
    }
    chain.reveal(secret);
    if (registry_.both_settlement_secrets()) state_ = LoanState::Settled;
    return Result<>::ok();
}

Result<> LoanContract::reveal_counterparty_secret(ContractChain& chain, const PartyId& caller,
                                                  const Secret& secret) {
    if (caller != alice_ && caller != bob_)
        return Result<>::fail(Err::Unauthorized, "not a loan party");
    if (state_ != LoanState::BiddingClosed)
        return Result<>::fail(Err::InvalidState, "no settlement in progress");
    if (verify_preimage(secret, terms_.collateral.h_a2))
        registry_.a2 = secret;
    else if (verify_preimage(secret, terms_.collateral.h_b2))
        registry_.b2 = secret;
    else
        return Result<>::fail(Err::BadPreimage, "secret matches neither settlement hash");
    chain.reveal(secret);
    if (registry_.both_settlement_secrets()) state_ = LoanState::Settled;
    return Result<>::ok();
}

Amount LoanContract::bob_share() const {
    const Bid* winner = winning_bid();
    if (!winner) return 0;
    return std::min(winner->amount, terms_.owed_on_liquidation());
}

Amount LoanContract::alice_share() const {
    const Bid* winner = winning_bid();
    if (!winner) return 0;
    return winner->amount - bob_share();
}

Result<Amount> LoanContract::claim_proceeds(ContractChain& chain, const PartyId& caller) {
    using R = Result<Amount>;
    if (state_ != LoanState::Settled)
        return R::fail(Err::InvalidState, "proceeds not claimable");
    if (caller == bob_) {
        if (bob_claimed_) return R::fail(Err::AlreadyClaimed, "lender already claimed");
        Amount share = bob_share();
        if (share > 0)
            if (auto r = chain.release(kBidKey, caller, share); !r.is_ok())
                return R::fail(r.error().code, r.error().msg);
        bob_claimed_ = true;
        return R::ok(std::move(share));
    }
    if (caller == alice_) {
        if (alice_claimed_) return R::fail(Err::AlreadyClaimed, "borrower already claimed");
        Amount share = alice_share();
        if (share > 0)
            if (auto r = chain.release(kBidKey, caller, share); !r.is_ok())
                return R::fail(r.error().code, r.error().msg);
        alice_claimed_ = true;
        return R::ok(std::move(share));
    }
    return R::fail(Err::Unauthorized, "not a loan party");
}

Result<> LoanContract::refund_bid(ContractChain& chain, const PartyId& caller, Timestamp now) {
    if (state_ == LoanState::Settled)
        return Result<>::fail(Err::InvalidState, "already settled");
    if (state_ != LoanState::BiddingClosed)
        return Result<>::fail(Err::InvalidState, "no held stake");
    const Bid* winner = winning_bid();
    if (!winner || caller != winner->bidder)
        return Result<>::fail(Err::Unauthorized, "only the winning bidder refunds");
    if (now < terms_.bid_settlement_deadline)
        return Result<>::fail(Err::TooEarly, "settlement window still open");
    if (auto r = chain.release(kBidKey, caller, winner->amount); !r.is_ok()) return r;
    state_ = LoanState::SeizureFallback;
    return Result<>::ok();
}

}  // namespace atomicloans
