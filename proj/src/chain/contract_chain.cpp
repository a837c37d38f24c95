// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chain/contract_chain.h"

namespace atomicloans {

void ContractChain::mint(const PartyId& p, Amount amount) {
    balances_[p] += amount;
    minted_ += amount;
}

Amount ContractChain::balance_of(const PartyId& p) const {
    auto it = balances_.find(p);
    return it == balances_.end() ? 0 : it->second;
}

Result<> ContractChain::escrow_from(const PartyId& p, Amount amount, const std::string& key) {
    if (amount <= 0) return Result<>::fail(Err::WrongAmount, "escrow amount must be positive");
    Amount bal = balance_of(p);
    if (bal < amount)
        return Result<>::fail(Err::InsufficientBalance,
                              p.name() + " has " + std::to_string(bal) + ", needs " +
                                  std::to_string(amount));
    balances_[p] = bal - amount;
    escrows_[key] += amount;
    return Result<>::ok();
}

Result<> ContractChain::release(const std::string& key, const PartyId& to, Amount amount) {
    if (amount <= 0) return Result<>::fail(Err::WrongAmount, "release amount must be positive");
    auto it = escrows_.find(key);
    Amount held = it == escrows_.end() ? 0 : it->second;
    if (held < amount)
        return Result<>::fail(Err::InsufficientBalance,
                              "escrow " + key + " holds " + std::to_string(held) + ", needs " +
                                  std::to_string(amount));
    if (held == amount)
        escrows_.erase(it);
    else
        it->second = held - amount;
    balances_[to] += amount;
    return Result<>::ok();
}

Amount ContractChain::escrow_balance(const std::string& key) const {
    auto it = escrows_.find(key);
    return it == escrows_.end() ? 0 : it->second;
}

Amount ContractChain::total_supply() const {
    Amount sum = 0;
    for (const auto& [p, v] : balances_) sum += v;
    for (const auto& [k, v] : escrows_) sum += v;
    return sum;
}

Result<uint32_t> ContractChain::htlc_lock(const PartyId& funder, const PartyId& recipient,
                                          Amount amount, const SecretHash& hash,
                                          Timestamp refund_after, Timestamp now) {
    if (now >= refund_after)
        return Result<uint32_t>::fail(Err::TooLate, "refund deadline already passed");
    uint32_t id = next_htlc_++;
    if (auto r = escrow_from(funder, amount, "htlc:" + std::to_string(id)); !r.is_ok()) {
        --next_htlc_;
        return Result<uint32_t>::fail(r.error().code, r.error().msg);
    }
    Htlc h;
    h.id = id;
    h.funder = funder;
    h.recipient = recipient;
    h.amount = amount;
    h.hash = hash;
    h.refund_after = refund_after;
    htlcs_.emplace(id, h);
    return Result<uint32_t>::ok(std::move(id));
}

Result<> ContractChain::htlc_redeem(uint32_t id, const PartyId& caller, const Secret& secret,
                                    Timestamp now) {
    auto it = htlcs_.find(id);
    if (it == htlcs_.end()) return Result<>::fail(Err::UnknownOutput, "no such htlc");
    Htlc& h = it->second;
    if (h.state != Htlc::State::Open) return Result<>::fail(Err::AlreadyClaimed, "htlc settled");
    if (caller != h.recipient) return Result<>::fail(Err::Unauthorized, "only recipient redeems");
    if (!(now < h.refund_after)) return Result<>::fail(Err::TooLate, "redeem window closed");
    if (!verify_preimage(secret, h.hash)) return Result<>::fail(Err::BadPreimage, "wrong preimage");
    if (auto r = release("htlc:" + std::to_string(id), h.recipient, h.amount); !r.is_ok())
        return r;
    h.state = Htlc::State::Redeemed;
    reveal(secret);
    return Result<>::ok();
}

Result<> ContractChain::htlc_refund(uint32_t id, const PartyId& caller, Timestamp now) {
    auto it = htlcs_.find(id);
    if (it == htlcs_.end()) return Result<>::fail(Err::UnknownOutput, "no such htlc");
    Htlc& h = it->second;
    if (h.state != Htlc::State::Open) return Result<>::fail(Err::AlreadyClaimed, "htlc settled");
    if (caller != h.funder) return Result<>::fail(Err::Unauthorized, "only funder refunds");
    if (now < h.refund_after) return Result<>::fail(Err::TooEarly, "refund window not open");
    if (auto r = release("htlc:" + std::to_string(id), h.funder, h.amount); !r.is_ok()) return r;
    h.state = Htlc::State::Refunded;
    return Result<>::ok();
}

const Htlc* ContractChain::htlc(uint32_t id) const {
    auto it = htlcs_.find(id);
    return it == htlcs_.end() ? nullptr : &it->second;
}

}  // namespace atomicloans
