// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ATOMICLOANS_CHAIN_CONTRACT_CHAIN_H
#define ATOMICLOANS_CHAIN_CONTRACT_CHAIN_H

#include <map>
#include <set>
#include <string>

#include "primitives/types.h"
#include "util/result.h"

namespace atomicloans {

// Simple hashed-timelock escrow on the account chain, used by the
// standalone swap scenario.
struct Htlc {
    enum class State { Open, Redeemed, Refunded };
    uint32_t id = 0;
    PartyId funder;
    PartyId recipient;
    Amount amount = 0;
    SecretHash hash;
    Timestamp refund_after;
    State state = State::Open;
};

// Account-model ledger with named escrow buckets. Value never leaves the
// chain: total_supply() == sum(balances) + sum(escrows) at all times, so
// contract code moves funds between accounts and buckets but cannot mint.
class ContractChain {
  public:
    explicit ContractChain(std::string chain_id = "BCoin") : chain_id_(std::move(chain_id)) {}

    const std::string& chain_id() const { return chain_id_; }

    void mint(const PartyId& p, Amount amount);

    Amount balance_of(const PartyId& p) const;
    const std::map<PartyId, Amount>& balances() const { return balances_; }

    Result<> escrow_from(const PartyId& p, Amount amount, const std::string& key);
    Result<> release(const std::string& key, const PartyId& to, Amount amount);
    Amount escrow_balance(const std::string& key) const;
    const std::map<std::string, Amount>& escrows() const { return escrows_; }

    // Records a secret published in contract-call data.
    bool reveal(const Secret& s) { return revealed_.insert(s).second; }
    const std::set<Secret>& scan_revealed() const { return revealed_; }

    Amount total_supply() const;
    Amount minted() const { return minted_; }
    bool conserved() const { return total_supply() == minted_; }

    Result<uint32_t> htlc_lock(const PartyId& funder, const PartyId& recipient, Amount amount,
                               const SecretHash& hash, Timestamp refund_after, Timestamp now);
    Result<> htlc_redeem(uint32_t id, const PartyId& caller, const Secret& secret, Timestamp now);
    Result<> htlc_refund(uint32_t id, const PartyId& caller, Timestamp now);
    const Htlc* htlc(uint32_t id) const;

  private:
    std::string chain_id_;
    std::map<PartyId, Amount> balances_;
    std::map<std::string, Amount> escrows_;
    std::set<Secret> revealed_;
    std::map<uint32_t, Htlc> htlcs_;
    uint32_t next_htlc_ = 1;
    Amount minted_ = 0;
};

}  // namespace atomicloans

#endif  // ATOMICLOANS_CHAIN_CONTRACT_CHAIN_H
