// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ATOMICLOANS_CHAIN_WORLD_H
#define ATOMICLOANS_CHAIN_WORLD_H

#include <map>

#include "chain/contract_chain.h"
#include "chain/utxo_chain.h"
#include "primitives/keys.h"
#include "util/result.h"

namespace atomicloans {

// Both ledgers plus the single shared clock. Every timestamp comparison in
// the system goes through World::now, so the two chains can never disagree
// about the current period.
struct World {
    Timestamp now{0};
    UtxoChain acoin{"ACoin"};
    ContractChain bcoin{"BCoin"};
    std::map<PartyId, PubKey> keys;
    SigSchemeKind scheme_kind = SigSchemeKind::Ed25519;

    const SignatureScheme& scheme() const { return scheme_for(scheme_kind); }

    const PubKey& key_of(const PartyId& p) const;
    void register_party(const PartyId& p, const PubKey& key) { keys[p] = key; }

    // Clock only moves forward; advancing to the current time is a no-op.
    Result<> advance_clock(Timestamp to);

    // Freezes chain totals after genesis so conservation is checkable.
    void seal_genesis();
    bool conserved() const;
    Amount sealed_acoin_total() const { return acoin_total_; }
    Amount sealed_bcoin_total() const { return bcoin_total_; }

  private:
    Amount acoin_total_ = 0;
    Amount bcoin_total_ = 0;
    bool sealed_ = false;
};

}  // namespace atomicloans

#endif  // ATOMICLOANS_CHAIN_WORLD_H
