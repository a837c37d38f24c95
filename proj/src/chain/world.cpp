// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chain/world.h"

#include <stdexcept>

namespace atomicloans {

const PubKey& World::key_of(const PartyId& p) const {
    auto it = keys.find(p);
    if (it == keys.end()) throw std::out_of_range("no key registered for " + p.name());
    return it->second;
}

Result<> World::advance_clock(Timestamp to) {
    if (to < now)
        return Result<>::fail(Err::BackwardTime, "clock at " + std::to_string(now.seconds) +
                                                     ", refusing move to " +
                                                     std::to_string(to.seconds));
    now = to;
    return Result<>::ok();
}

void World::seal_genesis() {
    acoin_total_ = acoin.total_value();
    bcoin_total_ = bcoin.total_supply();
    sealed_ = true;
}

bool World::conserved() const {
    if (!sealed_) return true;
    return acoin.total_value() == acoin_total_ && bcoin.total_supply() == bcoin_total_;
}

}  // namespace atomicloans
