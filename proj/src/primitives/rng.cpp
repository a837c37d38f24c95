// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "primitives/rng.h"

namespace atomicloans {

namespace {
void put_u64_le(uint8_t* p, uint64_t v) {
    for (int i = 0; i < 8; i++) p[i] = uint8_t(v >> (8 * i));
}
}  // namespace

DeterministicRng::DeterministicRng(uint64_t seed) {
    uint8_t buf[8];
    put_u64_le(buf, seed);
    key_ = sha256(buf);
}

Digest DeterministicRng::next_block() {
    uint8_t buf[40];
    std::copy(key_.begin(), key_.end(), buf);
    put_u64_le(buf + 32, counter_++);
    return sha256(buf);
}

Secret DeterministicRng::next_secret() { return Secret{next_block()}; }

uint64_t DeterministicRng::next_u64() {
    Digest d = next_block();
    uint64_t v = 0;
    for (int i = 0; i < 8; i++) v |= uint64_t(d[i]) << (8 * i);
    return v;
}

}  // namespace atomicloans
