// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ATOMICLOANS_PRIMITIVES_RNG_H
#define ATOMICLOANS_PRIMITIVES_RNG_H

#include <cstdint>

#include "primitives/types.h"

namespace atomicloans {

// Counter-mode SHA-256 generator. Platform-independent byte stream so runs
// replay byte-identically everywhere regardless of libc or stdlib RNGs.
class DeterministicRng {
  public:
    explicit DeterministicRng(uint64_t seed);

    Digest next_block();
    Secret next_secret();
    uint64_t next_u64();

  private:
    Digest key_;
    uint64_t counter_ = 0;
};

}  // namespace atomicloans

#endif  // ATOMICLOANS_PRIMITIVES_RNG_H
