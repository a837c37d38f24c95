// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ATOMICLOANS_PRIMITIVES_SHA256_H
#define ATOMICLOANS_PRIMITIVES_SHA256_H

#include <array>
#include <cstdint>
#include <span>

namespace atomicloans {

using Digest = std::array<uint8_t, 32>;

// Streaming SHA-256 (FIPS 180-4).
class Sha256 {
  public:
    Sha256();
    Sha256& update(std::span<const uint8_t> data);
    Digest finalize();

  private:
    void transform(const uint8_t* block);

    uint32_t state_[8];
    uint64_t total_len_;
    uint8_t buf_[64];
    size_t buf_len_;
};

Digest sha256(std::span<const uint8_t> data);

}  // namespace atomicloans

#endif  // ATOMICLOANS_PRIMITIVES_SHA256_H
