// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ATOMICLOANS_PRIMITIVES_KEYS_H
#define ATOMICLOANS_PRIMITIVES_KEYS_H

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "primitives/rng.h"
#include "primitives/types.h"

namespace atomicloans {

struct PubKey {
    std::array<uint8_t, 32> bytes{};
    auto operator<=>(const PubKey&) const = default;
    std::string hex() const { return to_hex(bytes); }
};

struct Signature {
    std::vector<uint8_t> payload;
    auto operator<=>(const Signature&) const = default;
    std::string hex() const { return to_hex(payload); }
};

struct KeyPair {
    PubKey pub;
    std::vector<uint8_t> secret;  // scheme-defined layout
};

// Deterministic signing seam. Both schemes produce byte-identical signatures
// for identical (key, message) pairs so traces replay exactly.
class SignatureScheme {
  public:
    virtual ~SignatureScheme() = default;
    virtual KeyPair keygen(DeterministicRng& rng) const = 0;
    virtual Signature sign(const KeyPair& kp, std::span<const uint8_t> msg) const = 0;
    virtual bool verify(const PubKey& pk, std::span<const uint8_t> msg,
                        const Signature& sig) const = 0;
    virtual const char* name() const = 0;
};

enum class SigSchemeKind : uint8_t { Ed25519, Transparent };

// Singletons; stateless and thread-safe.
const SignatureScheme& scheme_for(SigSchemeKind kind);

}  // namespace atomicloans

#endif  // ATOMICLOANS_PRIMITIVES_KEYS_H
