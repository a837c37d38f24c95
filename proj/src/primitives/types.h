// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ATOMICLOANS_PRIMITIVES_TYPES_H
#define ATOMICLOANS_PRIMITIVES_TYPES_H

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

#include "primitives/sha256.h"
#include "util/hex.h"

namespace atomicloans {

// Base units of value on either chain. Signed so that deltas are expressible;
// ledger balances are kept non-negative by the chains themselves.
using Amount = int64_t;

// Linux epoch seconds. Arithmetic is capped well below the wrap point.
struct Timestamp {
    uint64_t seconds = 0;

    static constexpr uint64_t kCap = uint64_t(1) << 62;

    auto operator<=>(const Timestamp&) const = default;

    Timestamp plus(uint64_t delta) const {
        if (seconds + delta > kCap) throw std::overflow_error("timestamp overflow");
        return Timestamp{seconds + delta};
    }
};

// 32-byte HTLC preimage.
struct Secret {
    std::array<uint8_t, 32> bytes{};

    auto operator<=>(const Secret&) const = default;
    std::string hex() const { return to_hex(bytes); }
};

// SHA-256 commitment to a Secret.
struct SecretHash {
    Digest digest{};

    auto operator<=>(const SecretHash&) const = default;
    std::string hex() const { return to_hex(digest); }
};

inline SecretHash commit(const Secret& s) { return SecretHash{sha256(s.bytes)}; }

inline bool verify_preimage(const Secret& s, const SecretHash& h) {
    return commit(s) == h;
}

// Party identity. `Other(n)` covers auxiliary actors (rival bidders etc.).
enum class Party : uint8_t { Alice, Bob, Charlie, Other };

struct PartyId {
    Party kind = Party::Alice;
    uint32_t index = 0;  // used only for Other

    auto operator<=>(const PartyId&) const = default;

    static PartyId alice() { return {Party::Alice, 0}; }
    static PartyId bob() { return {Party::Bob, 0}; }
    static PartyId charlie() { return {Party::Charlie, 0}; }
    static PartyId other(uint32_t n) { return {Party::Other, n}; }

    std::string name() const {
        switch (kind) {
            case Party::Alice: return "alice";
            case Party::Bob: return "bob";
            case Party::Charlie: return "charlie";
            case Party::Other: return "other" + std::to_string(index);
        }
        return "?";
    }
};

}  // namespace atomicloans

#endif  // ATOMICLOANS_PRIMITIVES_TYPES_H
