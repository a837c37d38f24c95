// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ATOMICLOANS_CHAIN_SCRIPT_H
#define ATOMICLOANS_CHAIN_SCRIPT_H

#include <memory>
#include <variant>
#include <vector>

#include <json.hpp>
#include "primitives/keys.h"
#include "primitives/types.h"

namespace atomicloans {

// Algebraic spend-condition tree for UTXO outputs. P2SH contracts are
// modeled at this level rather than as stack-machine opcodes.
struct ScriptCondition;

struct PreimageOf {
    SecretHash hash;
    auto operator<=>(const PreimageOf&) const = default;
};
struct SignedBy {
    PubKey key;
    auto operator<=>(const SignedBy&) const = default;
};
struct MultiSig2of2 {
    PubKey a, b;
    auto operator<=>(const MultiSig2of2&) const = default;
};
struct After {  // inclusive: satisfied iff now >= t
    Timestamp t;
    auto operator<=>(const After&) const = default;
};
struct Before {  // exclusive: satisfied iff now < t
    Timestamp t;
    auto operator<=>(const Before&) const = default;
};
struct AllOf {
    std::vector<ScriptCondition> kids;
    bool operator==(const AllOf&) const;
};
struct AnyOf {
    std::vector<ScriptCondition> kids;
    bool operator==(const AnyOf&) const;
};

struct ScriptCondition {
    std::variant<PreimageOf, SignedBy, MultiSig2of2, After, Before, AllOf, AnyOf> node;
    bool operator==(const ScriptCondition&) const = default;
};

inline bool AllOf::operator==(const AllOf& o) const { return kids == o.kids; }
inline bool AnyOf::operator==(const AnyOf& o) const { return kids == o.kids; }

constexpr int kMaxScriptDepth = 16;

// Constructors validate the tree invariants (non-empty lists, depth cap)
// and throw std::invalid_argument on violation: malformed scripts are
// configuration bugs, not protocol rejections.
ScriptCondition preimage_of(const SecretHash& h);
ScriptCondition signed_by(const PubKey& k);
ScriptCondition multisig_2of2(const PubKey& a, const PubKey& b);
ScriptCondition after(Timestamp t);
ScriptCondition before(Timestamp t);
ScriptCondition all_of(std::vector<ScriptCondition> kids);
ScriptCondition any_of(std::vector<ScriptCondition> kids);

int script_depth(const ScriptCondition& c);

// Everything a witness may present to satisfy a condition tree.
struct Witness {
    std::vector<Secret> preimages;
    std::vector<std::pair<PubKey, Signature>> signatures;
    bool operator==(const Witness&) const = default;
};

// Evaluation context: the clock and the canonical message the spending
// transaction's signatures must cover.
struct SpendContext {
    Timestamp now;
    std::vector<uint8_t> message;
    const SignatureScheme* scheme = nullptr;
};

bool eval_condition(const ScriptCondition& c, const Witness& w, const SpendContext& ctx);

// True iff the time atoms alone permit satisfaction at `now` (preimages and
// signatures assumed available). Used for branch-liveness sweeps.
bool time_live(const ScriptCondition& c, Timestamp now);

nlohmann::ordered_json script_to_json(const ScriptCondition& c);
ScriptCondition script_from_json(const nlohmann::ordered_json& j);

}  // namespace atomicloans

#endif  // ATOMICLOANS_CHAIN_SCRIPT_H
