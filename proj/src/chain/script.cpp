// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "chain/script.h"

#include <algorithm>
#include <stdexcept>


namespace atomicloans {

ScriptCondition preimage_of(const SecretHash& h) { return {PreimageOf{h}}; }
ScriptCondition signed_by(const PubKey& k) { return {SignedBy{k}}; }
ScriptCondition multisig_2of2(const PubKey& a, const PubKey& b) {
    return {MultiSig2of2{a, b}};
}
ScriptCondition after(Timestamp t) { return {After{t}}; }
ScriptCondition before(Timestamp t) { return {Before{t}}; }

static ScriptCondition make_list(std::vector<ScriptCondition> kids, bool conj) {
    if (kids.empty()) throw std::invalid_argument("empty condition list");
    int deepest = 0;
    for (const auto& k : kids) deepest = std::max(deepest, script_depth(k));
    if (deepest + 1 > kMaxScriptDepth) throw std::invalid_argument("script too deep");
    if (conj) return {AllOf{std::move(kids)}};
    return {AnyOf{std::move(kids)}};
}

ScriptCondition all_of(std::vector<ScriptCondition> kids) {
    return make_list(std::move(kids), true);
}
ScriptCondition any_of(std::vector<ScriptCondition> kids) {
    return make_list(std::move(kids), false);
}

int script_depth(const ScriptCondition& c) {
    return std::visit(
        [](const auto& n) -> int {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, AllOf> || std::is_same_v<T, AnyOf>) {
                int deepest = 0;
                for (const auto& k : n.kids) deepest = std::max(deepest, script_depth(k));
                return deepest + 1;
            } else {
                return 1;
            }
        },
        c.node);
}

bool eval_condition(const ScriptCondition& c, const Witness& w, const SpendContext& ctx) {
    return std::visit(
        [&](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, PreimageOf>) {
                return std::any_of(w.preimages.begin(), w.preimages.end(),
                                   [&](const Secret& s) { return commit(s) == n.hash; });
            } else if constexpr (std::is_same_v<T, SignedBy>) {
                for (const auto& [pk, sig] : w.signatures) {
                    if (pk == n.key && ctx.scheme &&
                        ctx.scheme->verify(pk, ctx.message, sig))
                        return true;
                }
                return false;
            } else if constexpr (std::is_same_v<T, MultiSig2of2>) {
                Witness one{{}, w.signatures};
                return eval_condition(signed_by(n.a), one, ctx) &&
                       eval_condition(signed_by(n.b), one, ctx);
            } else if constexpr (std::is_same_v<T, After>) {
                return ctx.now >= n.t;
            } else if constexpr (std::is_same_v<T, Before>) {
                return ctx.now < n.t;
            } else if constexpr (std::is_same_v<T, AllOf>) {
                return std::all_of(n.kids.begin(), n.kids.end(), [&](const auto& k) {
                    return eval_condition(k, w, ctx);
                });
            } else {
                return std::any_of(n.kids.begin(), n.kids.end(), [&](const auto& k) {
                    return eval_condition(k, w, ctx);
                });
            }
        },
        c.node);
}

bool time_live(const ScriptCondition& c, Timestamp now) {
    return std::visit(
        [&](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, After>) {
                return now >= n.t;
            } else if constexpr (std::is_same_v<T, Before>) {
                return now < n.t;
            } else if constexpr (std::is_same_v<T, AllOf>) {
                return std::all_of(n.kids.begin(), n.kids.end(),
                                   [&](const auto& k) { return time_live(k, now); });
            } else if constexpr (std::is_same_v<T, AnyOf>) {
                return std::any_of(n.kids.begin(), n.kids.end(),
                                   [&](const auto& k) { return time_live(k, now); });
            } else {
                return true;
            }
        },
        c.node);
}

nlohmann::ordered_json script_to_json(const ScriptCondition& c) {
    using J = nlohmann::ordered_json;
    return std::visit(
        [](const auto& n) -> J {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, PreimageOf>) {
                return J{{"preimage_of", n.hash.hex()}};
            } else if constexpr (std::is_same_v<T, SignedBy>) {
                return J{{"signed_by", n.key.hex()}};
            } else if constexpr (std::is_same_v<T, MultiSig2of2>) {
                return J{{"multisig_2of2", J::array({n.a.hex(), n.b.hex()})}};
            } else if constexpr (std::is_same_v<T, After>) {
                return J{{"after", n.t.seconds}};
            } else if constexpr (std::is_same_v<T, Before>) {
                return J{{"before", n.t.seconds}};
            } else if constexpr (std::is_same_v<T, AllOf>) {
                J kids = J::array();
                for (const auto& k : n.kids) kids.push_back(script_to_json(k));
                return J{{"all", kids}};
            } else {
                J kids = J::array();
                for (const auto& k : n.kids) kids.push_back(script_to_json(k));
                return J{{"any", kids}};
            }
        },
        c.node);
}

static std::array<uint8_t, 32> arr32_from_hex(const std::string& s) {
    auto v = from_hex(s);
    if (!v || v->size() != 32) throw std::invalid_argument("bad 32-byte hex");
    std::array<uint8_t, 32> a{};
    std::copy(v->begin(), v->end(), a.begin());
    return a;
}

ScriptCondition script_from_json(const nlohmann::ordered_json& j) {
    if (!j.is_object() || j.size() != 1)
        throw std::invalid_argument("bad script node");
    auto it = j.begin();
    const std::string& key = it.key();
    const nlohmann::ordered_json& val = it.value();
    if (key == "preimage_of") return preimage_of(SecretHash{arr32_from_hex(val)});
    if (key == "signed_by") return signed_by(PubKey{arr32_from_hex(val)});
    if (key == "multisig_2of2")
        return multisig_2of2(PubKey{arr32_from_hex(val.at(0))},
                             PubKey{arr32_from_hex(val.at(1))});
    if (key == "after") return after(Timestamp{val.get<uint64_t>()});
    if (key == "before") return before(Timestamp{val.get<uint64_t>()});
    if (key == "all" || key == "any") {
        std::vector<ScriptCondition> kids;
        for (const auto& k : val) kids.push_back(script_from_json(k));
        return key == "all" ? all_of(std::move(kids)) : any_of(std::move(kids));
    }
    throw std::invalid_argument("unknown script tag: " + key);
}

}  // namespace atomicloans
