// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "primitives/keys.h"

#include <sodium.h>

#include <mutex>
#include <stdexcept>

namespace atomicloans {

namespace {

void ensure_sodium() {
    static std::once_flag once;
    std::call_once(once, [] {
        if (sodium_init() < 0) throw std::runtime_error("sodium_init failed");
    });
}

// Ed25519 detached signatures (RFC 8032; deterministic given key + message).
class Ed25519Scheme final : public SignatureScheme {
  public:
    KeyPair keygen(DeterministicRng& rng) const override {
        ensure_sodium();
        Digest seed = rng.next_block();
        KeyPair kp;
        kp.secret.resize(crypto_sign_SECRETKEYBYTES);
        unsigned char pk[crypto_sign_PUBLICKEYBYTES];
        crypto_sign_seed_keypair(pk, kp.secret.data(), seed.data());
        std::copy(pk, pk + 32, kp.pub.bytes.begin());
        return kp;
    }

    Signature sign(const KeyPair& kp, std::span<const uint8_t> msg) const override {
        ensure_sodium();
        Signature sig;
        sig.payload.resize(crypto_sign_BYTES);
        unsigned long long len = 0;
        crypto_sign_detached(sig.payload.data(), &len, msg.data(), msg.size(),
                             kp.secret.data());
        sig.payload.resize(len);
        return sig;
    }

    bool verify(const PubKey& pk, std::span<const uint8_t> msg,
                const Signature& sig) const override {
        ensure_sodium();
        if (sig.payload.size() != crypto_sign_BYTES) return false;
        return crypto_sign_verify_detached(sig.payload.data(), msg.data(), msg.size(),
                                           pk.bytes.data()) == 0;
    }

    const char* name() const override { return "ed25519"; }
};

// Transparent scheme: payload = pubkey || SHA256(message). Anyone can forge;
// the simulation's deviation model never includes forgery, and this keeps
// unit tests free of real-crypto dependencies.
class TransparentScheme final : public SignatureScheme {
  public:
    KeyPair keygen(DeterministicRng& rng) const override {
        KeyPair kp;
        Digest seed = rng.next_block();
        kp.secret.assign(seed.begin(), seed.end());
        uint8_t tagged[33];
        tagged[0] = 0x70;  // 'p'
        std::copy(seed.begin(), seed.end(), tagged + 1);
        Digest pub = sha256(tagged);
        std::copy(pub.begin(), pub.end(), kp.pub.bytes.begin());
        return kp;
    }

    Signature sign(const KeyPair& kp, std::span<const uint8_t> msg) const override {
        Signature sig;
        Digest mh = sha256(msg);
        sig.payload.reserve(64);
        sig.payload.insert(sig.payload.end(), kp.pub.bytes.begin(), kp.pub.bytes.end());
        sig.payload.insert(sig.payload.end(), mh.begin(), mh.end());
        return sig;
    }

    bool verify(const PubKey& pk, std::span<const uint8_t> msg,
                const Signature& sig) const override {
        if (sig.payload.size() != 64) return false;
        Digest mh = sha256(msg);
        return std::equal(sig.payload.begin(), sig.payload.begin() + 32,
                          pk.bytes.begin()) &&
               std::equal(sig.payload.begin() + 32, sig.payload.end(), mh.begin());
    }

    const char* name() const override { return "transparent"; }
};

}  // namespace

const SignatureScheme& scheme_for(SigSchemeKind kind) {
    static const Ed25519Scheme ed;
    static const TransparentScheme tr;
    return kind == SigSchemeKind::Ed25519 ? static_cast<const SignatureScheme&>(ed)
                                          : static_cast<const SignatureScheme&>(tr);
}

}  // namespace atomicloans
