// Copyright (c) 2026 The atomic-loans-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef ATOMICLOANS_CHAIN_UTXO_CHAIN_H
#define ATOMICLOANS_CHAIN_UTXO_CHAIN_H

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "chain/script.h"
#include "primitives/types.h"
#include "util/result.h"

namespace atomicloans {

struct OutPoint {
    std::array<uint8_t, 32> txid{};
    uint32_t vout = 0;

    auto operator<=>(const OutPoint&) const = default;
    std::string str() const { return to_hex(txid) + ":" + std::to_string(vout); }
};

struct TxOut {
    Amount value = 0;
    ScriptCondition cond;
    // Set for plain pay-to-party outputs (cond is then signed_by(owner key));
    // script-locked outputs (collateral, HTLCs) leave it empty.
    std::optional<PartyId> owner;

    bool operator==(const TxOut&) const = default;
};

struct TxIn {
    OutPoint prevout;
    Witness witness;
    bool operator==(const TxIn&) const = default;
};

struct Transaction {
    std::vector<TxIn> inputs;
    std::vector<TxOut> outputs;
    bool operator==(const Transaction&) const = default;
};

// Canonical signing payload: everything except witnesses, length-prefixed.
// All signatures in one transaction cover the same message, so 2-of-2
// settlement signatures can be produced before the spending tx exists.
std::vector<uint8_t> canonical_spend_message(const std::string& chain_id,
                                             std::span<const OutPoint> inputs,
                                             std::span<const TxOut> outputs);
std::vector<uint8_t> canonical_spend_message(const std::string& chain_id,
                                             const Transaction& tx);

std::array<uint8_t, 32> compute_txid(const std::string& chain_id, const Transaction& tx);

struct AcceptedTx {
    std::array<uint8_t, 32> txid{};
    Transaction tx;
    Timestamp at;
    std::vector<TxOut> consumed;       // outputs this tx spent, for re-validation
    std::vector<Secret> new_reveals;   // preimages first published by this tx
};

// Deterministic UTXO ledger with instant finality: no blocks, no fees,
// no reorgs.
class UtxoChain {
  public:
    explicit UtxoChain(std::string chain_id = "ACoin") : chain_id_(std::move(chain_id)) {}

    const std::string& chain_id() const { return chain_id_; }

    OutPoint add_genesis(Amount value, PartyId owner, const PubKey& key);
    OutPoint add_genesis_script(Amount value, ScriptCondition cond);

    Result<AcceptedTx> submit(const Transaction& tx, Timestamp now,
                              const SignatureScheme& scheme);

    const std::map<OutPoint, TxOut>& utxos() const { return utxos_; }
    const TxOut* find(const OutPoint& op) const;
    bool is_spent(const OutPoint& op) const { return spent_.count(op) > 0; }

    const std::set<Secret>& scan_revealed() const { return revealed_; }
    const std::vector<AcceptedTx>& log() const { return log_; }

    Amount total_value() const;
    Amount balance_of(const PartyId& p) const;

    // Re-checks every accepted transaction against the outputs it consumed
    // at its submission time. A failure means the ledger was corrupted.
    Result<> revalidate_log(const SignatureScheme& scheme) const;

  private:
    std::string chain_id_;
    std::map<OutPoint, TxOut> utxos_;
    std::set<OutPoint> spent_;
    std::set<Secret> revealed_;
    std::vector<AcceptedTx> log_;
    uint32_t genesis_counter_ = 0;
};

}  // namespace atomicloans

#endif  // ATOMICLOANS_CHAIN_UTXO_CHAIN_H
