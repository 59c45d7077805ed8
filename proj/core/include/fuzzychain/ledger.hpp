#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "fuzzychain/crypto.hpp"

namespace fuzzychain::ledger {

using crypto::Bytes;
using crypto::Digest;

/// Stake amounts travel as fixed-point integers with six decimal places.
inline constexpr double kAmountScale = 1e6;

std::uint64_t to_fixed_point(double amount);
double from_fixed_point(std::uint64_t micros);

struct Transaction {
  Bytes sender;     // SEC1 public key of the payer
  Bytes recipient;  // SEC1 public key of the payee
  std::uint64_t amount_micros = 0;
  std::uint64_t nonce = 0;
  Bytes signature;  // DER ECDSA over signing_bytes()

  bool operator==(const Transaction&) const = default;
};

struct Block {
  std::uint64_t index = 0;
  std::uint64_t timestamp = 0;
  Digest prev_hash{};
  std::vector<Transaction> transactions;
  Digest hash{};

  bool operator==(const Block&) const = default;
};

/// Bytes covered by a transaction signature: sender, recipient, amount, nonce.
Bytes signing_bytes(const Transaction& tx);

/// Full transaction encoding including the length-prefixed signature.
Bytes encode(const Transaction& tx);
std::optional<Transaction> decode_transaction(std::span<const std::uint8_t> bytes);

/// Canonical block serialization hashed into Block::hash (excludes the hash).
Bytes canonical_bytes(const Block& block);
Digest compute_hash(const Block& block);

/// Wire form used for export and tamper tests: canonical bytes then the hash.
Bytes encode(const Block& block);
std::optional<Block> decode_block(std::span<const std::uint8_t> bytes);

Transaction sign_transaction(Transaction unsigned_tx, const crypto::SigningKey& key);
bool verify_transaction(const Transaction& tx);

enum class Rejection { None, StaleIndex, Linkage, InvalidTransaction, HashMismatch };

std::string_view to_string(Rejection r);

Block genesis_block();

/// Child of parent stamped with the simulation clock; the hash is filled in.
Block build_block(const Block& parent, std::vector<Transaction> txs, std::uint64_t clock);

/// Hash-linked list of blocks starting at genesis. Only blocks that pass
/// validate() are ever stored.
class Chain {
 public:
  Chain() : blocks_{genesis_block()} {}

  const Block& tip() const { return blocks_.back(); }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }

  Rejection validate(const Block& block) const;

  /// Appends when validate() passes; otherwise leaves the chain untouched and
  /// returns the reason.
  Rejection append(Block block);

  /// Re-checks every adjacent pair from genesis.
  bool verify_all() const;

 private:
  std::vector<Block> blocks_;
};

Rejection validate_block(const Chain& chain, const Block& block);

nlohmann::json to_json(const Transaction& tx);
nlohmann::json to_json(const Block& block);
nlohmann::json to_json(const Chain& chain);

}  // namespace fuzzychain::ledger
