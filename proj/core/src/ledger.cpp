#include "fuzzychain/ledger.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fuzzychain::ledger {

namespace {

void put_u16(Bytes& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_u32(Bytes& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void put_u64(Bytes& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void put_field(Bytes& out, const Bytes& field) {
  if (field.size() > std::numeric_limits<std::uint16_t>::max()) {
    throw std::length_error("field longer than 65535 bytes");
  }
  put_u16(out, static_cast<std::uint16_t>(field.size()));
  out.insert(out.end(), field.begin(), field.end());
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  bool done() const { return pos_ == in_.size(); }

  std::optional<std::uint64_t> uint(int width) {
    if (in_.size() - pos_ < static_cast<std::size_t>(width)) return std::nullopt;
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) v = v << 8 | in_[pos_++];
    return v;
  }

  std::optional<Bytes> raw(std::size_t n) {
    if (in_.size() - pos_ < n) return std::nullopt;
    Bytes out(in_.begin() + static_cast<std::ptrdiff_t>(pos_),
              in_.begin() + static_cast<std::ptrdiff_t>(pos_ + n));
    pos_ += n;
    return out;
  }

  std::optional<Bytes> field() {
    auto len = uint(2);
    if (!len) return std::nullopt;
    return raw(*len);
  }

  std::optional<Digest> digest() {
    auto bytes = raw(32);
    if (!bytes) return std::nullopt;
    Digest d{};
    std::copy(bytes->begin(), bytes->end(), d.begin());
    return d;
  }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

std::optional<Transaction> read_transaction(Reader& r) {
  Transaction tx;
  auto sender = r.field();
  auto recipient = sender ? r.field() : std::nullopt;
  auto amount = recipient ? r.uint(8) : std::nullopt;
  auto nonce = amount ? r.uint(8) : std::nullopt;
  auto sig = nonce ? r.field() : std::nullopt;
  if (!sig) return std::nullopt;
  tx.sender = std::move(*sender);
  tx.recipient = std::move(*recipient);
  tx.amount_micros = *amount;
  tx.nonce = *nonce;
  tx.signature = std::move(*sig);
  return tx;
}

void append_transaction(Bytes& out, const Transaction& tx) {
  put_field(out, tx.sender);
  put_field(out, tx.recipient);
  put_u64(out, tx.amount_micros);
  put_u64(out, tx.nonce);
  put_field(out, tx.signature);
}

}  // namespace

std::uint64_t to_fixed_point(double amount) {
  if (!(amount >= 0.0)) throw std::invalid_argument("amount must be non-negative");
  return static_cast<std::uint64_t>(std::llround(amount * kAmountScale));
}

double from_fixed_point(std::uint64_t micros) { return static_cast<double>(micros) / kAmountScale; }

Bytes signing_bytes(const Transaction& tx) {
  Bytes out;
  put_field(out, tx.sender);
  put_field(out, tx.recipient);
  put_u64(out, tx.amount_micros);
  put_u64(out, tx.nonce);
  return out;
}

Bytes encode(const Transaction& tx) {
  Bytes out;
  append_transaction(out, tx);
  return out;
}

std::optional<Transaction> decode_transaction(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  auto tx = read_transaction(r);
  if (!tx || !r.done()) return std::nullopt;
  return tx;
}

Bytes canonical_bytes(const Block& block) {
  Bytes out;
  put_u64(out, block.index);
  put_u64(out, block.timestamp);
  out.insert(out.end(), block.prev_hash.begin(), block.prev_hash.end());
  if (block.transactions.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw std::length_error("too many transactions");
  }
  put_u32(out, static_cast<std::uint32_t>(block.transactions.size()));
  for (const auto& tx : block.transactions) append_transaction(out, tx);
  return out;
}

Digest compute_hash(const Block& block) { return crypto::sha256(canonical_bytes(block)); }

Bytes encode(const Block& block) {
  Bytes out = canonical_bytes(block);
  out.insert(out.end(), block.hash.begin(), block.hash.end());
  return out;
}

std::optional<Block> decode_block(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  Block b;
  auto index = r.uint(8);
  auto timestamp = index ? r.uint(8) : std::nullopt;
  auto prev = timestamp ? r.digest() : std::nullopt;
  auto count = prev ? r.uint(4) : std::nullopt;
  if (!count) return std::nullopt;
  b.index = *index;
  b.timestamp = *timestamp;
  b.prev_hash = *prev;
  for (std::uint64_t i = 0; i < *count; ++i) {
    auto tx = read_transaction(r);
    if (!tx) return std::nullopt;
    b.transactions.push_back(std::move(*tx));
  }
  auto hash = r.digest();
  if (!hash || !r.done()) return std::nullopt;
  b.hash = *hash;
  return b;
}

Transaction sign_transaction(Transaction tx, const crypto::SigningKey& key) {
  tx.signature = key.sign(signing_bytes(tx));
  return tx;
}

bool verify_transaction(const Transaction& tx) {
  return crypto::verify(crypto::VerifyKey{tx.sender}, signing_bytes(tx), tx.signature);
}

std::string_view to_string(Rejection r) {
  switch (r) {
    case Rejection::None: return "none";
    case Rejection::StaleIndex: return "stale index";
    case Rejection::Linkage: return "linkage";
    case Rejection::InvalidTransaction: return "invalid transaction";
    case Rejection::HashMismatch: return "hash mismatch";
  }
  return "unknown";
}

Block genesis_block() {
  Block g;
  g.hash = compute_hash(g);
  return g;
}

Block build_block(const Block& parent, std::vector<Transaction> txs, std::uint64_t clock) {
  Block b;
  b.index = parent.index + 1;
  b.timestamp = clock;
  b.prev_hash = parent.hash;
  b.transactions = std::move(txs);
  b.hash = compute_hash(b);
  return b;
}

namespace {

Rejection check_link(const Block& parent, const Block& block) {
  if (block.index != parent.index + 1) return Rejection::StaleIndex;
  if (block.prev_hash != parent.hash) return Rejection::Linkage;
  for (const auto& tx : block.transactions) {
    if (!verify_transaction(tx)) return Rejection::InvalidTransaction;
  }
  if (compute_hash(block) != block.hash) return Rejection::HashMismatch;
  return Rejection::None;
}

}  // namespace

Rejection Chain::validate(const Block& block) const { return check_link(tip(), block); }

Rejection Chain::append(Block block) {
  const Rejection r = validate(block);
  if (r == Rejection::None) blocks_.push_back(std::move(block));
  return r;
}

bool Chain::verify_all() const {
  const Block& g = blocks_.front();
  if (g.index != 0 || g.prev_hash != Digest{} || compute_hash(g) != g.hash) return false;
  for (std::size_t i = 1; i < blocks_.size(); ++i) {
    if (check_link(blocks_[i - 1], blocks_[i]) != Rejection::None) return false;
  }
  return true;
}

Rejection validate_block(const Chain& chain, const Block& block) { return chain.validate(block); }

nlohmann::json to_json(const Transaction& tx) {
  return {{"sender", crypto::to_hex(tx.sender)},
          {"recipient", crypto::to_hex(tx.recipient)},
          {"amount_micros", tx.amount_micros},
          {"nonce", tx.nonce},
          {"signature", crypto::to_hex(tx.signature)}};
}

nlohmann::json to_json(const Block& block) {
  nlohmann::json txs = nlohmann::json::array();
  for (const auto& tx : block.transactions) txs.push_back(to_json(tx));
  return {{"index", block.index},
          {"timestamp", block.timestamp},
          {"prev_hash", crypto::to_hex(block.prev_hash)},
          {"hash", crypto::to_hex(block.hash)},
          {"transactions", std::move(txs)}};
}

nlohmann::json to_json(const Chain& chain) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : chain.blocks()) blocks.push_back(to_json(b));
  return {{"length", chain.size()}, {"blocks", std::move(blocks)}};
}

}  // namespace fuzzychain::ledger
