#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fuzzychain/rng.hpp"

namespace fuzzychain::crypto {

using Bytes = std::vector<std::uint8_t>;
using Digest = std::array<std::uint8_t, 32>;

/// Curve used for every key in the ledger.
inline constexpr const char* kCurveName = "prime256v1";

Digest sha256(std::span<const std::uint8_t> data);

std::string to_hex(std::span<const std::uint8_t> bytes);
Bytes from_hex(std::string_view hex);

/// SEC1 compressed public point (33 bytes).
struct VerifyKey {
  Bytes bytes;
  bool operator==(const VerifyKey&) const = default;
};

/// Private scalar, big-endian, 32 bytes.
class SigningKey {
 public:
  explicit SigningKey(const std::array<std::uint8_t, 32>& scalar) : scalar_(scalar) {}
  const std::array<std::uint8_t, 32>& scalar() const { return scalar_; }

  VerifyKey verify_key() const;

  /// DER-encoded ECDSA signature over SHA-256(message). The nonce is derived
  /// deterministically from the key and digest, so equal inputs sign equally.
  Bytes sign(std::span<const std::uint8_t> message) const;

 private:
  std::array<std::uint8_t, 32> scalar_;
};

struct KeyPair {
  SigningKey signing;
  VerifyKey verify;
};

/// Fresh keypair drawn from rng; the scalar is uniform on [1, order - 1].
KeyPair new_keypair(Rng& rng);

/// False for malformed keys or signatures as well as for mismatches.
bool verify(const VerifyKey& key, std::span<const std::uint8_t> message,
            std::span<const std::uint8_t> signature);

}  // namespace fuzzychain::crypto
