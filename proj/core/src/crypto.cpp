// ECDSA on P-256 through OpenSSL's EC_KEY interface. The signing nonce comes
// from the RFC 6979 HMAC-DRBG so signatures (and hence block hashes) are
// reproducible from the simulation seed.
#define OPENSSL_SUPPRESS_DEPRECATED

#include "fuzzychain/crypto.hpp"

#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/ecdsa.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/obj_mac.h>

#include <algorithm>
#include <memory>
#include <stdexcept>

namespace fuzzychain::crypto {

namespace {

struct BnFree {
  void operator()(BIGNUM* p) const { BN_clear_free(p); }
};
struct BnCtxFree {
  void operator()(BN_CTX* p) const { BN_CTX_free(p); }
};
struct PointFree {
  void operator()(EC_POINT* p) const { EC_POINT_free(p); }
};
struct GroupFree {
  void operator()(EC_GROUP* p) const { EC_GROUP_free(p); }
};
struct KeyFree {
  void operator()(EC_KEY* p) const { EC_KEY_free(p); }
};
struct SigFree {
  void operator()(ECDSA_SIG* p) const { ECDSA_SIG_free(p); }
};

using BnPtr = std::unique_ptr<BIGNUM, BnFree>;
using BnCtxPtr = std::unique_ptr<BN_CTX, BnCtxFree>;
using PointPtr = std::unique_ptr<EC_POINT, PointFree>;
using GroupPtr = std::unique_ptr<EC_GROUP, GroupFree>;
using KeyPtr = std::unique_ptr<EC_KEY, KeyFree>;
using SigPtr = std::unique_ptr<ECDSA_SIG, SigFree>;

[[noreturn]] void fail(const char* what) { throw std::runtime_error(std::string("crypto: ") + what); }

const EC_GROUP* group() {
  thread_local GroupPtr g(EC_GROUP_new_by_curve_name(NID_X9_62_prime256v1));
  if (!g) fail("curve unavailable");
  return g.get();
}

BnPtr to_bn(std::span<const std::uint8_t> bytes) {
  BnPtr bn(BN_bin2bn(bytes.data(), static_cast<int>(bytes.size()), nullptr));
  if (!bn) fail("BN_bin2bn");
  return bn;
}

std::array<std::uint8_t, 32> to_array(const BIGNUM* bn) {
  std::array<std::uint8_t, 32> out{};
  if (BN_bn2binpad(bn, out.data(), static_cast<int>(out.size())) != 32) fail("BN_bn2binpad");
  return out;
}

bool in_scalar_range(const BIGNUM* k) {
  return !BN_is_zero(k) && !BN_is_negative(k) && BN_cmp(k, EC_GROUP_get0_order(group())) < 0;
}

Digest hmac(std::span<const std::uint8_t> key, std::span<const std::uint8_t> data) {
  Digest out{};
  unsigned int len = 0;
  if (!HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(), data.size(),
            out.data(), &len) ||
      len != out.size()) {
    fail("HMAC");
  }
  return out;
}

Digest hmac(const Digest& key, std::initializer_list<std::span<const std::uint8_t>> parts) {
  Bytes data;
  for (auto p : parts) data.insert(data.end(), p.begin(), p.end());
  return hmac(key, data);
}

// RFC 6979 section 3.2 for a 256-bit order and SHA-256.
BnPtr rfc6979_nonce(const std::array<std::uint8_t, 32>& scalar, const Digest& h1) {
  const BIGNUM* order = EC_GROUP_get0_order(group());
  BnCtxPtr ctx(BN_CTX_new());
  BnPtr h = to_bn(h1);
  if (BN_cmp(h.get(), order) >= 0 && !BN_sub(h.get(), h.get(), order)) fail("BN_sub");
  const auto h_octets = to_array(h.get());

  Digest v;
  v.fill(0x01);
  Digest k{};
  const std::uint8_t zero = 0x00, one = 0x01;
  k = hmac(k, {v, {&zero, 1}, scalar, h_octets});
  v = hmac(k, v);
  k = hmac(k, {v, {&one, 1}, scalar, h_octets});
  v = hmac(k, v);
  for (;;) {
    v = hmac(k, v);
    BnPtr candidate = to_bn(v);
    if (in_scalar_range(candidate.get())) return candidate;
    k = hmac(k, {v, {&zero, 1}});
    v = hmac(k, v);
  }
}

KeyPtr make_public_key(const VerifyKey& key) {
  PointPtr point(EC_POINT_new(group()));
  if (!point || key.bytes.empty() ||
      EC_POINT_oct2point(group(), point.get(), key.bytes.data(), key.bytes.size(), nullptr) != 1) {
    return nullptr;
  }
  KeyPtr ec(EC_KEY_new());
  if (!ec || EC_KEY_set_group(ec.get(), group()) != 1 ||
      EC_KEY_set_public_key(ec.get(), point.get()) != 1) {
    return nullptr;
  }
  return ec;
}

}  // namespace

Digest sha256(std::span<const std::uint8_t> data) {
  Digest out{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
      len != out.size()) {
    fail("EVP_Digest");
  }
  return out;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0f]);
  }
  return out;
}

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw std::invalid_argument("hex string has odd length");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("invalid hex digit");
  };
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  }
  return out;
}

VerifyKey SigningKey::verify_key() const {
  BnPtr priv = to_bn(scalar_);
  PointPtr pub(EC_POINT_new(group()));
  if (!pub || EC_POINT_mul(group(), pub.get(), priv.get(), nullptr, nullptr, nullptr) != 1) {
    fail("EC_POINT_mul");
  }
  VerifyKey key;
  key.bytes.resize(33);
  if (EC_POINT_point2oct(group(), pub.get(), POINT_CONVERSION_COMPRESSED, key.bytes.data(),
                         key.bytes.size(), nullptr) != key.bytes.size()) {
    fail("EC_POINT_point2oct");
  }
  return key;
}

Bytes SigningKey::sign(std::span<const std::uint8_t> message) const {
  const Digest digest = sha256(message);
  const BIGNUM* order = EC_GROUP_get0_order(group());
  BnCtxPtr ctx(BN_CTX_new());

  BnPtr k = rfc6979_nonce(scalar_, digest);
  BnPtr kinv(BN_mod_inverse(nullptr, k.get(), order, ctx.get()));
  PointPtr r_point(EC_POINT_new(group()));
  BnPtr rx(BN_new());
  if (!kinv || !r_point || !rx ||
      EC_POINT_mul(group(), r_point.get(), k.get(), nullptr, nullptr, ctx.get()) != 1 ||
      EC_POINT_get_affine_coordinates(group(), r_point.get(), rx.get(), nullptr, ctx.get()) != 1 ||
      BN_nnmod(rx.get(), rx.get(), order, ctx.get()) != 1) {
    fail("nonce setup");
  }

  KeyPtr ec(EC_KEY_new());
  BnPtr priv = to_bn(scalar_);
  if (!ec || EC_KEY_set_group(ec.get(), group()) != 1 ||
      EC_KEY_set_private_key(ec.get(), priv.get()) != 1) {
    fail("EC_KEY setup");
  }
  SigPtr sig(ECDSA_do_sign_ex(digest.data(), static_cast<int>(digest.size()), kinv.get(), rx.get(),
                              ec.get()));
  if (!sig) fail("ECDSA_do_sign_ex");

  const int len = i2d_ECDSA_SIG(sig.get(), nullptr);
  Bytes der(static_cast<std::size_t>(len));
  unsigned char* p = der.data();
  i2d_ECDSA_SIG(sig.get(), &p);
  return der;
}

KeyPair new_keypair(Rng& rng) {
  std::array<std::uint8_t, 32> scalar{};
  for (;;) {
    rng.fill(scalar);
    BnPtr k = to_bn(scalar);
    if (in_scalar_range(k.get())) break;
  }
  SigningKey signing(scalar);
  VerifyKey verify = signing.verify_key();
  return KeyPair{std::move(signing), std::move(verify)};
}

bool verify(const VerifyKey& key, std::span<const std::uint8_t> message,
            std::span<const std::uint8_t> signature) {
  if (signature.empty()) return false;
  KeyPtr ec = make_public_key(key);
  if (!ec) return false;

  const unsigned char* p = signature.data();
  SigPtr sig(d2i_ECDSA_SIG(nullptr, &p, static_cast<long>(signature.size())));
  if (!sig || p != signature.data() + signature.size()) return false;
  // Only the canonical DER encoding is accepted.
  if (i2d_ECDSA_SIG(sig.get(), nullptr) != static_cast<int>(signature.size())) return false;
  Bytes reencoded(signature.size());
  unsigned char* q = reencoded.data();
  i2d_ECDSA_SIG(sig.get(), &q);
  if (!std::equal(reencoded.begin(), reencoded.end(), signature.begin())) return false;

  const Digest digest = sha256(message);
  return ECDSA_do_verify(digest.data(), static_cast<int>(digest.size()), sig.get(), ec.get()) == 1;
}

}  // namespace fuzzychain::crypto
