// Copyright 2026 The lpchain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lpchain/crypto.hpp"

#include <openssl/bn.h>
#include <openssl/core_names.h>
#include <openssl/ec.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/param_build.h>

#include <cstring>

namespace lpchain {

namespace {

struct BnDeleter { void operator()(BIGNUM* p) const { BN_free(p); } };
struct BnCtxDeleter { void operator()(BN_CTX* p) const { BN_CTX_free(p); } };
struct PointDeleter { void operator()(EC_POINT* p) const { EC_POINT_free(p); } };
struct MdCtxDeleter { void operator()(EVP_MD_CTX* p) const { EVP_MD_CTX_free(p); } };
struct SigDeleter { void operator()(ECDSA_SIG* p) const { ECDSA_SIG_free(p); } };
struct PkeyCtxDeleter { void operator()(EVP_PKEY_CTX* p) const { EVP_PKEY_CTX_free(p); } };
struct ParamBldDeleter { void operator()(OSSL_PARAM_BLD* p) const { OSSL_PARAM_BLD_free(p); } };
struct ParamDeleter { void operator()(OSSL_PARAM* p) const { OSSL_PARAM_free(p); } };

using BnPtr = std::unique_ptr<BIGNUM, BnDeleter>;
using BnCtxPtr = std::unique_ptr<BN_CTX, BnCtxDeleter>;
using PointPtr = std::unique_ptr<EC_POINT, PointDeleter>;

BnPtr bn_new() { return BnPtr(BN_new()); }

BnPtr bn_from(ByteView b) { return BnPtr(BN_bin2bn(b.data(), static_cast<int>(b.size()), nullptr)); }

Bytes bn_to(const BIGNUM* v, std::size_t len) {
  Bytes out(len);
  BN_bn2binpad(v, out.data(), static_cast<int>(len));
  return out;
}

const EVP_MD* sha256_md() {
  static EVP_MD* md = EVP_MD_fetch(nullptr, "SHA256", nullptr);
  return md;
}

struct Curve {
  KeyLevel level;
  int nid;
  const char* name;
  std::size_t field_bytes;
  std::size_t scalar_bytes;
};

constexpr Curve kCurves[] = {
    {KeyLevel::P224, NID_secp224r1, "secp224r1", 28, 28},
    {KeyLevel::P256, NID_X9_62_prime256v1, "prime256v1", 32, 32},
    {KeyLevel::P384, NID_secp384r1, "secp384r1", 48, 48},
    {KeyLevel::P521, NID_secp521r1, "secp521r1", 66, 66},
};

const Curve& curve_of(KeyLevel l) {
  for (const auto& c : kCurves)
    if (c.level == l) return c;
  throw Error(Reason::UnsupportedKeyLevel, "unsupported key level");
}

// Shared, read-only group objects, one per curve.
const EC_GROUP* group_of(KeyLevel l) {
  struct Groups {
    EC_GROUP* g[4];
    Groups() {
      for (int i = 0; i < 4; ++i) g[i] = EC_GROUP_new_by_curve_name(kCurves[i].nid);
    }
    ~Groups() {
      for (auto* p : g) EC_GROUP_free(p);
    }
  };
  static const Groups groups;
  for (int i = 0; i < 4; ++i)
    if (kCurves[i].level == l) return groups.g[i];
  throw Error(Reason::UnsupportedKeyLevel, "unsupported key level");
}

using Sha256 = std::array<std::uint8_t, 32>;

Sha256 hmac(const Sha256& key, std::initializer_list<ByteView> parts) {
  Bytes msg;
  for (auto p : parts) msg.insert(msg.end(), p.begin(), p.end());
  Sha256 out{};
  unsigned int len = 0;
  HMAC(sha256_md(), key.data(), static_cast<int>(key.size()), msg.data(), msg.size(), out.data(), &len);
  return out;
}

// Leftmost qlen bits of b as an integer.
BnPtr bits2int(ByteView b, int qlen) {
  BnPtr x = bn_from(b);
  int blen = static_cast<int>(b.size()) * 8;
  if (blen > qlen) BN_rshift(x.get(), x.get(), blen - qlen);
  return x;
}

}  // namespace

Digest Digest::from_bytes(ByteView b) {
  if (b.size() != 32) throw Error(Reason::ParseError, "digest must be 32 bytes");
  Digest d;
  std::memcpy(d.bytes.data(), b.data(), 32);
  return d;
}

std::size_t DigestHash::operator()(const Digest& d) const noexcept {
  std::size_t h;
  std::memcpy(&h, d.bytes.data(), sizeof h);
  return h;
}

Digest digest(ByteView data) {
  Digest d;
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), d.bytes.data(), &len, sha256_md(), nullptr);
  return d;
}

Digest chain_link(ByteView prev_encoding, ByteView current_encoding) {
  Digest prev = digest(prev_encoding);
  Bytes buf(prev.bytes.begin(), prev.bytes.end());
  buf.insert(buf.end(), current_encoding.begin(), current_encoding.end());
  return digest(buf);
}

Result<KeyLevel> key_level_from_bits(int bits) {
  for (const auto& c : kCurves)
    if (static_cast<int>(c.level) == bits) return c.level;
  return fail(Reason::UnsupportedKeyLevel, "key size " + std::to_string(bits) + " not in {224,256,384,521}");
}

std::size_t scalar_size(KeyLevel l) { return curve_of(l).scalar_bytes; }

Result<PublicKey> PublicKey::from_sec1(ByteView sec1) {
  const Curve* curve = nullptr;
  for (const auto& c : kCurves)
    if (sec1.size() == 1 + 2 * c.field_bytes) curve = &c;
  if (curve == nullptr || sec1.empty() || sec1[0] != 0x04)
    return fail(Reason::InvalidSignature, "not an uncompressed SEC1 point");

  const EC_GROUP* group = group_of(curve->level);
  PointPtr point(EC_POINT_new(group));
  if (EC_POINT_oct2point(group, point.get(), sec1.data(), sec1.size(), nullptr) != 1)
    return fail(Reason::InvalidSignature, "point not on curve");

  std::unique_ptr<OSSL_PARAM_BLD, ParamBldDeleter> bld(OSSL_PARAM_BLD_new());
  OSSL_PARAM_BLD_push_utf8_string(bld.get(), OSSL_PKEY_PARAM_GROUP_NAME, curve->name, 0);
  OSSL_PARAM_BLD_push_octet_string(bld.get(), OSSL_PKEY_PARAM_PUB_KEY, sec1.data(), sec1.size());
  std::unique_ptr<OSSL_PARAM, ParamDeleter> params(OSSL_PARAM_BLD_to_param(bld.get()));
  std::unique_ptr<EVP_PKEY_CTX, PkeyCtxDeleter> pctx(EVP_PKEY_CTX_new_from_name(nullptr, "EC", nullptr));
  EVP_PKEY* raw = nullptr;
  if (!pctx || EVP_PKEY_fromdata_init(pctx.get()) != 1 ||
      EVP_PKEY_fromdata(pctx.get(), &raw, EVP_PKEY_PUBLIC_KEY, params.get()) != 1)
    return fail(Reason::InvalidSignature, "cannot load public key");
  return PublicKey(curve->level, Bytes(sec1.begin(), sec1.end()),
                   std::shared_ptr<evp_pkey_st>(raw, EVP_PKEY_free));
}

bool PublicKey::verify(ByteView payload, ByteView signature) const {
  std::size_t rlen = scalar_size(level_);
  if (signature.size() != 2 * rlen) return false;

  std::unique_ptr<ECDSA_SIG, SigDeleter> sig(ECDSA_SIG_new());
  BIGNUM* r = BN_bin2bn(signature.data(), static_cast<int>(rlen), nullptr);
  BIGNUM* s = BN_bin2bn(signature.data() + rlen, static_cast<int>(rlen), nullptr);
  if (ECDSA_SIG_set0(sig.get(), r, s) != 1) {
    BN_free(r);
    BN_free(s);
    return false;
  }
  unsigned char* der = nullptr;
  int der_len = i2d_ECDSA_SIG(sig.get(), &der);
  if (der_len <= 0) return false;

  std::unique_ptr<EVP_MD_CTX, MdCtxDeleter> mctx(EVP_MD_CTX_new());
  bool ok = EVP_DigestVerifyInit(mctx.get(), nullptr, sha256_md(), nullptr, pkey_.get()) == 1 &&
            EVP_DigestVerify(mctx.get(), der, static_cast<std::size_t>(der_len), payload.data(),
                             payload.size()) == 1;
  OPENSSL_free(der);
  return ok;
}

Bytes SecretKey::sign(ByteView payload) const {
  const EC_GROUP* group = group_of(level_);
  const BIGNUM* order = EC_GROUP_get0_order(group);
  const int qlen = BN_num_bits(order);
  const std::size_t rlen = static_cast<std::size_t>(qlen + 7) / 8;
  BnCtxPtr ctx(BN_CTX_new());

  BnPtr d = bn_from(scalar_);
  Digest h1 = digest(payload);
  BnPtr e = bits2int(h1.view(), qlen);

  // RFC 6979 section 3.2 with HMAC-SHA256.
  BnPtr e_mod = bn_new();
  BN_nnmod(e_mod.get(), e.get(), order, ctx.get());
  Bytes x_oct = bn_to(d.get(), rlen);
  Bytes h_oct = bn_to(e_mod.get(), rlen);

  Sha256 v;
  v.fill(0x01);
  Sha256 k;
  k.fill(0x00);
  const std::uint8_t zero = 0x00, one = 0x01;
  k = hmac(k, {v, ByteView(&zero, 1), x_oct, h_oct});
  v = hmac(k, {v});
  k = hmac(k, {v, ByteView(&one, 1), x_oct, h_oct});
  v = hmac(k, {v});

  BnPtr nonce, r = bn_new(), s = bn_new(), x = bn_new(), kinv = bn_new(), tmp = bn_new();
  PointPtr point(EC_POINT_new(group));
  for (;;) {
    Bytes t;
    while (t.size() * 8 < static_cast<std::size_t>(qlen)) {
      v = hmac(k, {v});
      t.insert(t.end(), v.begin(), v.end());
    }
    nonce = bits2int(t, qlen);
    if (!BN_is_zero(nonce.get()) && BN_cmp(nonce.get(), order) < 0) {
      EC_POINT_mul(group, point.get(), nonce.get(), nullptr, nullptr, ctx.get());
      EC_POINT_get_affine_coordinates(group, point.get(), x.get(), nullptr, ctx.get());
      BN_nnmod(r.get(), x.get(), order, ctx.get());
      if (!BN_is_zero(r.get())) {
        BN_mod_inverse(kinv.get(), nonce.get(), order, ctx.get());
        BN_mod_mul(tmp.get(), r.get(), d.get(), order, ctx.get());
        BN_mod_add(tmp.get(), tmp.get(), e.get(), order, ctx.get());
        BN_mod_mul(s.get(), kinv.get(), tmp.get(), order, ctx.get());
        if (!BN_is_zero(s.get())) break;
      }
    }
    k = hmac(k, {v, ByteView(&zero, 1)});
    v = hmac(k, {v});
  }

  Bytes out = bn_to(r.get(), rlen);
  Bytes s_bytes = bn_to(s.get(), rlen);
  out.insert(out.end(), s_bytes.begin(), s_bytes.end());
  return out;
}

Result<KeyPair> keypair_generate(std::uint64_t seed, int level_bits) {
  auto level = key_level_from_bits(level_bits);
  if (!level) return level.failure();

  const EC_GROUP* group = group_of(*level);
  const BIGNUM* order = EC_GROUP_get0_order(group);
  BnCtxPtr ctx(BN_CTX_new());

  Bytes material;
  for (std::uint32_t counter = 0; counter < 3; ++counter) {
    Bytes block = to_bytes("lpchain.keygen");
    block.push_back(static_cast<std::uint8_t>(level_bits >> 8));
    block.push_back(static_cast<std::uint8_t>(level_bits));
    for (int shift = 56; shift >= 0; shift -= 8) block.push_back(static_cast<std::uint8_t>(seed >> shift));
    for (int shift = 24; shift >= 0; shift -= 8) block.push_back(static_cast<std::uint8_t>(counter >> shift));
    Digest h = digest(block);
    material.insert(material.end(), h.bytes.begin(), h.bytes.end());
  }
  // d = material mod (n - 1) + 1, never zero.
  BnPtr n_minus_1(BN_dup(order));
  BN_sub_word(n_minus_1.get(), 1);
  BnPtr d = bn_from(material);
  BN_nnmod(d.get(), d.get(), n_minus_1.get(), ctx.get());
  BN_add_word(d.get(), 1);

  PointPtr pub(EC_POINT_new(group));
  EC_POINT_mul(group, pub.get(), d.get(), nullptr, nullptr, ctx.get());
  std::size_t len = EC_POINT_point2oct(group, pub.get(), POINT_CONVERSION_UNCOMPRESSED, nullptr, 0, ctx.get());
  Bytes sec1(len);
  EC_POINT_point2oct(group, pub.get(), POINT_CONVERSION_UNCOMPRESSED, sec1.data(), len, ctx.get());

  auto pk = PublicKey::from_sec1(sec1);
  if (!pk) return pk.failure();
  return KeyPair{SecretKey(*level, bn_to(d.get(), scalar_size(*level))), std::move(*pk)};
}

}  // namespace lpchain
