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

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>

#include "lpchain/bytes.hpp"
#include "lpchain/result.hpp"

struct evp_pkey_st;

namespace lpchain {

// SHA-256 everywhere: block chaining, provenance chaining and AReq hashing.
inline constexpr std::string_view kHashAlgorithm = "sha256";

struct Digest {
  std::array<std::uint8_t, 32> bytes{};

  auto operator<=>(const Digest&) const = default;
  ByteView view() const { return ByteView(bytes.data(), bytes.size()); }
  std::string hex() const { return to_hex(view()); }
  // Throws lpchain::Error(ParseError) unless exactly 32 bytes.
  static Digest from_bytes(ByteView b);
};

struct DigestHash {
  std::size_t operator()(const Digest& d) const noexcept;
};

Digest digest(ByteView data);

// H(H(prev) || current). The genesis predecessor is the empty sequence.
Digest chain_link(ByteView prev_encoding, ByteView current_encoding);

enum class KeyLevel : int { P224 = 224, P256 = 256, P384 = 384, P521 = 521 };

Result<KeyLevel> key_level_from_bits(int bits);
inline int bits_of(KeyLevel l) { return static_cast<int>(l); }
// Byte length of one scalar (r or s) for the curve.
std::size_t scalar_size(KeyLevel l);
// Signatures are fixed-length r || s.
inline std::size_t signature_size(KeyLevel l) { return 2 * scalar_size(l); }

class PublicKey {
 public:
  // Accepts an uncompressed SEC1 point; the curve is inferred from its length.
  static Result<PublicKey> from_sec1(ByteView sec1);

  KeyLevel level() const { return level_; }
  const Bytes& sec1() const { return sec1_; }

  // ECDSA/SHA-256 verification. Malformed signatures verify false.
  bool verify(ByteView payload, ByteView signature) const;

  bool operator==(const PublicKey& o) const { return level_ == o.level_ && sec1_ == o.sec1_; }

 private:
  PublicKey(KeyLevel level, Bytes sec1, std::shared_ptr<evp_pkey_st> pkey)
      : level_(level), sec1_(std::move(sec1)), pkey_(std::move(pkey)) {}

  KeyLevel level_;
  Bytes sec1_;
  std::shared_ptr<evp_pkey_st> pkey_;
};

class SecretKey {
 public:
  SecretKey(KeyLevel level, Bytes scalar) : level_(level), scalar_(std::move(scalar)) {}

  KeyLevel level() const { return level_; }

  // Deterministic ECDSA (RFC 6979 nonces, SHA-256) returning r || s.
  Bytes sign(ByteView payload) const;

 private:
  KeyLevel level_;
  Bytes scalar_;
};

struct KeyPair {
  SecretKey secret;
  PublicKey pub;
};

// The secret scalar is expanded from (seed, level) with SHA-256, so scenario
// runs reproduce their keys exactly.
Result<KeyPair> keypair_generate(std::uint64_t seed, int level_bits);

inline Bytes sign(const SecretKey& sk, ByteView payload) { return sk.sign(payload); }
inline bool verify(const PublicKey& pk, ByteView payload, ByteView sig) { return pk.verify(payload, sig); }

}  // namespace lpchain
