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


#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "lpchain/crypto.hpp"
#include "lpchain/keys.hpp"

namespace lpchain {
namespace {

struct Vector {
  int level;
  std::uint64_t seed;
  Bytes payload;
  Bytes pub;
  Bytes sig;
};

std::vector<Vector> load_vectors() {
  std::ifstream in(std::string(LPCHAIN_FIXTURES) + "/ecdsa_vectors.txt");
  std::vector<Vector> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    Vector v;
    std::string payload, pub, sig;
    ls >> v.level >> v.seed >> payload >> pub >> sig;
    v.payload = payload == "-" ? Bytes{} : from_hex(payload);
    v.pub = from_hex(pub);
    v.sig = from_hex(sig);
    out.push_back(std::move(v));
  }
  return out;
}

TEST(Crypto, Sha256KnownAnswers) {
  EXPECT_EQ(digest(to_bytes("")).hex(), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(digest(to_bytes("abc")).hex(), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Crypto, ChainLinkHashesThePredecessorFirst) {
  Bytes prev = to_bytes("prev");
  Bytes cur = to_bytes("cur");
  Digest hp = digest(prev);
  Bytes joined(hp.bytes.begin(), hp.bytes.end());
  joined.insert(joined.end(), cur.begin(), cur.end());
  EXPECT_EQ(chain_link(prev, cur), digest(joined));
  Digest he = digest(Bytes{});
  Bytes genesis(he.bytes.begin(), he.bytes.end());
  genesis.insert(genesis.end(), cur.begin(), cur.end());
  EXPECT_EQ(chain_link(Bytes{}, cur), digest(genesis));
}

TEST(Crypto, DeterministicSignaturesMatchIndependentVectors) {
  auto vectors = load_vectors();
  ASSERT_EQ(vectors.size(), 64u);
  for (const auto& v : vectors) {
    auto kp = keypair_generate(v.seed, v.level);
    ASSERT_TRUE(kp.ok());
    EXPECT_EQ(kp->pub.sec1(), v.pub) << v.level << " " << v.seed;
    EXPECT_EQ(kp->secret.sign(v.payload), v.sig) << v.level << " " << v.seed;
    EXPECT_EQ(v.sig.size(), signature_size(kp->pub.level()));
    auto pub = PublicKey::from_sec1(v.pub);
    ASSERT_TRUE(pub.ok());
    EXPECT_TRUE(pub->verify(v.payload, v.sig));
  }
}

TEST(Crypto, VerificationRejectsAlteredInputs) {
  for (int level : {224, 256, 384, 521}) {
    auto kp = keypair_generate(3, level).value();
    Bytes payload = to_bytes("payload");
    Bytes sig = kp.secret.sign(payload);
    ASSERT_TRUE(kp.pub.verify(payload, sig));
    Bytes bad = sig;
    bad[bad.size() / 2] ^= 0x01;
    EXPECT_FALSE(kp.pub.verify(payload, bad));
    EXPECT_FALSE(kp.pub.verify(to_bytes("payloae"), sig));
    EXPECT_FALSE(kp.pub.verify(payload, Bytes(sig.begin(), sig.end() - 1)));
    EXPECT_FALSE(kp.pub.verify(payload, Bytes(sig.size(), 0)));
    auto other = keypair_generate(4, level).value();
    EXPECT_FALSE(other.pub.verify(payload, sig));
  }
}

TEST(Crypto, UnsupportedLevelsAndMalformedKeys) {
  EXPECT_EQ(key_level_from_bits(192).reason(), Reason::UnsupportedKeyLevel);
  EXPECT_FALSE(keypair_generate(1, 100).ok());
  EXPECT_FALSE(PublicKey::from_sec1(Bytes(57, 0x04)).ok());
  EXPECT_FALSE(PublicKey::from_sec1(Bytes(10, 0x04)).ok());
}

TEST(Crypto, HexRoundTripAndErrors) {
  Bytes b{0x00, 0x7f, 0x80, 0xff};
  EXPECT_EQ(to_hex(b), "007f80ff");
  EXPECT_EQ(from_hex("007F80ff"), b);
  EXPECT_THROW(from_hex("abc"), Error);
  EXPECT_THROW(from_hex("zz"), Error);
  EXPECT_THROW(Digest::from_bytes(Bytes(31)), Error);
}

TEST(Keys, IdentityIdIsHexPublicKey) {
  auto id = make_identity(11, 256).value();
  EXPECT_EQ(id.id.value, to_hex(id.pub.sec1()));
  EXPECT_EQ(make_identity(11, 256)->id, id.id);
  EXPECT_NE(make_identity(12, 256)->id, id.id);
}

TEST(Keys, DirectoryChecksRoleAndSigner) {
  KeyDirectory keys;
  auto a = make_identity(1, 224).value();
  auto b = make_identity(2, 224).value();
  ASSERT_TRUE(keys.add(a.id, EntityRole::Supervisor, a.pub).ok());
  EXPECT_EQ(keys.add(a.id, EntityRole::Mobile, a.pub).reason(), Reason::DuplicateEntity);
  Bytes payload = to_bytes("x");
  Signature sig = a.sign(payload);
  EXPECT_TRUE(keys.verify(sig, payload));
  EXPECT_TRUE(keys.verify_as(sig, payload, EntityRole::Supervisor));
  EXPECT_FALSE(keys.verify_as(sig, payload, EntityRole::Mobile));
  Signature unknown = b.sign(payload);
  EXPECT_FALSE(keys.verify(unknown, payload));
  Signature relabeled{sig.bytes, b.id};
  EXPECT_FALSE(keys.verify(relabeled, payload));
}

TEST(Keys, MemoDoesNotChangeVerdicts) {
  KeyDirectory keys;
  auto a = make_identity(1, 224).value();
  ASSERT_TRUE(keys.add(a.id, EntityRole::Mobile, a.pub).ok());
  keys.set_memo(true);
  Bytes payload = to_bytes("y");
  Signature sig = a.sign(payload);
  Signature bad = sig;
  bad.bytes[0] ^= 1;
  for (int i = 0; i < 3; ++i) {
    EXPECT_TRUE(keys.verify(sig, payload));
    EXPECT_FALSE(keys.verify(bad, payload));
  }
  EXPECT_EQ(keys.memo_hits(), 4u);
}

}  // namespace
}  // namespace lpchain
