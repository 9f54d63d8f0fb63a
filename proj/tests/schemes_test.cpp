// Copyright 2026 The romlab Authors.
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

#include <random>

#include "romlab/attacks.hpp"
#include "romlab/error.hpp"
#include "romlab/schemes.hpp"

namespace romlab {
namespace {

OracleHandle rom(std::uint64_t k, std::uint64_t seed) {
  return OracleHandle::random(k, LengthFunction::identity(), seed);
}

Bytes msg_of(int n) {
  const std::string s = "message " + std::to_string(n);
  return Bytes(s.begin(), s.end());
}

TEST(Lamport, DigestLength) {
  EXPECT_EQ(digest_bits(16), 16u);
  EXPECT_EQ(digest_bits(256), 256u);
  EXPECT_EQ(digest_bits(512), 256u);
}

TEST(Lamport, SignVerifyAndRejectForeignMessages) {
  const OracleHandle f = rom(32, 1);
  SigKeyPair kp = base_gen(32, f, 7);
  for (int n = 0; n < 20; ++n) {
    const Signature sig = base_sign(kp.sk, msg_of(n), f);
    EXPECT_EQ(sig.leaf, static_cast<std::uint32_t>(n));
    EXPECT_TRUE(base_verify(kp.vk, msg_of(n), sig, f));
    EXPECT_FALSE(base_verify(kp.vk, msg_of(n + 1), sig, f));
    Signature bad = sig;
    bad.revealed[n % bad.revealed.size()][0] ^= 1;
    EXPECT_FALSE(base_verify(kp.vk, msg_of(n), bad, f));
    bad = sig;
    bad.path[0][0] ^= 1;
    EXPECT_FALSE(base_verify(kp.vk, msg_of(n), bad, f));
    bad = sig;
    bad.leaf ^= 1;
    EXPECT_FALSE(base_verify(kp.vk, msg_of(n), bad, f));
  }
  EXPECT_EQ(kp.sk.used, 20u);
  EXPECT_FALSE(base_verify(kp.vk, msg_of(0), Signature::magic_of({}), f));
  // Another oracle means another hash.
  const Signature sig = base_sign(kp.sk, msg_of(99), f);
  EXPECT_FALSE(base_verify(kp.vk, msg_of(99), sig, rom(32, 2)));
}

TEST(Lamport, CapacityIsExhausted) {
  const OracleHandle f = rom(16, 3);
  SigKeyPair kp = base_gen(16, f, 1);
  for (std::uint32_t n = 0; n < kSigCapacity; ++n) base_sign(kp.sk, msg_of(static_cast<int>(n)), f);
  try {
    base_sign(kp.sk, msg_of(0), f);
    FAIL() << "signed past capacity";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCapacity);
  }
}

TEST(Lamport, KeysRoundTripAndNeedRestoring) {
  const OracleHandle f = rom(32, 4);
  SigKeyPair kp = base_gen(32, f, 5);
  base_sign(kp.sk, msg_of(1), f);
  EXPECT_EQ(VerifyKey::deserialize(kp.vk.serialize()), kp.vk);
  SigningKey sk = SigningKey::deserialize(kp.sk.serialize());
  EXPECT_TRUE(sk.same_material(kp.sk));
  EXPECT_EQ(sk.used, 1u);
  EXPECT_THROW(base_sign(sk, msg_of(2), f), Error);
  base_restore(sk, f);
  const Signature sig = base_sign(sk, msg_of(2), f);
  EXPECT_EQ(sig.leaf, 1u);
  EXPECT_TRUE(base_verify(kp.vk, msg_of(2), sig, f));
  EXPECT_EQ(Signature::deserialize(sig.serialize()), sig);
  const Signature m = Signature::magic_of(Bytes{1, 2, 3});
  EXPECT_EQ(Signature::deserialize(m.serialize()), m);
  EXPECT_THROW(Signature::deserialize(Bytes{9}), Error);
  EXPECT_THROW(VerifyKey::deserialize(Bytes{}), Error);
}

TEST(Lamport, GenerationIsDeterministic) {
  const OracleHandle f = rom(32, 6);
  EXPECT_EQ(base_gen(32, f, 9).vk, base_gen(32, f, 9).vk);
  EXPECT_NE(base_gen(32, f, 9).vk.root, base_gen(32, f, 10).vk.root);
}

TEST(Variant, ParseAndName) {
  for (Variant v : {Variant::kBase, Variant::kRelation, Variant::kUniversal, Variant::kCsproof}) {
    EXPECT_EQ(parse_variant(variant_name(v)), v);
  }
  EXPECT_THROW(parse_variant("rsa"), Error);
}

TEST(Scheme, EveryVariantIsCorrectUnderARandomOracle) {
  for (Variant v : {Variant::kBase, Variant::kRelation, Variant::kUniversal, Variant::kCsproof}) {
    const SignatureScheme s = make_scheme(v, EnsembleId{3});
    const OracleHandle o = rom(32, 11);
    SigKeyPair kp = s.gen(32, o, 3);
    for (int n = 0; n < 5; ++n) {
      EXPECT_FALSE(s.trigger(32, msg_of(n), o));
      const Signature sig = s.sign(kp.sk, msg_of(n), o);
      EXPECT_EQ(sig.kind, Signature::Kind::kBase);
      EXPECT_TRUE(s.verify(kp.vk, msg_of(n), sig, o)) << variant_name(v);
      EXPECT_FALSE(s.verify(kp.vk, msg_of(n + 10), sig, o)) << variant_name(v);
    }
  }
}

TEST(Scheme, BaseSchemeOnlyTouchesTheTriplePrimeView) {
  const SignatureScheme s = make_scheme(Variant::kBase, EnsembleId{3});
  const OracleHandle o = rom(32, 12);
  SigKeyPair kp = s.gen(32, o, 1);
  const Signature sig = s.sign(kp.sk, msg_of(0), o);
  const OracleHandle f = o.split().triple_prime;
  SigningKey direct = base_gen(32, f, 1).sk;
  EXPECT_EQ(sig, base_sign(direct, msg_of(0), f));
}

TEST(ProofMessage, RoundTrip) {
  CsProof pi;
  pi.steps = 3;
  pi.root[0] = 7;
  pi.openings.push_back({0, Bytes{1, 2}, {Digest{}}});
  const Bytes seed{9, 8, 7, 6};
  const Bytes msg = encode_proof_message(12, seed, pi);
  auto p = parse_proof_message(32, msg);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->x, encode_pair(12, seed));
  EXPECT_EQ(p->proof, pi);
  EXPECT_FALSE(parse_proof_message(40, msg));
  EXPECT_FALSE(parse_proof_message(32, Bytes(msg.begin(), msg.end() - 1)));
  EXPECT_FALSE(parse_proof_message(32, Bytes{}));
}

class Implemented : public ::testing::TestWithParam<Variant> {};

TEST_P(Implemented, KeyOnlyTriggerBreaksTheImplementation) {
  const Variant v = GetParam();
  for (EnsembleId id : {EnsembleId{1}, EnsembleId{3}, EnsembleId{4}}) {
    const ImplementedScheme inst = implement(make_scheme(v, id), id, 32, 5);
    EXPECT_EQ(inst.published().seed, draw_seed(32, 5));
    SigKeyPair kp = inst.gen(2);
    ASSERT_TRUE(kp.vk.published);
    EXPECT_EQ(*kp.vk.published, inst.published());
    const Forgery fg = key_only_forge(inst, kp.vk);
    EXPECT_TRUE(inst.verify(kp.vk, fg.msg, fg.sig)) << variant_name(v) << id.value;
    // Signing the trigger hands out the key and leaves the counter alone.
    const Signature magic = inst.sign(kp.sk, fg.msg);
    EXPECT_EQ(kp.sk.used, 0u);
    auto sk = recover_signing_key(magic);
    ASSERT_TRUE(sk);
    EXPECT_TRUE(sk->same_material(kp.sk));
    // Ordinary messages still go through the base scheme.
    const Signature sig = inst.sign(kp.sk, msg_of(1));
    EXPECT_EQ(sig.kind, Signature::Kind::kBase);
    EXPECT_TRUE(inst.verify(kp.vk, msg_of(1), sig));
  }
}

INSTANTIATE_TEST_SUITE_P(Variants, Implemented,
                         ::testing::Values(Variant::kRelation, Variant::kUniversal, Variant::kCsproof),
                         [](const auto& info) { return std::string(variant_name(info.param)); });

TEST(Implemented, BaseVariantHasNoTrigger) {
  const ImplementedScheme inst = implement(make_scheme(Variant::kBase, EnsembleId{3}), EnsembleId{3}, 32, 5);
  SigKeyPair kp = inst.gen(2);
  EXPECT_FALSE(inst.verify(kp.vk, inst.published().seed, Signature::magic_of({})));
}

TEST(Encryption, RoundTripUnderBothOracles) {
  const EncryptionScheme e(closed_registry());
  std::mt19937_64 rng(13);
  for (int n = 0; n < 30; ++n) {
    Bytes m(rng() % 40);
    for (auto& b : m) b = static_cast<std::uint8_t>(rng());
    {
      const OracleHandle o = rom(32, 100 + n);
      const CipherKey key = e.gen(32, n);
      const Ciphertext c = e.enc(key, m, o, n);
      EXPECT_EQ(c.tag, Ciphertext::Tag::kMasked);
      const Decryption d = e.dec_bytes(key, c.serialize(), o);
      EXPECT_EQ(d.kind, Decryption::Kind::kPlaintext);
      EXPECT_EQ(d.plaintext, m);
    }
    {
      const PublishedSeed p{EnsembleId{3}, draw_seed(32, n)};
      const OracleHandle o = implemented_oracle(closed_registry(), p);
      const CipherKey key = e.gen(32, n, p);
      EXPECT_EQ(CipherKey::deserialize(key.serialize()), key);
      const Ciphertext c = e.enc(key, m, o, n);
      EXPECT_EQ(Ciphertext::deserialize(c.serialize()), c);
      EXPECT_EQ(e.dec(key, c, o).plaintext, m);
    }
  }
}

TEST(Encryption, NoncesSeparateEqualPlaintexts) {
  const EncryptionScheme e(closed_registry());
  const OracleHandle o = rom(32, 1);
  const CipherKey key = e.gen(32, 1);
  const Bytes m(16, 0);
  EXPECT_NE(e.enc(key, m, o, 1).payload, e.enc(key, m, o, 2).payload);
  EXPECT_EQ(e.enc(key, m, o, 1), e.enc(key, m, o, 1));
}

TEST(Encryption, MalformedCiphertextsDecryptToBottom) {
  const EncryptionScheme e(closed_registry());
  const OracleHandle o = rom(32, 2);
  const CipherKey key = e.gen(32, 1);
  EXPECT_EQ(e.dec_bytes(key, Bytes{}, o).kind, Decryption::Kind::kBottom);
  EXPECT_EQ(e.dec_bytes(key, Bytes{0x09, 0, 0}, o).kind, Decryption::Kind::kBottom);
  Ciphertext c = e.enc(key, Bytes{1}, o, 1);
  c.nonce.pop_back();
  EXPECT_EQ(e.dec(key, c, o).kind, Decryption::Kind::kBottom);
  // A tag-3 ciphertext without a valid proof reveals nothing.
  const Decryption d = e.dec(key, Ciphertext{Ciphertext::Tag::kTrigger, {}, Bytes{1, 2, 3}}, o);
  EXPECT_NE(d.kind, Decryption::Kind::kKeyReveal);
  EXPECT_FALSE(d.key);
}

}  // namespace
}  // namespace romlab
