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

#ifndef ROMLAB_SCHEMES_HPP_
#define ROMLAB_SCHEMES_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "romlab/bits.hpp"
#include "romlab/csproof.hpp"
#include "romlab/ensembles.hpp"
#include "romlab/oracle.hpp"
#include "romlab/relations.hpp"

namespace romlab {

// Merkle tree over 2^8 Lamport one-time keys.
constexpr std::uint32_t kSigCapacity = 256;
constexpr std::size_t kTreeDepth = 8;

// The ensemble index and seed an implementation draws at setup and publishes.
struct PublishedSeed {
  EnsembleId id;
  Bytes seed;
  friend bool operator==(const PublishedSeed&, const PublishedSeed&) = default;
};

struct VerifyKey {
  std::uint64_t k = 0;
  std::uint32_t capacity = kSigCapacity;
  Digest root{};
  std::optional<PublishedSeed> published;

  Bytes serialize() const;
  static VerifyKey deserialize(ByteView bytes);
  friend bool operator==(const VerifyKey&, const VerifyKey&) = default;
};

struct SignerCache;

struct SigningKey {
  std::uint64_t k = 0;
  Bytes secret;  // expands to every Lamport preimage
  std::uint32_t used = 0;
  std::uint32_t capacity = kSigCapacity;
  std::optional<PublishedSeed> published;
  // Images and tree nodes recomputed from the secret; not serialized.
  std::shared_ptr<const SignerCache> cache;

  // Key material only: secret, counter, capacity and published seed.
  Bytes serialize() const;
  static SigningKey deserialize(ByteView bytes);
  bool same_material(const SigningKey& other) const;
};

struct SigKeyPair {
  SigningKey sk;
  VerifyKey vk;
};

struct Signature {
  enum class Kind : std::uint8_t { kBase = 1, kMagic = 2 };
  Kind kind = Kind::kBase;
  std::uint32_t leaf = 0;
  std::vector<Bytes> revealed;   // one preimage per digest bit
  std::vector<Bytes> co_images;  // image of the preimage left hidden
  std::vector<Digest> path;
  Bytes magic;

  static Signature magic_of(Bytes payload);
  Bytes serialize() const;
  static Signature deserialize(ByteView bytes);
  friend bool operator==(const Signature&, const Signature&) = default;
};

// Lamport digest length L = min(k, 256); tree nodes are L-bit hashes too,
// zero padded into a Digest.
std::uint64_t digest_bits(std::uint64_t k);

// The base scheme. f is the one-way function and hash, queried directly;
// callers pass the triple-prime view.
SigKeyPair base_gen(std::uint64_t k, const OracleHandle& f, std::uint64_t key_seed);
// Recomputes sk.cache; needed after deserialize.
void base_restore(SigningKey& sk, const OracleHandle& f);
// Throws kCapacity once every leaf is used and kState when the cache is
// missing.
Signature base_sign(SigningKey& sk, ByteView msg, const OracleHandle& f);
bool base_verify(const VerifyKey& vk, ByteView msg, const Signature& sig,
                 const OracleHandle& f);

enum class Variant { kBase, kRelation, kUniversal, kCsproof };
const char* variant_name(Variant v);
// base, relation, universal, csproof. Throws kConfig.
Variant parse_variant(std::string_view name);

// <i, s, pi>: varint(i) || s (ceil(k/8) bytes) || u32 |pi| || pi.
Bytes encode_proof_message(std::uint64_t i, ByteView seed, const CsProof& pi);
struct ProofMessage {
  Bytes x;  // <i, s>
  CsProof proof;
};
std::optional<ProofMessage> parse_proof_message(std::uint64_t k, ByteView msg);

// True when msg parses as <i, s, pi> and the bumped verifier at parameter
// n + k, n = 8|x| + |y|, accepts pi for (M_U, (x, y), t_bound(n)) with
// y = O'(x), hashing through O''.
bool csproof_trigger(const Registry& reg, std::uint64_t k, ByteView msg,
                     const OracleHandle::Split& views);

// A signature scheme whose algorithms run against one raw oracle, split
// into three views: the trigger reads O' (and O'' for proofs), the base
// scheme only O'''.
class SignatureScheme {
 public:
  SignatureScheme(Variant variant, RegistryPtr registry, std::optional<Relation> relation = {});

  Variant variant() const { return variant_; }
  const RegistryPtr& registry() const { return registry_; }
  const std::optional<Relation>& relation() const { return relation_; }

  SigKeyPair gen(std::uint64_t k, const OracleHandle& oracle, std::uint64_t key_seed,
                 const std::optional<PublishedSeed>& published = {}) const;
  // On a trigger message returns a magic signature carrying sk and msg and
  // leaves the signer state alone.
  Signature sign(SigningKey& sk, ByteView msg, const OracleHandle& oracle) const;
  bool verify(const VerifyKey& vk, ByteView msg, const Signature& sig,
              const OracleHandle& oracle) const;
  bool trigger(std::uint64_t k, ByteView msg, const OracleHandle& oracle) const;

 private:
  bool trigger_on(std::uint64_t k, ByteView msg, const OracleHandle::Split& views) const;

  Variant variant_;
  RegistryPtr registry_;
  std::optional<Relation> relation_;
};

// Magic signature payload: u32 |sk| || sk || msg.
std::optional<SigningKey> recover_signing_key(const Signature& sig);

// f_s for a published seed.
OracleHandle implemented_oracle(RegistryPtr registry, const PublishedSeed& published);

// Draws s of ceil(k/8) bytes from master_seed and binds the scheme to f_s.
// Verification re-derives the oracle from the seed inside the key.
class ImplementedScheme {
 public:
  ImplementedScheme(SignatureScheme scheme, EnsembleId id, std::uint64_t k,
                    std::uint64_t master_seed);

  const SignatureScheme& scheme() const { return scheme_; }
  const PublishedSeed& published() const { return published_; }
  std::uint64_t k() const { return k_; }
  // Fresh handle to f_s each call, so callers can count queries.
  OracleHandle oracle() const;

  SigKeyPair gen(std::uint64_t key_seed) const;
  Signature sign(SigningKey& sk, ByteView msg) const;
  bool verify(const VerifyKey& vk, ByteView msg, const Signature& sig) const;

 private:
  SignatureScheme scheme_;
  std::uint64_t k_;
  PublishedSeed published_;
};

ImplementedScheme implement(const SignatureScheme& scheme, EnsembleId id, std::uint64_t k,
                            std::uint64_t master_seed);
// The seed implement() would draw.
Bytes draw_seed(std::uint64_t k, std::uint64_t master_seed);

struct CipherKey {
  std::uint64_t k = 0;
  Bytes secret;
  std::optional<PublishedSeed> published;

  Bytes serialize() const;
  static CipherKey deserialize(ByteView bytes);
  friend bool operator==(const CipherKey&, const CipherKey&) = default;
};

struct Ciphertext {
  enum class Tag : std::uint8_t { kClear = 1, kMasked = 2, kTrigger = 3 };
  Tag tag = Tag::kMasked;
  Bytes nonce;
  Bytes payload;

  Bytes serialize() const;
  static Ciphertext deserialize(ByteView bytes);
  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

struct Decryption {
  enum class Kind { kPlaintext, kKeyReveal, kBottom };
  Kind kind = Kind::kBottom;
  Bytes plaintext;
  std::optional<CipherKey> key;
};

// Shared-key encryption with the proof trigger: trigger plaintexts are sent
// in the clear and a tag-3 ciphertext carrying a trigger message reveals
// the key.
class EncryptionScheme {
 public:
  explicit EncryptionScheme(RegistryPtr registry);
  const RegistryPtr& registry() const { return registry_; }

  CipherKey gen(std::uint64_t k, std::uint64_t key_seed,
                const std::optional<PublishedSeed>& published = {}) const;
  Ciphertext enc(const CipherKey& key, ByteView msg, const OracleHandle& oracle,
                 std::uint64_t nonce_seed) const;
  Decryption dec(const CipherKey& key, const Ciphertext& c, const OracleHandle& oracle) const;
  Decryption dec_bytes(const CipherKey& key, ByteView c, const OracleHandle& oracle) const;

 private:
  RegistryPtr registry_;
};

}  // namespace romlab

#endif  // ROMLAB_SCHEMES_HPP_
