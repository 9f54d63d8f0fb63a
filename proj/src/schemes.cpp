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

#define OPENSSL_SUPPRESS_DEPRECATED
#include "romlab/schemes.hpp"

#include <openssl/sha.h>

#include <algorithm>
#include <cstring>
#include <utility>

#include "romlab/coding.hpp"
#include "romlab/error.hpp"
#include "romlab/universal.hpp"

namespace romlab {

// Images are stored flat: leaf-major, then digest bit, then the bit value.
struct SignerCache {
  std::size_t image_bytes = 0;
  Bytes images;
  std::vector<std::vector<Digest>> levels;  // levels[0] leaves .. levels[8] root
};

namespace {

constexpr std::uint8_t kFormatVersion = 1;
constexpr std::uint8_t kImageTag = 0x50, kLeafTag = 0x4B, kNodeTag = 0x4E, kDigestTag = 0x4D,
                       kStreamTag = 0x53;
constexpr std::size_t kSecretBytes = 32;
constexpr std::size_t kNonceBytes = 16;

Bytes seeded_bytes(std::uint64_t seed, std::uint64_t stream, std::size_t n) {
  Bytes out(n);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = static_cast<std::uint8_t>(derive_seed(seed, stream, j / 8) >> (8 * (j % 8)));
  }
  return out;
}

std::size_t preimage_bytes(std::uint64_t k) { return static_cast<std::size_t>((k + 7) / 8); }

// All 2L preimages of one leaf, concatenated, from SHA-256 in counter mode.
Bytes expand_preimages(ByteView secret, std::uint32_t leaf, std::size_t total) {
  // The one-shot SHA256() call is several times slower than a reused context.
  Bytes out(total + SHA256_DIGEST_LENGTH);
  SHA256_CTX base;
  SHA256_Init(&base);
  const std::uint8_t tag = kImageTag;
  SHA256_Update(&base, &tag, 1);
  SHA256_Update(&base, secret.data(), secret.size());
  std::uint8_t tail[8];
  for (int i = 0; i < 4; ++i) tail[i] = static_cast<std::uint8_t>(leaf >> (24 - 8 * i));
  for (std::uint32_t ctr = 0, off = 0; off < total; ++ctr, off += SHA256_DIGEST_LENGTH) {
    for (int i = 0; i < 4; ++i) tail[4 + i] = static_cast<std::uint8_t>(ctr >> (24 - 8 * i));
    SHA256_CTX ctx = base;
    SHA256_Update(&ctx, tail, sizeof tail);
    SHA256_Final(out.data() + off, &ctx);
  }
  out.resize(total);
  return out;
}

Digest to_digest(const Bits& b) {
  Digest d{};
  std::memcpy(d.data(), b.bytes().data(), std::min(d.size(), b.bytes().size()));
  return d;
}

Bits image_of(const OracleHandle& f, ByteView pre, Bytes& q) {
  q.assign(1, kImageTag);
  q.insert(q.end(), pre.begin(), pre.end());
  return f.query(q);
}

Digest leaf_digest(const OracleHandle& hash, std::uint32_t leaf, ByteView images) {
  Bytes q;
  q.reserve(images.size() + 5);
  q.push_back(kLeafTag);
  put_u32(q, leaf);
  q.insert(q.end(), images.begin(), images.end());
  return to_digest(hash.query(q));
}

Digest node_digest(const OracleHandle& hash, const Digest& l, const Digest& r) {
  Bytes q;
  q.reserve(65);
  q.push_back(kNodeTag);
  q.insert(q.end(), l.begin(), l.end());
  q.insert(q.end(), r.begin(), r.end());
  return to_digest(hash.query(q));
}

Bits message_digest(const OracleHandle& f, std::uint64_t k, const Digest& root,
                    std::uint32_t leaf, ByteView msg) {
  Bytes q;
  q.reserve(msg.size() + 37);
  q.push_back(kDigestTag);
  q.insert(q.end(), root.begin(), root.end());
  put_u32(q, leaf);
  q.insert(q.end(), msg.begin(), msg.end());
  return f.resized(digest_bits(k)).query(q);
}

void put_blob(Bytes& out, ByteView b) {
  put_u32(out, static_cast<std::uint32_t>(b.size()));
  out.insert(out.end(), b.begin(), b.end());
}

Bytes get_blob(Reader& r) { return r.bytes(r.u32()); }

void put_published(Bytes& out, const std::optional<PublishedSeed>& p) {
  out.push_back(p ? 1 : 0);
  if (!p) return;
  put_u64(out, p->id.value);
  put_blob(out, p->seed);
}

std::optional<PublishedSeed> get_published(Reader& r) {
  const std::uint8_t flag = r.u8();
  if (flag > 1) fail(ErrorCode::kMalformed, "bad seed flag");
  if (flag == 0) return std::nullopt;
  PublishedSeed p;
  p.id.value = r.u64();
  p.seed = get_blob(r);
  return p;
}

void expect_header(Reader& r, std::uint8_t tag, const char* what) {
  if (r.u8() != kFormatVersion) fail(ErrorCode::kMalformed, std::string(what) + ": unknown version");
  if (r.u8() != tag) fail(ErrorCode::kMalformed, std::string(what) + ": wrong record tag");
}

void expect_done(const Reader& r, const char* what) {
  if (!r.done()) fail(ErrorCode::kMalformed, std::string(what) + ": trailing bytes");
}

}  // namespace

std::uint64_t digest_bits(std::uint64_t k) { return std::min<std::uint64_t>(k, 256); }

Bytes VerifyKey::serialize() const {
  Bytes out{kFormatVersion, 'V'};
  put_u64(out, k);
  put_u32(out, capacity);
  out.insert(out.end(), root.begin(), root.end());
  put_published(out, published);
  return out;
}

VerifyKey VerifyKey::deserialize(ByteView bytes) {
  Reader r(bytes);
  expect_header(r, 'V', "verify key");
  VerifyKey vk;
  vk.k = r.u64();
  vk.capacity = r.u32();
  ByteView root = r.take(32);
  std::copy(root.begin(), root.end(), vk.root.begin());
  vk.published = get_published(r);
  expect_done(r, "verify key");
  return vk;
}

Bytes SigningKey::serialize() const {
  Bytes out{kFormatVersion, 'S'};
  put_u64(out, k);
  put_u32(out, used);
  put_u32(out, capacity);
  put_blob(out, secret);
  put_published(out, published);
  return out;
}

SigningKey SigningKey::deserialize(ByteView bytes) {
  Reader r(bytes);
  expect_header(r, 'S', "signing key");
  SigningKey sk;
  sk.k = r.u64();
  sk.used = r.u32();
  sk.capacity = r.u32();
  sk.secret = get_blob(r);
  sk.published = get_published(r);
  expect_done(r, "signing key");
  if (sk.used > sk.capacity || sk.capacity != kSigCapacity) {
    fail(ErrorCode::kMalformed, "signing key: bad counter or capacity");
  }
  return sk;
}

bool SigningKey::same_material(const SigningKey& o) const {
  return k == o.k && secret == o.secret && used == o.used && capacity == o.capacity &&
         published == o.published;
}

Signature Signature::magic_of(Bytes payload) {
  Signature s;
  s.kind = Kind::kMagic;
  s.magic = std::move(payload);
  return s;
}

Bytes Signature::serialize() const {
  Bytes out{kFormatVersion, static_cast<std::uint8_t>(kind)};
  if (kind == Kind::kMagic) {
    put_blob(out, magic);
    return out;
  }
  put_u32(out, leaf);
  put_u32(out, static_cast<std::uint32_t>(revealed.size()));
  for (const Bytes& b : revealed) put_blob(out, b);
  put_u32(out, static_cast<std::uint32_t>(co_images.size()));
  for (const Bytes& b : co_images) put_blob(out, b);
  put_u16(out, static_cast<std::uint16_t>(path.size()));
  for (const Digest& d : path) out.insert(out.end(), d.begin(), d.end());
  return out;
}

Signature Signature::deserialize(ByteView bytes) {
  Reader r(bytes);
  if (r.u8() != kFormatVersion) fail(ErrorCode::kMalformed, "signature: unknown version");
  Signature s;
  const std::uint8_t kind = r.u8();
  if (kind == static_cast<std::uint8_t>(Kind::kMagic)) {
    s.kind = Kind::kMagic;
    s.magic = get_blob(r);
  } else if (kind == static_cast<std::uint8_t>(Kind::kBase)) {
    s.leaf = r.u32();
    const std::uint32_t nr = r.u32();
    if (nr > 256) fail(ErrorCode::kMalformed, "signature: too many preimages");
    for (std::uint32_t j = 0; j < nr; ++j) s.revealed.push_back(get_blob(r));
    const std::uint32_t nc = r.u32();
    if (nc > 256) fail(ErrorCode::kMalformed, "signature: too many images");
    for (std::uint32_t j = 0; j < nc; ++j) s.co_images.push_back(get_blob(r));
    const std::uint16_t np = r.u16();
    for (std::uint16_t j = 0; j < np; ++j) {
      ByteView d = r.take(32);
      Digest dd;
      std::copy(d.begin(), d.end(), dd.begin());
      s.path.push_back(dd);
    }
  } else {
    fail(ErrorCode::kMalformed, "signature: unknown kind");
  }
  expect_done(r, "signature");
  return s;
}

SigKeyPair base_gen(std::uint64_t k, const OracleHandle& f, std::uint64_t key_seed) {
  if (k == 0) fail(ErrorCode::kInvalidArgument, "base_gen needs k >= 1");
  SigKeyPair kp;
  kp.sk.k = k;
  kp.sk.secret = seeded_bytes(key_seed, 0x53, kSecretBytes);
  base_restore(kp.sk, f);
  kp.vk.k = k;
  kp.vk.capacity = kp.sk.capacity;
  kp.vk.root = kp.sk.cache->levels.back().front();
  return kp;
}

void base_restore(SigningKey& sk, const OracleHandle& f) {
  const std::uint64_t L = digest_bits(sk.k);
  const std::size_t nb = preimage_bytes(sk.k);
  auto cache = std::make_shared<SignerCache>();
  cache->image_bytes = static_cast<std::size_t>((f.out_bits() + 7) / 8);
  const std::size_t per_leaf = 2 * L * cache->image_bytes;
  cache->images.reserve(per_leaf * sk.capacity);
  const OracleHandle hash = f.resized(digest_bits(sk.k));
  std::vector<Digest> leaves;
  Bytes q;
  for (std::uint32_t leaf = 0; leaf < sk.capacity; ++leaf) {
    const Bytes pre = expand_preimages(sk.secret, leaf, 2 * L * nb);
    const std::size_t start = cache->images.size();
    for (std::size_t j = 0; j < 2 * L; ++j) {
      const Bits img = image_of(f, ByteView(pre).subspan(j * nb, nb), q);
      cache->images.insert(cache->images.end(), img.bytes().begin(), img.bytes().end());
    }
    leaves.push_back(leaf_digest(hash, leaf, ByteView(cache->images).subspan(start, per_leaf)));
  }
  cache->levels.push_back(std::move(leaves));
  while (cache->levels.back().size() > 1) {
    const auto& below = cache->levels.back();
    std::vector<Digest> up;
    for (std::size_t i = 0; i + 1 < below.size(); i += 2) {
      up.push_back(node_digest(hash, below[i], below[i + 1]));
    }
    cache->levels.push_back(std::move(up));
  }
  sk.cache = std::move(cache);
}

Signature base_sign(SigningKey& sk, ByteView msg, const OracleHandle& f) {
  if (!sk.cache) fail(ErrorCode::kState, "signing key has no cache; call base_restore");
  if (sk.used >= sk.capacity) fail(ErrorCode::kCapacity, "signer capacity exhausted");
  const SignerCache& c = *sk.cache;
  const std::uint32_t leaf = sk.used++;
  const std::uint64_t L = digest_bits(sk.k);
  const std::size_t nb = preimage_bytes(sk.k);
  const Bits d = message_digest(f, sk.k, c.levels.back().front(), leaf, msg);
  const Bytes pre = expand_preimages(sk.secret, leaf, 2 * L * nb);

  Signature s;
  s.leaf = leaf;
  for (std::uint64_t j = 0; j < L; ++j) {
    const std::size_t b = d.bit(j) ? 1 : 0;
    const std::size_t shown = 2 * j + b, hidden = 2 * j + (1 - b);
    s.revealed.emplace_back(pre.begin() + shown * nb, pre.begin() + (shown + 1) * nb);
    const auto img = c.images.begin() + (leaf * 2 * L + hidden) * c.image_bytes;
    s.co_images.emplace_back(img, img + c.image_bytes);
  }
  std::size_t idx = leaf;
  for (std::size_t lv = 0; lv + 1 < c.levels.size(); ++lv, idx >>= 1) {
    s.path.push_back(c.levels[lv][idx ^ 1]);
  }
  return s;
}

bool base_verify(const VerifyKey& vk, ByteView msg, const Signature& sig, const OracleHandle& f) {
  const std::uint64_t L = digest_bits(vk.k);
  const std::size_t nb = preimage_bytes(vk.k);
  const std::size_t w = static_cast<std::size_t>((f.out_bits() + 7) / 8);
  if (sig.kind != Signature::Kind::kBase || sig.leaf >= vk.capacity ||
      sig.revealed.size() != L || sig.co_images.size() != L || sig.path.size() != kTreeDepth) {
    return false;
  }
  const Bits d = message_digest(f, vk.k, vk.root, sig.leaf, msg);
  Bytes images(2 * L * w);
  Bytes q;
  for (std::uint64_t j = 0; j < L; ++j) {
    if (sig.revealed[j].size() != nb || sig.co_images[j].size() != w) return false;
    const std::size_t b = d.bit(j) ? 1 : 0;
    const Bits img = image_of(f, sig.revealed[j], q);
    std::copy(img.bytes().begin(), img.bytes().end(), images.begin() + (2 * j + b) * w);
    std::copy(sig.co_images[j].begin(), sig.co_images[j].end(),
              images.begin() + (2 * j + 1 - b) * w);
  }
  const OracleHandle hash = f.resized(digest_bits(vk.k));
  Digest cur = leaf_digest(hash, sig.leaf, images);
  std::size_t idx = sig.leaf;
  for (const Digest& sib : sig.path) {
    cur = (idx & 1) ? node_digest(hash, sib, cur) : node_digest(hash, cur, sib);
    idx >>= 1;
  }
  return cur == vk.root;
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::kBase:
      return "base";
    case Variant::kRelation:
      return "relation";
    case Variant::kUniversal:
      return "universal";
    case Variant::kCsproof:
      return "csproof";
  }
  return "?";
}

Variant parse_variant(std::string_view name) {
  for (Variant v : {Variant::kBase, Variant::kRelation, Variant::kUniversal, Variant::kCsproof}) {
    if (name == variant_name(v)) return v;
  }
  fail(ErrorCode::kConfig, "unknown scheme: " + std::string(name));
}

Bytes encode_proof_message(std::uint64_t i, ByteView seed, const CsProof& pi) {
  Bytes out = encode_pair(i, seed);
  put_blob(out, pi.serialize());
  return out;
}

std::optional<ProofMessage> parse_proof_message(std::uint64_t k, ByteView msg) {
  const auto v = get_varint(msg);
  if (!v) return std::nullopt;
  const std::size_t xlen = v->second + preimage_bytes(k);
  if (msg.size() < xlen + 4) return std::nullopt;
  const std::uint32_t plen = load_u32(msg.data() + xlen);
  if (msg.size() - xlen - 4 != plen) return std::nullopt;
  try {
    ProofMessage pm;
    pm.x.assign(msg.begin(), msg.begin() + static_cast<std::ptrdiff_t>(xlen));
    pm.proof = CsProof::deserialize(msg.subspan(xlen + 4));
    return pm;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kMalformed) throw;
    return std::nullopt;
  }
}

bool csproof_trigger(const Registry& reg, std::uint64_t k, ByteView msg,
                     const OracleHandle::Split& views) {
  const auto pm = parse_proof_message(k, msg);
  if (!pm) return false;
  const Bits y = views.prime.query(pm->x);
  const Statement w = universal_statement(reg, pm->x, y);
  return verify_bumped(statement_bits(pm->x, y) + k, w, pm->proof, views.double_prime);
}

SignatureScheme::SignatureScheme(Variant variant, RegistryPtr registry,
                                 std::optional<Relation> relation)
    : variant_(variant), registry_(std::move(registry)), relation_(std::move(relation)) {
  if (!registry_ || !registry_->finalized()) {
    fail(ErrorCode::kInvalidArgument, "scheme needs a finalized registry");
  }
  if (variant_ == Variant::kRelation && !relation_) {
    fail(ErrorCode::kInvalidArgument, "relation scheme needs a relation");
  }
  if (variant_ == Variant::kUniversal) relation_ = ru(registry_);
}

bool SignatureScheme::trigger_on(std::uint64_t k, ByteView msg,
                                 const OracleHandle::Split& views) const {
  try {
    switch (variant_) {
      case Variant::kBase:
        return false;
      case Variant::kRelation:
      case Variant::kUniversal:
        return relation_->contains(msg, views.prime.query(msg));
      case Variant::kCsproof:
        return csproof_trigger(*registry_, k, msg, views);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kBudget) throw;
  }
  return false;
}

bool SignatureScheme::trigger(std::uint64_t k, ByteView msg, const OracleHandle& oracle) const {
  return trigger_on(k, msg, oracle.split());
}

SigKeyPair SignatureScheme::gen(std::uint64_t k, const OracleHandle& oracle,
                                std::uint64_t key_seed,
                                const std::optional<PublishedSeed>& published) const {
  SigKeyPair kp = base_gen(k, oracle.split().triple_prime, key_seed);
  kp.sk.published = published;
  kp.vk.published = published;
  return kp;
}

Signature SignatureScheme::sign(SigningKey& sk, ByteView msg, const OracleHandle& oracle) const {
  const auto views = oracle.split();
  if (trigger_on(sk.k, msg, views)) {
    Bytes payload;
    put_blob(payload, sk.serialize());
    payload.insert(payload.end(), msg.begin(), msg.end());
    return Signature::magic_of(std::move(payload));
  }
  return base_sign(sk, msg, views.triple_prime);
}

bool SignatureScheme::verify(const VerifyKey& vk, ByteView msg, const Signature& sig,
                             const OracleHandle& oracle) const {
  const auto views = oracle.split();
  if (trigger_on(vk.k, msg, views)) return true;
  return base_verify(vk, msg, sig, views.triple_prime);
}

std::optional<SigningKey> recover_signing_key(const Signature& sig) {
  if (sig.kind != Signature::Kind::kMagic) return std::nullopt;
  try {
    Reader r(sig.magic);
    return SigningKey::deserialize(get_blob(r));
  } catch (const Error&) {
    return std::nullopt;
  }
}

OracleHandle implemented_oracle(RegistryPtr registry, const PublishedSeed& published) {
  if (!registry->contains(published.id)) {
    fail(ErrorCode::kInvalidArgument, "unknown ensemble " + std::to_string(published.id.value));
  }
  return ensemble_oracle(std::move(registry), published.id, published.seed);
}

Bytes draw_seed(std::uint64_t k, std::uint64_t master_seed) {
  return seeded_bytes(master_seed, 0x5EED, preimage_bytes(k));
}

ImplementedScheme::ImplementedScheme(SignatureScheme scheme, EnsembleId id, std::uint64_t k,
                                     std::uint64_t master_seed)
    : scheme_(std::move(scheme)), k_(k) {
  if (k == 0 || k % 8 != 0) fail(ErrorCode::kInvalidArgument, "implemented k must be a multiple of 8");
  if (!scheme_.registry()->contains(id)) {
    fail(ErrorCode::kInvalidArgument, "unknown ensemble " + std::to_string(id.value));
  }
  published_ = PublishedSeed{id, draw_seed(k, master_seed)};
}

OracleHandle ImplementedScheme::oracle() const {
  return implemented_oracle(scheme_.registry(), published_);
}

SigKeyPair ImplementedScheme::gen(std::uint64_t key_seed) const {
  return scheme_.gen(k_, oracle(), key_seed, published_);
}

Signature ImplementedScheme::sign(SigningKey& sk, ByteView msg) const {
  if (!sk.published) fail(ErrorCode::kState, "signing key carries no seed");
  return scheme_.sign(sk, msg, implemented_oracle(scheme_.registry(), *sk.published));
}

bool ImplementedScheme::verify(const VerifyKey& vk, ByteView msg, const Signature& sig) const {
  if (!vk.published || !scheme_.registry()->contains(vk.published->id)) return false;
  return scheme_.verify(vk, msg, sig, implemented_oracle(scheme_.registry(), *vk.published));
}

ImplementedScheme implement(const SignatureScheme& scheme, EnsembleId id, std::uint64_t k,
                            std::uint64_t master_seed) {
  return ImplementedScheme(scheme, id, k, master_seed);
}

Bytes CipherKey::serialize() const {
  Bytes out{kFormatVersion, 'K'};
  put_u64(out, k);
  put_blob(out, secret);
  put_published(out, published);
  return out;
}

CipherKey CipherKey::deserialize(ByteView bytes) {
  Reader r(bytes);
  expect_header(r, 'K', "cipher key");
  CipherKey key;
  key.k = r.u64();
  key.secret = get_blob(r);
  key.published = get_published(r);
  expect_done(r, "cipher key");
  return key;
}

Bytes Ciphertext::serialize() const {
  Bytes out{kFormatVersion, static_cast<std::uint8_t>(tag)};
  put_blob(out, nonce);
  put_blob(out, payload);
  return out;
}

Ciphertext Ciphertext::deserialize(ByteView bytes) {
  Reader r(bytes);
  if (r.u8() != kFormatVersion) fail(ErrorCode::kMalformed, "ciphertext: unknown version");
  const std::uint8_t tag = r.u8();
  if (tag < 1 || tag > 3) fail(ErrorCode::kMalformed, "ciphertext: unknown tag");
  Ciphertext c;
  c.tag = static_cast<Tag>(tag);
  c.nonce = get_blob(r);
  c.payload = get_blob(r);
  expect_done(r, "ciphertext");
  return c;
}

EncryptionScheme::EncryptionScheme(RegistryPtr registry) : registry_(std::move(registry)) {
  if (!registry_ || !registry_->finalized()) {
    fail(ErrorCode::kInvalidArgument, "encryption needs a finalized registry");
  }
}

CipherKey EncryptionScheme::gen(std::uint64_t k, std::uint64_t key_seed,
                                const std::optional<PublishedSeed>& published) const {
  if (k == 0) fail(ErrorCode::kInvalidArgument, "enc_gen needs k >= 1");
  return CipherKey{k, seeded_bytes(key_seed, 0x4B, kSecretBytes), published};
}

namespace {

Bytes masked(const CipherKey& key, ByteView nonce, ByteView msg, const OracleHandle& f) {
  const OracleHandle pad = f.resized(256);
  Bytes out(msg.begin(), msg.end());
  Bytes q{kStreamTag};
  q.insert(q.end(), key.secret.begin(), key.secret.end());
  q.insert(q.end(), nonce.begin(), nonce.end());
  const std::size_t head = q.size();
  for (std::size_t off = 0, j = 0; off < out.size(); off += 32, ++j) {
    q.resize(head);
    put_u32(q, static_cast<std::uint32_t>(j));
    const Bits block = pad.query(q);
    for (std::size_t b = 0; b < 32 && off + b < out.size(); ++b) out[off + b] ^= block.bytes()[b];
  }
  return out;
}

}  // namespace

Ciphertext EncryptionScheme::enc(const CipherKey& key, ByteView msg, const OracleHandle& oracle,
                                 std::uint64_t nonce_seed) const {
  const auto views = oracle.split();
  bool fires = false;
  try {
    fires = csproof_trigger(*registry_, key.k, msg, views);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kBudget) throw;
  }
  if (fires) return Ciphertext{Ciphertext::Tag::kClear, {}, Bytes(msg.begin(), msg.end())};
  Ciphertext c;
  c.tag = Ciphertext::Tag::kMasked;
  c.nonce = seeded_bytes(nonce_seed, 0x4E, kNonceBytes);
  c.payload = masked(key, c.nonce, msg, views.triple_prime);
  return c;
}

Decryption EncryptionScheme::dec(const CipherKey& key, const Ciphertext& c,
                                 const OracleHandle& oracle) const {
  Decryption out;
  switch (c.tag) {
    case Ciphertext::Tag::kClear:
      out.kind = Decryption::Kind::kPlaintext;
      out.plaintext = c.payload;
      return out;
    case Ciphertext::Tag::kMasked:
      if (c.nonce.size() != kNonceBytes) return out;
      out.kind = Decryption::Kind::kPlaintext;
      out.plaintext = masked(key, c.nonce, c.payload, oracle.split().triple_prime);
      return out;
    case Ciphertext::Tag::kTrigger: {
      bool fires = false;
      try {
        fires = csproof_trigger(*registry_, key.k, c.payload, oracle.split());
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kBudget) throw;
      }
      if (fires) {
        out.kind = Decryption::Kind::kKeyReveal;
        out.key = key;
      }
      return out;
    }
  }
  return out;
}

Decryption EncryptionScheme::dec_bytes(const CipherKey& key, ByteView c,
                                       const OracleHandle& oracle) const {
  Ciphertext parsed;
  try {
    parsed = Ciphertext::deserialize(c);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kMalformed) throw;
    return Decryption{};
  }
  return dec(key, parsed, oracle);
}

}  // namespace romlab
