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

#include <string>

#include "romlab/attacks.hpp"
#include "romlab/coding.hpp"
#include "romlab/error.hpp"
#include "romlab/universal.hpp"

namespace romlab {

Claim identity_attack(const Registry& reg, EnsembleId i, ByteView seed) {
  return Claim{Bytes(seed.begin(), seed.end()), reg.eval(i, seed, seed)};
}

Claim prefix_attack(const Registry& reg, EnsembleId i, const LengthFunction& in_len,
                    ByteView seed) {
  const std::uint64_t lin = in_len(8 * seed.size());
  if (lin % 8 != 0 || lin > 8 * seed.size()) {
    fail(ErrorCode::kConfig, "prefix attack needs a byte-aligned l_in(k) <= k");
  }
  Bytes x(seed.begin(), seed.begin() + static_cast<std::ptrdiff_t>(lin / 8));
  Bits y = reg.eval(i, seed, x);
  return Claim{std::move(x), std::move(y)};
}

Claim product_attack(const Registry& reg, EnsembleId product, std::uint64_t m, ByteView seed) {
  if (m == 0 || seed.empty() || seed.size() % m != 0) {
    fail(ErrorCode::kConfig, "product seed is not m equal blocks");
  }
  Bytes x(seed.begin(), seed.begin() + static_cast<std::ptrdiff_t>(seed.size() / m));
  Bits y = reg.eval(product, seed, x);
  return Claim{std::move(x), std::move(y)};
}

TupleClaim multi_attack(const Registry& reg, EnsembleId i, ByteView seed, bool padded) {
  const std::uint64_t k = 8 * seed.size();
  const Bits s = Bits::from_bytes(seed);
  TupleClaim c;
  for (std::uint64_t j = 1; j <= (padded ? 2 * k : k); ++j) {
    c.xs.push_back(multi_input(j, j <= k && s.bit(j - 1)));
    c.ys.push_back(reg.eval(i, seed, c.xs.back()));
  }
  return c;
}

EnsembleId prime_index(const Registry& reg, EnsembleId i) {
  if (!reg.contains(i)) fail(ErrorCode::kConfig, "unknown ensemble " + std::to_string(i.value));
  auto p = prime_view_of(reg, i);
  if (!p) fail(ErrorCode::kConfig, "prime view of " + reg.spec(i).name + " is not registered");
  return *p;
}

Bytes csproof_forge_against(const Registry& reg, EnsembleId ip, ByteView seed, std::uint64_t k,
                 const OracleHandle& oracle) {
  const auto views = oracle.split();
  const Bytes x = encode_pair(ip.value, seed);
  const Bits y = views.prime.query(x);
  const Statement w = universal_statement(reg, x, y);
  const CsProof pi = prove_bumped(statement_bits(x, y) + k, w, views.double_prime);
  return encode_proof_message(ip.value, seed, pi);
}

Bytes csproof_forge(RegistryPtr reg, EnsembleId i, ByteView seed, std::uint64_t k) {
  const EnsembleId ip = prime_index(*reg, i);
  const OracleHandle f = ensemble_oracle(reg, i, Bytes(seed.begin(), seed.end()));
  return csproof_forge_against(*reg, ip, seed, k, f);
}

TupleClaim transcript_attack(RegistryPtr reg, EnsembleId i, ByteView seed) {
  const OracleHandle f = ensemble_oracle(reg, i, Bytes(seed.begin(), seed.end()));
  TupleClaim c;
  c.xs.push_back(encode_pair(i.value, seed));
  c.ys.push_back(f.query(c.xs[0]));
  const Statement w = universal_statement(*reg, c.xs[0], c.ys[0]);
  const std::uint64_t k = statement_bits(c.xs[0], c.ys[0]) + c.ys[0].size();
  const CsProof pi = prove_bumped(k, w, f);
  LoggedVerdict v = verify_logged(k, w, pi, f);
  if (!v.accept) fail(ErrorCode::kInternal, "honest proof rejected");
  c.xs.push_back(pi.serialize());
  c.ys.push_back(f.query(c.xs[1]));
  for (auto& [q, a] : v.log) {
    c.xs.push_back(std::move(q));
    c.ys.push_back(std::move(a));
  }
  return c;
}

Bytes key_only_message(const SignatureScheme& scheme, EnsembleId i, ByteView seed,
                       std::uint64_t k) {
  switch (scheme.variant()) {
    case Variant::kRelation:
      return Bytes(seed.begin(), seed.end());
    case Variant::kUniversal:
      return encode_pair(prime_index(*scheme.registry(), i).value, seed);
    case Variant::kCsproof:
      return csproof_forge(scheme.registry(), i, seed, k);
    case Variant::kBase:
      break;
  }
  fail(ErrorCode::kConfig, "the base scheme has no trigger message");
}

Forgery key_only_forge(const ImplementedScheme& inst, const VerifyKey& vk) {
  if (!vk.published) fail(ErrorCode::kConfig, "verification key publishes no seed");
  return Forgery{key_only_message(inst.scheme(), vk.published->id, vk.published->seed, vk.k),
                 Signature::magic_of({})};
}

Relation bound_relation(RegistryPtr reg, EnsembleId i) {
  const EnsembleId ip = prime_index(*reg, i);
  return rf(std::move(reg), ip);
}

SignatureScheme make_scheme(Variant v, EnsembleId i) {
  RegistryPtr reg = closed_registry();
  if (v == Variant::kRelation) return SignatureScheme(v, reg, bound_relation(reg, i));
  return SignatureScheme(v, reg);
}

std::string AdversaryId::name() const {
  switch (kind) {
    case Kind::kIdentity:
      return "identity";
    case Kind::kKeyOnly:
      return "keyonly";
    case Kind::kCsForge:
      return "csforge";
    case Kind::kProduct:
      return "product";
    case Kind::kMulti:
      return "multi";
    case Kind::kMagicPt:
      return "magic-pt";
    case Kind::kCcaReveal:
      return "cca-reveal";
    case Kind::kRandomForger:
      return "random-forger:" + std::to_string(budget);
  }
  return "?";
}

AdversaryId parse_adversary(std::string_view id) {
  using K = AdversaryId::Kind;
  for (K k : {K::kIdentity, K::kKeyOnly, K::kCsForge, K::kProduct, K::kMulti, K::kMagicPt,
              K::kCcaReveal}) {
    AdversaryId a{k, 0};
    if (id == a.name()) return a;
  }
  constexpr std::string_view kPrefix = "random-forger:";
  if (id.starts_with(kPrefix)) {
    const std::string_view b = id.substr(kPrefix.size());
    if (b.empty() || b.size() > 6 || b.find_first_not_of("0123456789") != std::string_view::npos) {
      fail(ErrorCode::kConfig, "bad adversary budget: " + std::string(id));
    }
    return AdversaryId{K::kRandomForger, std::stoull(std::string(b))};
  }
  fail(ErrorCode::kConfig, "unknown adversary: " + std::string(id));
}

}  // namespace romlab
