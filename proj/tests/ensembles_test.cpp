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

#include "romlab/coding.hpp"
#include "romlab/ensembles.hpp"
#include "romlab/error.hpp"

namespace romlab {
namespace {

Bytes random_bytes(std::mt19937_64& rng, std::size_t n) {
  Bytes b(n);
  for (auto& v : b) v = static_cast<std::uint8_t>(rng());
  return b;
}

// FNV-1a over s || sep || x, widened by a splitmix finalizer per 64-bit word.
Bytes kh_reference(std::uint8_t sep, ByteView s, ByteView x) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](std::uint8_t b) { h = (h ^ b) * 0x100000001b3ULL; };
  for (auto b : s) mix(b);
  mix(sep);
  for (auto b : x) mix(b);
  Bytes out;
  for (std::uint64_t j = 0; j < (s.size() + 7) / 8; ++j) {
    std::uint64_t z = h + (j + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    for (int sh = 56; sh >= 0; sh -= 8) out.push_back(static_cast<std::uint8_t>(z >> sh));
  }
  return out;
}

TEST(Registry, DefaultIndicesAndNames) {
  auto reg = default_registry();
  ASSERT_EQ(reg->size(), 8u);
  const char* names[] = {"constant", "table", "kh", "kh-trunc",
                         "constant'", "table'", "kh'", "kh-trunc'"};
  for (std::uint64_t i = 1; i <= 8; ++i) {
    EXPECT_EQ(reg->spec(EnsembleId{i}).name, names[i - 1]);
    EXPECT_EQ(reg->find(names[i - 1])->value, i);
  }
  EXPECT_FALSE(reg->contains(EnsembleId{0}));
  EXPECT_FALSE(reg->contains(EnsembleId{9}));
  EXPECT_THROW(reg->spec(EnsembleId{9}), Error);
}

TEST(Registry, ClosedRegistryHasEveryPrimeView) {
  auto reg = closed_registry();
  EXPECT_EQ(reg->size(), 12u);
  for (std::uint64_t i = 1; i <= 8; ++i) {
    auto p = prime_view_of(*reg, EnsembleId{i});
    ASSERT_TRUE(p) << i;
    EXPECT_EQ(reg->spec(*p).name, reg->spec(EnsembleId{i}).name + "'");
  }
}

TEST(Registry, FinalizeFreezesAndBuildsUniversal) {
  Registry r = builtin_registry();
  EXPECT_THROW(r.universal(), Error);
  r.finalize();
  EXPECT_TRUE(r.finalized());
  EXPECT_GT(r.universal().size(), 0u);
  EXPECT_THROW(r.add(constant_spec()), Error);
}

TEST(Registry, RejectsDuplicatesAndEmptyNames) {
  Registry r;
  r.add(constant_spec());
  EXPECT_THROW(r.add(constant_spec()), Error);
  EnsembleSpec s = table_spec();
  s.name.clear();
  EXPECT_THROW(r.add(s), Error);
}

TEST(Eval, InputFraming) {
  const Bytes in = eval_input(Bytes{1, 2}, Bytes{9});
  EXPECT_EQ(in, (Bytes{2, 1, 2, 9}));
}

TEST(Eval, KeyedHashMatchesIndependentReference) {
  auto reg = default_registry();
  std::mt19937_64 rng(5);
  for (int i = 0; i < 40; ++i) {
    const Bytes s = random_bytes(rng, 1 + rng() % 24);
    const Bytes x = random_bytes(rng, rng() % 24);
    EXPECT_EQ(reg->eval_raw(EnsembleId{3}, s, x), kh_reference(0xFF, s, x));
    EXPECT_EQ(reg->eval_raw(EnsembleId{4}, s, x), kh_reference(0xFE, s, x));
  }
  // Pinned: kh at k = 64, seed 00..07, input "ab".
  const Bytes s{0, 1, 2, 3, 4, 5, 6, 7};
  const Bytes x{'a', 'b'};
  EXPECT_EQ(to_hex(reg->eval_raw(EnsembleId{3}, s, x)), to_hex(kh_reference(0xFF, s, x)));
}

TEST(Eval, LengthsFollowTheDeclaredFunctions) {
  auto reg = default_registry();
  const Bytes s(16, 3);
  EXPECT_EQ(reg->eval(EnsembleId{1}, s, {}).size(), 128u);
  EXPECT_EQ(reg->eval(EnsembleId{2}, s, {}).size(), 4u);
  EXPECT_EQ(reg->eval(EnsembleId{3}, s, {}).size(), 128u);
  EXPECT_EQ(reg->eval(EnsembleId{4}, s, {}).size(), 64u);
  EXPECT_EQ(reg->eval(EnsembleId{7}, s, {}).size(), 128u);
}

TEST(Eval, TableReadsTheIndexedNibble) {
  auto reg = default_registry();
  // n = 2: l_in = 2, four nibbles 1 2 3 4.
  const Bytes s{0x12, 0x34};
  const std::uint8_t want[] = {0x10, 0x20, 0x30, 0x40};
  for (unsigned idx = 0; idx < 4; ++idx) {
    const Bytes x{static_cast<std::uint8_t>(idx << 6)};
    EXPECT_EQ(reg->eval_raw(EnsembleId{2}, s, x), Bytes{want[idx]});
    EXPECT_EQ(reg->eval_raw(EnsembleId{2}, s, x, EvalRoute::kVm), Bytes{want[idx]});
  }
  EXPECT_EQ(*reg->spec(EnsembleId{2}).in_len->try_eval(16), 2u);
  EXPECT_EQ(*reg->spec(EnsembleId{2}).in_len->try_eval(8 * 64), 7u);
}

TEST(Eval, ProgramAgreesWithNativeRuleOnEveryDefaultEnsemble) {
  auto reg = default_registry();
  std::mt19937_64 rng(11);
  for (EnsembleId id : reg->ids()) {
    for (int i = 0; i < 6; ++i) {
      const Bytes s = random_bytes(rng, 1 + rng() % 12);
      const Bytes x = random_bytes(rng, rng() % 10);
      EXPECT_EQ(reg->eval_raw(id, s, x, EvalRoute::kVm), reg->eval_raw(id, s, x, EvalRoute::kNative))
          << reg->spec(id).name;
    }
  }
}

TEST(Eval, PrimeViewIsTheTaggedBase) {
  auto reg = default_registry();
  std::mt19937_64 rng(2);
  for (std::uint64_t i = 1; i <= 4; ++i) {
    const Bytes s = random_bytes(rng, 8);
    const Bytes x = random_bytes(rng, 5);
    Bytes tx{static_cast<std::uint8_t>(Tag::kPrime)};
    tx.insert(tx.end(), x.begin(), x.end());
    EXPECT_EQ(reg->eval_raw(EnsembleId{i + 4}, s, x), reg->eval_raw(EnsembleId{i}, s, tx));
  }
  EXPECT_EQ(view_name("kh", Tag::kDoublePrime), "kh''");
}

TEST(Eval, EmptySeedRejected) {
  EXPECT_THROW(default_registry()->eval(EnsembleId{3}, Bytes{}, Bytes{1}), Error);
}

TEST(Oracle, EnsembleOracleAnswersEval) {
  auto reg = default_registry();
  const Bytes s(4, 0x11);
  OracleHandle f = ensemble_oracle(reg, EnsembleId{3}, s);
  EXPECT_EQ(f.out_bits(), 32u);
  EXPECT_EQ(f.query(Bytes{7}), reg->eval(EnsembleId{3}, s, Bytes{7}));
  EXPECT_THROW(ensemble_oracle(reg, EnsembleId{42}, s), Error);
}

TEST(PairCode, RoundTripAndPrefixFree) {
  std::mt19937_64 rng(8);
  std::vector<Bytes> codes;
  for (int n = 0; n < 200; ++n) {
    const std::uint64_t i = rng() % 5000;
    const Bytes s = random_bytes(rng, rng() % 6);
    const Bytes c = encode_pair(i, s);
    auto d = decode_pair(c);
    ASSERT_TRUE(d);
    EXPECT_EQ(d->first, i);
    EXPECT_EQ(d->second, s);
    codes.push_back(c);
  }
  EXPECT_FALSE(decode_pair(Bytes{0x80}));
  EXPECT_FALSE(decode_pair(Bytes{}));
  // The index part alone is prefix free: no varint is a proper prefix of another.
  for (std::uint64_t a = 0; a < 300; ++a) {
    for (std::uint64_t b = 0; b < 300; ++b) {
      if (a == b) continue;
      Bytes va, vb;
      put_varint(va, a);
      put_varint(vb, b);
      if (va.size() < vb.size()) EXPECT_FALSE(std::equal(va.begin(), va.end(), vb.begin()));
    }
  }
}

TEST(DirectProduct, BlocksAreIndependentCopies) {
  Registry r = builtin_registry();
  const EnsembleId kh = *r.find("kh");
  for (std::uint64_t m : {1u, 2u, 3u}) {
    const EnsembleId p = direct_product(r, kh, m);
    EXPECT_EQ(r.spec(p).name, "kh^" + std::to_string(m));
    EXPECT_EQ(*r.spec(p).out_len.try_eval(64 * m), 64 * m);
    std::mt19937_64 rng(m);
    const Bytes s = random_bytes(rng, 8 * m);
    const Bytes x = random_bytes(rng, 8 * m);
    Bytes want;
    for (std::uint64_t j = 0; j < m; ++j) {
      const Bytes b = kh_reference(0xFF, ByteView(s).subspan(8 * j, 8), ByteView(x).subspan(8 * j, 8));
      want.insert(want.end(), b.begin(), b.end());
    }
    EXPECT_EQ(r.eval_raw(p, s, x), want);
    EXPECT_EQ(r.eval_raw(p, s, x, EvalRoute::kVm), want);
  }
  EXPECT_THROW(direct_product(r, kh, 0), Error);
}

TEST(Nissim, FirstBlockOutsideTheRelation) {
  Registry r;
  // 8-bit blocks; related when the top nibbles match.
  auto rel = [](const Bits& x, const Bits& y) {
    for (std::uint64_t j = 0; j < 4; ++j) {
      if (x.bit(j) != y.bit(j)) return false;
    }
    return true;
  };
  const EnsembleId id = nissim_build(r, "nis", rel, LengthFunction::constant(8),
                                     LengthFunction::affine(1, 2, 0), 2);
  EXPECT_TRUE(r.spec(id).native_only);
  // s = 0F 8F: x = 0x0F relates to the first block, so the answer is the second.
  EXPECT_EQ(r.eval_raw(id, Bytes{0x0F, 0x8F}, Bytes{0x0F}), Bytes{0x8F});
  EXPECT_EQ(r.eval_raw(id, Bytes{0x0F, 0x8F}, Bytes{0x8F}), Bytes{0x0F});
  // Both blocks related: the last block.
  EXPECT_EQ(r.eval_raw(id, Bytes{0x01, 0x02}, Bytes{0x0A}), Bytes{0x02});
  EXPECT_THROW(r.eval_raw(id, Bytes{1, 2}, Bytes{0}, EvalRoute::kVm), Error);
  // Blocks must be exactly l_out bits.
  const EnsembleId fixed = nissim_build(r, "nis8", rel, LengthFunction::constant(8),
                                        LengthFunction::constant(8), 2);
  EXPECT_EQ(r.eval_raw(fixed, Bytes{0x0F, 0x8F}, Bytes{0x0F}), Bytes{0x8F});
  EXPECT_THROW(r.eval_raw(fixed, Bytes{1, 2, 3}, Bytes{0}), Error);
}

TEST(Manifest, OneLinePerEnsemble) {
  const std::string m = default_registry()->manifest();
  EXPECT_EQ(std::count(m.begin(), m.end(), '\n'), 8);
  EXPECT_NE(m.find("1 constant k k "), std::string::npos);
  EXPECT_NE(m.find("4 kh-trunc k k/2 "), std::string::npos);
  EXPECT_NE(m.find("2 table table 4 "), std::string::npos);
}

TEST(StepBoundTest, Evaluates) {
  EXPECT_EQ((StepBound{2, 2, 5})(3), 37u);
  EXPECT_EQ((StepBound{0, 0, 7})(100), 7u);
  EXPECT_EQ((StepBound{UINT64_MAX, 3, 1})(10), UINT64_MAX);
}

}  // namespace
}  // namespace romlab
