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

#include <cmath>
#include <random>

#include "romlab/coding.hpp"
#include "romlab/csproof.hpp"
#include "romlab/error.hpp"
#include "test_programs.hpp"

namespace romlab {
namespace {

using testing::countdown;
using testing::equality_checker;
using testing::pair_input;
using testing::spin_forever;

OracleHandle oracle(std::uint64_t seed) {
  return OracleHandle::random(256, LengthFunction::constant(256), seed);
}

Statement countdown_statement(std::uint64_t n, std::uint64_t slack = 0) {
  return Statement{countdown(n), {}, 2 * n + 2 + slack};
}

Statement equality_statement(const Bytes& x) {
  return Statement{equality_checker(), pair_input(x, x), 1000};
}

Digest hash(const OracleHandle& o, std::uint8_t tag, std::initializer_list<ByteView> parts) {
  Bytes q{tag};
  for (ByteView p : parts) q.insert(q.end(), p.begin(), p.end());
  const Bytes b = o.resized(256).query(q).bytes();
  Digest d;
  std::copy_n(b.begin(), 32, d.begin());
  return d;
}

// Root computed from scratch: leaves are 0x4C || state; an odd node is
// carried up unchanged; the root binds the tree top and both end leaves.
Digest reference_root(const Statement& w, const OracleHandle& o) {
  const RunResult r = run(w.machine, w.input, w.time_bound, true);
  std::vector<Digest> level;
  for (const Bytes& s : *r.trace) level.push_back(hash(o, 0x4C, {s}));
  const Digest first = level.front(), last = level.back();
  while (level.size() > 1) {
    std::vector<Digest> next;
    for (std::size_t i = 0; i < level.size(); i += 2) {
      next.push_back(i + 1 < level.size() ? hash(o, 0x4E, {level[i], level[i + 1]}) : level[i]);
    }
    level = std::move(next);
  }
  return hash(o, 0x4E, {level[0], first, last});
}

TEST(ProbeCount, Values) {
  EXPECT_EQ(probe_count(0), 8u);
  EXPECT_EQ(probe_count(1), 9u);
  EXPECT_EQ(probe_count(64), 9u);
  EXPECT_EQ(probe_count(65), 10u);
  EXPECT_EQ(probe_count(512), 16u);
}

TEST(Prove, CompletenessAcrossMachinesAndOracles) {
  std::mt19937_64 rng(1);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Bytes x(1 + rng() % 5);
    for (auto& b : x) b = static_cast<std::uint8_t>(rng());
    for (const Statement& w : {countdown_statement(1 + seed), countdown_statement(3, 40),
                               equality_statement(x)}) {
      const OracleHandle o = oracle(seed);
      const CsProof p = prove(128, w, o);
      EXPECT_TRUE(verify(128, w, p, o)) << seed;
      EXPECT_TRUE(verify_bytes(128, w, p.serialize(), o)) << seed;
    }
  }
}

TEST(Prove, RootMatchesIndependentTree) {
  for (std::uint64_t n : {1u, 2u, 5u, 17u}) {
    const Statement w = countdown_statement(n);
    const OracleHandle o = oracle(n);
    const CsProof p = prove(64, w, o);
    EXPECT_EQ(p.steps, 2 * n + 2);
    EXPECT_EQ(p.root, reference_root(w, o)) << n;
  }
}

TEST(Prove, OpeningLayout) {
  const Statement w = countdown_statement(30);
  const OracleHandle o = oracle(3);
  const CsProof p = prove(64, w, o);
  ASSERT_EQ(p.openings.size(), 2 + 2 * probe_count(64));
  ASSERT_EQ(p.challenges.size(), probe_count(64));
  EXPECT_EQ(p.openings[0].index, 0u);
  EXPECT_EQ(p.openings[0].path.size(), 1u);
  EXPECT_EQ(p.openings[1].index, p.steps);
  EXPECT_TRUE(p.openings[1].path.empty());
  const RunResult r = run(w.machine, w.input, w.time_bound, true);
  for (std::size_t j = 2; j < p.openings.size(); j += 2) {
    EXPECT_EQ(p.openings[j + 1].index, p.openings[j].index + 1);
    EXPECT_LT(p.openings[j].index, p.steps);
  }
  for (const Opening& op : p.openings) EXPECT_EQ(op.leaf, (*r.trace)[op.index]);
}

TEST(Prove, FalseStatementsThrow) {
  const OracleHandle o = oracle(1);
  // countdown(10) needs 22 steps.
  EXPECT_THROW(prove(64, Statement{countdown(10), {}, 21}, o), Error);
  EXPECT_THROW(prove(64, Statement{spin_forever(), {}, 50}, o), Error);
  Bytes x{1, 2, 3}, y{1, 2, 4};
  EXPECT_THROW(prove(64, Statement{equality_checker(), pair_input(x, y), 1000}, o), Error);
}

TEST(Verify, RejectsOtherParametersAndStatements) {
  const Statement w = countdown_statement(20);
  const OracleHandle o = oracle(4);
  const CsProof p = prove(64, w, o);
  EXPECT_FALSE(verify(512, w, p, o));
  EXPECT_FALSE(verify(64, countdown_statement(21), p, o));
  EXPECT_FALSE(verify(64, Statement{w.machine, w.input, p.steps - 1}, p, o));
  EXPECT_FALSE(verify(64, w, p, oracle(5)));
}

TEST(Verify, RejectsSingleFieldMutations) {
  const Statement w = countdown_statement(40);
  const OracleHandle o = oracle(6);
  const CsProof good = prove(64, w, o);
  std::mt19937_64 rng(6);
  int rejected = 0, total = 0;
  for (int n = 0; n < 200; ++n) {
    CsProof p = good;
    const std::size_t j = 2 + rng() % (p.openings.size() - 2);
    Opening& op = p.openings[j];
    switch (n % 9) {
      case 0: p.steps += 1 + rng() % 3; break;
      case 1: p.root[rng() % 32] ^= 1; break;
      case 2: op.index ^= 1; break;
      case 3: op.leaf[rng() % op.leaf.size()] ^= static_cast<std::uint8_t>(1 + rng() % 255); break;
      case 4:
        if (op.path.empty()) op.path.push_back(Digest{});
        else op.path[rng() % op.path.size()][0] ^= 0x80;
        break;
      case 5: op.path.push_back(good.root); break;
      case 6: std::swap(p.openings[2], p.openings[4]); break;
      case 7: p.openings.pop_back(); break;
      case 8: p.challenges[rng() % p.challenges.size()][rng() % 32] ^= 0x10; break;
    }
    if (p == good) continue;
    ++total;
    if (!verify(64, w, p, o)) ++rejected;
  }
  EXPECT_EQ(rejected, total);
  EXPECT_GT(total, 190);
}

TEST(Verify, RejectsMalformedBytes) {
  const Statement w = countdown_statement(4);
  const OracleHandle o = oracle(7);
  Bytes ser = prove(64, w, o).serialize();
  EXPECT_FALSE(verify_bytes(64, w, Bytes(ser.begin(), ser.end() - 1), o));
  Bytes v = ser;
  v[0] = 0x7F;  // unknown version
  EXPECT_FALSE(verify_bytes(64, w, v, o));
  EXPECT_FALSE(verify_bytes(64, w, Bytes{}, o));
  EXPECT_THROW(CsProof::deserialize(Bytes(ser.begin(), ser.begin() + 20)), Error);
}

TEST(Serialize, RoundTripAndLayout) {
  const Statement w = countdown_statement(9);
  const CsProof p = prove(64, w, oracle(8));
  const Bytes ser = p.serialize();
  EXPECT_EQ(CsProof::deserialize(ser), p);
  std::size_t want = 1 + 8 + 32 + 2 + 32 * p.challenges.size();
  for (const Opening& op : p.openings) want += 8 + 4 + op.leaf.size() + 2 + 32 * op.path.size();
  EXPECT_EQ(ser.size(), want);
}

TEST(Statement, SerializeLayout) {
  const Statement w{testing::accept_now(), Bytes{9}, 5};
  const Bytes code = w.machine.encode();
  Bytes want;
  put_varint(want, code.size());
  want.insert(want.end(), code.begin(), code.end());
  want.push_back(1);
  want.push_back(9);
  put_u64(want, 5);
  EXPECT_EQ(w.serialize(), want);
  EXPECT_EQ(bumped_parameter(100, w), 100 + 8 * want.size());
}

TEST(Bumped, UsesTheStatementParameterAndCountsCalls) {
  const Statement w = countdown_statement(12);
  const OracleHandle o = oracle(9);
  const CsProof p = prove_bumped(64, w, o);
  ASSERT_NE(probe_count(64), probe_count(bumped_parameter(64, w)));
  const VerifyCalls before = verify_calls();
  EXPECT_TRUE(verify_bumped(64, w, p, o));
  EXPECT_FALSE(verify(64, w, p, o));
  const VerifyCalls after = verify_calls();
  EXPECT_EQ(after.bumped - before.bumped, 1u);
  EXPECT_EQ(after.plain - before.plain, 1u);
}

TEST(Bumped, LoggedQueriesReplayToTheSameVerdict) {
  const Statement w = countdown_statement(12);
  const OracleHandle o = oracle(10);
  const CsProof p = prove_bumped(64, w, o);
  const LoggedVerdict v = verify_logged(64, w, p, o);
  EXPECT_TRUE(v.accept);
  ASSERT_FALSE(v.log.empty());
  for (const auto& [q, a] : v.log) {
    EXPECT_EQ(o.query(q), a);
    EXPECT_EQ(a.size(), 256u);
  }
  EXPECT_EQ(verify_logged(64, w, p, o).log, v.log);
}

TEST(Soundness, TruncatedTraceCaughtAtTheLastTransition) {
  // Only a probe of transition T-1 -> T sees the forged halt, so the
  // rejection rate is 1 - (1 - 1/T)^m.
  constexpr std::uint64_t T = 32;
  const Statement w{spin_forever(), {}, T};
  const std::uint64_t m = probe_count(64);
  const double want = 1 - std::pow(1 - 1.0 / T, static_cast<double>(m));
  constexpr int kSeeds = 600;
  int rejected = 0;
  for (int s = 0; s < kSeeds; ++s) {
    const OracleHandle o = oracle(1000 + s);
    if (!verify(64, w, prove_truncated(64, w, T, o), o)) ++rejected;
  }
  const double rate = static_cast<double>(rejected) / kSeeds;
  EXPECT_NEAR(rate, want, 4 * std::sqrt(want * (1 - want) / kSeeds));
  EXPECT_THROW(prove_truncated(64, countdown_statement(2), 20, oracle(1)), Error);
}

}  // namespace
}  // namespace romlab
