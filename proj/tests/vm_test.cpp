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

#include "romlab/error.hpp"
#include "romlab/vm.hpp"
#include "test_programs.hpp"

namespace romlab {
namespace {

using testing::accept_now;
using testing::countdown;
using testing::equality_checker;
using testing::pair_input;
using testing::spin_forever;

// A second interpreter written from the instruction table, covering the ops
// the test machines use.
struct RefResult {
  Verdict verdict;
  std::uint64_t steps;
};

RefResult ref_run(const Program& p, const Bytes& input, std::uint64_t cap) {
  std::uint64_t r[8] = {};
  std::vector<std::uint8_t> ram(p.ram_bytes(), 0);
  std::size_t pc = 0, cur = 0;
  for (std::uint64_t t = 1; t <= cap; ++t) {
    if (pc >= p.size()) return {Verdict::kReject, t};
    const Instr in = p.code()[pc];
    const std::int64_t imm = in.imm;
    std::size_t next = pc + 1;
    auto addr = [&]() -> std::int64_t {
      const std::int64_t a = static_cast<std::int64_t>(in.b == kAbsolute ? 0 : r[in.b]) + imm;
      return a >= 0 && a < static_cast<std::int64_t>(ram.size()) ? a : -1;
    };
    switch (static_cast<Op>(in.op)) {
      case Op::kHaltAccept: return {Verdict::kAccept, t};
      case Op::kHaltReject: return {Verdict::kReject, t};
      case Op::kMovi: r[in.a] = static_cast<std::uint32_t>(in.imm); break;
      case Op::kAddi: r[in.a] = r[in.b] + static_cast<std::uint64_t>(imm); break;
      case Op::kAdd: r[in.a] = r[in.b] + r[in.c]; break;
      case Op::kEq: r[in.a] = r[in.b] == r[in.c] ? 1 : 0; break;
      case Op::kModu:
        if (r[in.c] == 0) return {Verdict::kReject, t};
        r[in.a] = r[in.b] % r[in.c];
        break;
      case Op::kJmp: next = static_cast<std::size_t>(imm); break;
      case Op::kJz: if (r[in.a] == 0) next = static_cast<std::size_t>(imm); break;
      case Op::kJnz: if (r[in.a] != 0) next = static_cast<std::size_t>(imm); break;
      case Op::kRead:
        if (cur < input.size()) {
          r[in.a] = input[cur++];
          r[in.b] = 1;
        } else {
          r[in.a] = r[in.b] = 0;
        }
        break;
      case Op::kLoadb: {
        const auto a = addr();
        if (a < 0) return {Verdict::kReject, t};
        r[in.a] = ram[static_cast<std::size_t>(a)];
        break;
      }
      case Op::kStoreb: {
        const auto a = addr();
        if (a < 0) return {Verdict::kReject, t};
        ram[static_cast<std::size_t>(a)] = static_cast<std::uint8_t>(r[in.a]);
        break;
      }
      default:
        ADD_FAILURE() << "reference interpreter lacks op " << int(in.op);
        return {Verdict::kReject, t};
    }
    pc = next;
  }
  return {Verdict::kTimeout, cap};
}

TEST(Run, ImmediateAcceptTakesOneStep) {
  for (const Bytes& in : {Bytes{}, Bytes{1, 2, 3}}) {
    const RunResult r = run(accept_now(), in, 10);
    EXPECT_EQ(r.verdict, Verdict::kAccept);
    EXPECT_EQ(r.steps, 1u);
  }
}

TEST(Run, InfiniteLoopTimesOutAtTheCap) {
  const RunResult r = run(spin_forever(), {}, 100, true);
  EXPECT_EQ(r.verdict, Verdict::kTimeout);
  EXPECT_EQ(r.steps, 100u);
  EXPECT_FALSE(r.trace);
}

TEST(Run, EqualityCheckerPinnedStepCounts) {
  const Bytes x{'a', 'b', 'c'};
  Bytes y = x;
  y.back() ^= 1;
  const Program p = equality_checker();
  const RunResult same = run(p, pair_input(x, x), 1000);
  const RunResult diff = run(p, pair_input(x, y), 1000);
  EXPECT_EQ(same.verdict, Verdict::kAccept);
  EXPECT_EQ(diff.verdict, Verdict::kReject);
  // Pinned from the reference interpreter.
  EXPECT_EQ(same.steps, 59u);
  EXPECT_EQ(diff.steps, 53u);
  const RefResult rs = ref_run(p, pair_input(x, x), 1000);
  const RefResult rd = ref_run(p, pair_input(x, y), 1000);
  EXPECT_EQ(rs.verdict, Verdict::kAccept);
  EXPECT_EQ(rs.steps, same.steps);
  EXPECT_EQ(rd.verdict, Verdict::kReject);
  EXPECT_EQ(rd.steps, diff.steps);
}

TEST(Run, AgreesWithReferenceOnRandomInputs) {
  std::mt19937_64 rng(17);
  const std::vector<Program> progs = {equality_checker(), testing::sum_not_div3(), countdown(9)};
  for (int i = 0; i < 300; ++i) {
    Bytes x(rng() % 6), y;
    for (auto& b : x) b = static_cast<std::uint8_t>(rng());
    y = x;
    if (rng() & 1 && !y.empty()) y[rng() % y.size()] ^= static_cast<std::uint8_t>(1 + rng() % 255);
    const Bytes in = pair_input(x, y);
    for (const Program& p : progs) {
      const RunResult a = run(p, in, 500);
      const RefResult b = ref_run(p, in, 500);
      EXPECT_EQ(a.verdict, b.verdict);
      EXPECT_EQ(a.steps, b.steps);
    }
  }
}

TEST(Run, CountdownStepCount) {
  EXPECT_EQ(run(countdown(10), {}, 1000).steps, 22u);
  EXPECT_EQ(run(countdown(10), {}, 21).verdict, Verdict::kTimeout);
}

TEST(Run, DeterministicIncludingTrace) {
  const Bytes in = pair_input(Bytes{1, 2}, Bytes{1, 2});
  const RunResult a = run(equality_checker(), in, 200, true);
  const RunResult b = run(equality_checker(), in, 200, true);
  ASSERT_TRUE(a.trace && b.trace);
  EXPECT_EQ(*a.trace, *b.trace);
}

TEST(Trace, EveryAdjacentPairIsOneStep) {
  const Program p = equality_checker();
  const Bytes in = pair_input(Bytes{7, 8, 9, 10}, Bytes{7, 8, 9, 10});
  const RunResult r = run(p, in, 500, true);
  ASSERT_TRUE(r.trace);
  ASSERT_EQ(r.trace->size(), r.steps + 1);
  EXPECT_EQ(r.trace->front(), initial_state(p).serialize());
  for (std::size_t j = 0; j + 1 < r.trace->size(); ++j) {
    const MachineState s = MachineState::deserialize((*r.trace)[j], p.ram_bytes());
    EXPECT_EQ(step(s, p, in).serialize(), (*r.trace)[j + 1]) << j;
  }
  const MachineState last = MachineState::deserialize(r.trace->back(), p.ram_bytes());
  EXPECT_EQ(last.status, Status::kAccept);
}

TEST(Step, IncrementsARegister) {
  const Program p({Instr::make(Op::kAddi, 0, 0, 0, 1), Instr::make(Op::kHaltAccept)}, 16);
  MachineState s = initial_state(p);
  s.regs[0] = 41;
  const MachineState n = step(s, p, {});
  EXPECT_EQ(n.regs[0], 42u);
  EXPECT_EQ(n.pc, 1u);
  EXPECT_EQ(n.status, Status::kRunning);
}

TEST(Step, OutOfRangeStoreRejects) {
  // Address ram_bytes - 1 is the last valid byte; one further rejects.
  for (std::int32_t at : {15, 16, -1}) {
    const Program p({Instr::make(Op::kStoreb, 0, kAbsolute, 0, at), Instr::make(Op::kHaltAccept)},
                    16);
    const RunResult r = run(p, {}, 10);
    const RefResult ref = ref_run(p, {}, 10);
    EXPECT_EQ(r.verdict, ref.verdict) << at;
    EXPECT_EQ(r.steps, ref.steps) << at;
    EXPECT_EQ(r.verdict, at == 15 ? Verdict::kAccept : Verdict::kReject) << at;
  }
  const Program w({Instr::make(Op::kStorew, 0, kAbsolute, 0, 9), Instr::make(Op::kHaltAccept)}, 16);
  EXPECT_EQ(run(w, {}, 10).verdict, Verdict::kReject);
}

TEST(Step, HaltedStateCannotStep) {
  const Program p = accept_now();
  MachineState s = step(initial_state(p), p, {});
  EXPECT_TRUE(s.halted());
  EXPECT_THROW(step(s, p, {}), Error);
}

TEST(Step, BadRegisterFieldRejects) {
  const Program p({Instr::make(Op::kAdd, 9, 0, 0)}, 16);
  EXPECT_EQ(run(p, {}, 5).verdict, Verdict::kReject);
}

TEST(Step, RunningOffTheEndRejects) {
  const Program p({Instr::make(Op::kMovi, 0, 0, 0, 1)}, 16);
  const RunResult r = run(p, {}, 5);
  EXPECT_EQ(r.verdict, Verdict::kReject);
  EXPECT_EQ(r.steps, 2u);
}

TEST(Program, EncodeDecodeRoundTrip) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    std::vector<Instr> code(1 + rng() % 40);
    for (auto& in : code) in = Instr::from_word(rng());
    const Program p(code, static_cast<std::uint32_t>(1 + rng() % 4096));
    EXPECT_EQ(Program::decode(p.encode()), p);
  }
}

TEST(Program, EncodingIsInjective) {
  const Program a = countdown(3);
  const Program b = countdown(4);
  const Program c(a.code(), a.ram_bytes() + 1);
  EXPECT_NE(a.encode(), b.encode());
  EXPECT_NE(a.encode(), c.encode());
  EXPECT_NE(a.digest_hex(), b.digest_hex());
}

TEST(Program, DecodeRejectsMalformed) {
  Bytes e = countdown(3).encode();
  EXPECT_THROW(Program::decode(Bytes(e.begin(), e.end() - 1)), Error);
  e[0] ^= 0xFF;
  EXPECT_THROW(Program::decode(e), Error);
  EXPECT_THROW(Program::decode(Bytes{}), Error);
}

TEST(State, SerializedSizeIsFixed) {
  const Program p = equality_checker();
  const RunResult r = run(p, pair_input(Bytes{1}, Bytes{1}), 100, true);
  ASSERT_TRUE(r.trace);
  for (const Bytes& s : *r.trace) EXPECT_EQ(s.size(), state_size(p));
}

TEST(State, DeserializeRoundTrip) {
  MachineState s = initial_state(equality_checker());
  s.pc = 7;
  s.cursor = 3;
  s.regs[4] = 0x0102030405060708ULL;
  s.ram[10] = 0xEE;
  EXPECT_EQ(MachineState::deserialize(s.serialize(), 256), s);
  Bytes bad = s.serialize();
  bad[4] = 9;  // status byte
  EXPECT_THROW(MachineState::deserialize(bad, 256), Error);
}

TEST(TimeBound, PinnedValues) {
  EXPECT_EQ(t_bound(1), 1u);
  EXPECT_EQ(t_bound(2), 2u);
  EXPECT_EQ(t_bound(4), 16u);
  EXPECT_EQ(t_bound(8), 512u);
  EXPECT_EQ(t_bound(5), 125u);
  EXPECT_EQ(t_bound(1u << 20), kTimeBoundCap);
  EXPECT_THROW(t_bound(0), Error);
}

TEST(TimeBound, MonotoneAndSuperPolynomial) {
  for (std::uint64_t n = 1; n < 5000; ++n) EXPECT_LE(t_bound(n), t_bound(n + 1));
  for (std::uint64_t n = 4; n <= 64; ++n) {
    if (t_bound(2 * n) == kTimeBoundCap) break;
    EXPECT_GE(t_bound(2 * n) / t_bound(n), n) << n;
  }
}

}  // namespace
}  // namespace romlab
