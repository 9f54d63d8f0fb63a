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

#include <map>

#include "codegen.hpp"
#include "romlab/ensembles.hpp"
#include "romlab/error.hpp"

namespace romlab {

namespace {

constexpr std::uint64_t kFnvBasis = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kMix1 = 0xbf58476d1ce4e5b9ULL;
constexpr std::uint64_t kMix2 = 0x94d049bb133111ebULL;
constexpr std::uint8_t kConstantByte = 0xA5;
constexpr std::size_t kConstantLen = 64;
constexpr std::size_t kTableMaxSeed = 64;

std::uint64_t finalize_word(std::uint64_t h, std::uint64_t j) {
  std::uint64_t z = h + (j + 1) * kGolden;
  z = (z ^ (z >> 30)) * kMix1;
  z = (z ^ (z >> 27)) * kMix2;
  return z ^ (z >> 31);
}

Bytes keyed_hash_native(std::uint8_t sep, ByteView seed, ByteView x) {
  std::uint64_t h = kFnvBasis;
  for (std::uint8_t b : seed) h = (h ^ b) * kFnvPrime;
  h = (h ^ sep) * kFnvPrime;
  for (std::uint8_t b : x) h = (h ^ b) * kFnvPrime;
  Bytes out;
  const std::uint64_t words = (seed.size() + 7) / 8;
  for (std::uint64_t j = 0; j < words; ++j) {
    const std::uint64_t z = finalize_word(h, j);
    for (int sh = 56; sh >= 0; sh -= 8) out.push_back(static_cast<std::uint8_t>(z >> sh));
  }
  return out;
}

// r0 hash, r1 prime, r2 byte, r3 flag, r4 counter, r5 seed length, r6 r7 scratch
Program keyed_hash_program(std::uint8_t sep) {
  Assembler as;
  auto reject = as.label();
  auto accept = as.label();
  codegen::read_varint(as, {5, 2, 3, 6, 7}, reject);
  as.movi64(0, kFnvBasis);
  as.movi64(1, kFnvPrime);
  as.movi(4, 0);
  auto seed_loop = as.here_label();
  auto seed_done = as.label();
  as.emit(Op::kEq, 7, 4, 5);
  as.jnz(7, seed_done);
  as.emit(Op::kRead, 2, 3);
  as.jz(3, reject);
  as.emit(Op::kXor, 0, 0, 2);
  as.emit(Op::kMul, 0, 0, 1);
  as.emit(Op::kAddi, 4, 4, 0, 1);
  as.jmp(seed_loop);
  as.bind(seed_done);
  as.movi(2, sep);
  as.emit(Op::kXor, 0, 0, 2);
  as.emit(Op::kMul, 0, 0, 1);
  auto x_loop = as.here_label();
  auto x_done = as.label();
  as.emit(Op::kRead, 2, 3);
  as.jz(3, x_done);
  as.emit(Op::kXor, 0, 0, 2);
  as.emit(Op::kMul, 0, 0, 1);
  as.jmp(x_loop);
  as.bind(x_done);
  as.emit(Op::kAddi, 5, 5, 0, 7);
  as.emit(Op::kShri, 5, 5, 0, 3);
  as.movi(4, 0);
  auto word_loop = as.here_label();
  as.emit(Op::kEq, 7, 4, 5);
  as.jnz(7, accept);
  as.emit(Op::kAddi, 6, 4, 0, 1);
  as.movi64(7, kGolden);
  as.emit(Op::kMul, 6, 6, 7);
  as.emit(Op::kAdd, 6, 6, 0);
  as.emit(Op::kShri, 7, 6, 0, 30);
  as.emit(Op::kXor, 6, 6, 7);
  as.movi64(7, kMix1);
  as.emit(Op::kMul, 6, 6, 7);
  as.emit(Op::kShri, 7, 6, 0, 27);
  as.emit(Op::kXor, 6, 6, 7);
  as.movi64(7, kMix2);
  as.emit(Op::kMul, 6, 6, 7);
  as.emit(Op::kShri, 7, 6, 0, 31);
  as.emit(Op::kXor, 6, 6, 7);
  codegen::write_word(as, 6, 7);
  as.emit(Op::kAddi, 4, 4, 0, 1);
  as.jmp(word_loop);
  as.bind(accept);
  as.emit(Op::kHaltAccept);
  as.bind(reject);
  as.emit(Op::kHaltReject);
  return as.finish(8);
}

Program constant_program() {
  Assembler as;
  as.movi(0, kConstantByte);
  as.movi(1, kConstantLen);
  auto loop = as.here_label();
  as.emit(Op::kWrite, 0);
  as.emit(Op::kAddi, 1, 1, 0, -1);
  as.jnz(1, loop);
  as.emit(Op::kHaltAccept);
  return as.finish(8);
}

// Seed bytes go to RAM[0..n); l_in = floor(log2(2n)); the entry index is the
// top l_in bits of the first input byte.
// r0 n, r1 counter, r2 byte, r3 flag, r4 l_in, r5 r6 r7 scratch
Program table_program() {
  Assembler as;
  auto reject = as.label();
  codegen::read_varint(as, {0, 2, 3, 6, 7}, reject);
  as.jz(0, reject);
  as.emit(Op::kLtui, 5, 0, 0, kTableMaxSeed + 1);
  as.jz(5, reject);
  as.movi(1, 0);
  auto seed_loop = as.here_label();
  auto seed_done = as.label();
  as.emit(Op::kEq, 5, 1, 0);
  as.jnz(5, seed_done);
  as.emit(Op::kRead, 2, 3);
  as.jz(3, reject);
  as.emit(Op::kStoreb, 2, 1, 0, 0);
  as.emit(Op::kAddi, 1, 1, 0, 1);
  as.jmp(seed_loop);
  as.bind(seed_done);
  as.emit(Op::kAdd, 5, 0, 0);  // v = 2n
  as.movi(4, 0);
  auto log_loop = as.here_label();
  auto log_done = as.label();
  as.emit(Op::kLtui, 6, 5, 0, 2);
  as.jnz(6, log_done);
  as.emit(Op::kShri, 5, 5, 0, 1);
  as.emit(Op::kAddi, 4, 4, 0, 1);
  as.jmp(log_loop);
  as.bind(log_done);
  as.emit(Op::kRead, 2, 3);  // at end of input the byte reads as 0
  as.movi(6, 8);
  as.emit(Op::kSub, 6, 6, 4);
  as.emit(Op::kShr, 5, 2, 6);  // idx
  as.emit(Op::kShri, 6, 5, 0, 1);
  as.emit(Op::kLoadb, 7, 6, 0, 0);
  as.emit(Op::kAndi, 6, 5, 0, 1);
  auto low = as.label();
  auto emit = as.label();
  as.jnz(6, low);
  as.emit(Op::kShri, 7, 7, 0, 4);
  as.jmp(emit);
  as.bind(low);
  as.emit(Op::kAndi, 7, 7, 0, 0x0F);
  as.bind(emit);
  as.emit(Op::kShli, 7, 7, 0, 4);
  as.emit(Op::kWrite, 7);
  as.emit(Op::kHaltAccept);
  as.bind(reject);
  as.emit(Op::kHaltReject);
  return as.finish(kTableMaxSeed);
}

Bytes table_native(ByteView seed, ByteView x) {
  const std::size_t n = seed.size();
  if (n == 0 || n > kTableMaxSeed) fail(ErrorCode::kEvalFailure, "table seed must be 1..64 bytes");
  unsigned lin = 0;
  for (std::size_t v = 2 * n; v >= 2; v >>= 1) ++lin;
  const unsigned b = x.empty() ? 0 : x[0];
  const unsigned idx = b >> (8 - lin);
  const std::uint8_t entry = seed[idx >> 1];
  const std::uint8_t nib = (idx & 1) ? (entry & 0x0F) : (entry >> 4);
  return Bytes{static_cast<std::uint8_t>(nib << 4)};
}

LengthFunction table_in_len() {
  std::map<std::uint64_t, std::uint64_t> t;
  for (std::uint64_t n = 1; n <= kTableMaxSeed; ++n) {
    unsigned lin = 0;
    for (std::uint64_t v = 2 * n; v >= 2; v >>= 1) ++lin;
    t[8 * n] = lin;
  }
  return LengthFunction::table(std::move(t));
}

}  // namespace

EnsembleSpec constant_spec() {
  EnsembleSpec s;
  s.name = "constant";
  s.program = constant_program();
  s.out_len = LengthFunction::identity();
  s.in_len = LengthFunction::identity();
  s.steps = StepBound{0, 0, 4 * kConstantLen + 8};
  s.native = [](ByteView, ByteView) { return Bytes(kConstantLen, kConstantByte); };
  return s;
}

EnsembleSpec table_spec() {
  EnsembleSpec s;
  s.name = "table";
  s.program = table_program();
  s.out_len = LengthFunction::constant(4);
  s.in_len = table_in_len();
  s.steps = StepBound{16, 1, 256};
  s.native = table_native;
  return s;
}

EnsembleSpec keyed_hash_spec() {
  EnsembleSpec s;
  s.name = "kh";
  s.program = keyed_hash_program(0xFF);
  s.out_len = LengthFunction::identity();
  s.in_len = LengthFunction::identity();
  s.steps = StepBound{16, 1, 512};
  s.native = [](ByteView seed, ByteView x) { return keyed_hash_native(0xFF, seed, x); };
  return s;
}

EnsembleSpec keyed_hash_trunc_spec() {
  EnsembleSpec s;
  s.name = "kh-trunc";
  s.program = keyed_hash_program(0xFE);
  s.out_len = LengthFunction::affine(1, 2, 0);
  s.in_len = LengthFunction::identity();
  s.steps = StepBound{16, 1, 512};
  s.native = [](ByteView seed, ByteView x) { return keyed_hash_native(0xFE, seed, x); };
  return s;
}

}  // namespace romlab
