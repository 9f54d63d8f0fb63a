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

// Small machines shared by the vm, csproof and acceptance tests.

#ifndef ROMLAB_TESTS_TEST_PROGRAMS_HPP_
#define ROMLAB_TESTS_TEST_PROGRAMS_HPP_

#include <cstdint>

#include "romlab/assembler.hpp"
#include "romlab/vm.hpp"

namespace romlab::testing {

inline Program accept_now() {
  Assembler a;
  a.emit(Op::kHaltAccept);
  return a.finish(16);
}

inline Program spin_forever() {
  Assembler a;
  auto top = a.here_label();
  a.jmp(top);
  return a.finish(16);
}

// Counts r0 down from n: 2n + 2 steps including the halt.
inline Program countdown(std::uint32_t n) {
  Assembler a;
  a.movi(0, n);
  auto top = a.here_label();
  a.emit(Op::kAddi, 0, 0, 0, -1);
  a.jnz(0, top);
  a.emit(Op::kHaltAccept);
  return a.finish(16);
}

// Input: one length byte n, then x (n bytes), then y (n bytes). Accepts iff
// x == y and the input has exactly that shape.
inline Program equality_checker() {
  Assembler a;
  auto reject = a.label();
  auto compare = a.label();
  auto accept = a.label();
  a.emit(Op::kRead, 0, 1);  // r0 = n
  a.jz(1, reject);
  a.movi(2, 0);  // i
  auto store = a.here_label();
  a.emit(Op::kEq, 3, 2, 0);
  a.jnz(3, compare);
  a.emit(Op::kRead, 4, 1);
  a.jz(1, reject);
  a.emit(Op::kStoreb, 4, 2, 0, 0);
  a.emit(Op::kAddi, 2, 2, 0, 1);
  a.jmp(store);
  a.bind(compare);
  a.movi(2, 0);
  auto check = a.here_label();
  a.emit(Op::kEq, 3, 2, 0);
  a.jnz(3, accept);
  a.emit(Op::kRead, 4, 1);
  a.jz(1, reject);
  a.emit(Op::kLoadb, 5, 2, 0, 0);
  a.emit(Op::kEq, 3, 4, 5);
  a.jz(3, reject);
  a.emit(Op::kAddi, 2, 2, 0, 1);
  a.jmp(check);
  a.bind(accept);
  a.emit(Op::kRead, 4, 1);  // trailing bytes are a reject
  a.jnz(1, reject);
  a.emit(Op::kHaltAccept);
  a.bind(reject);
  a.emit(Op::kHaltReject);
  return a.finish(256);
}

// Accepts iff the sum of the input bytes is not a multiple of 3.
inline Program sum_not_div3() {
  Assembler a;
  auto done = a.label();
  auto reject = a.label();
  a.movi(0, 0);
  a.movi(6, 3);
  auto top = a.here_label();
  a.emit(Op::kRead, 1, 2);
  a.jz(2, done);
  a.emit(Op::kAdd, 0, 0, 1);
  a.jmp(top);
  a.bind(done);
  a.emit(Op::kModu, 3, 0, 6);
  a.jz(3, reject);
  a.emit(Op::kHaltAccept);
  a.bind(reject);
  a.emit(Op::kHaltReject);
  return a.finish(16);
}

inline Bytes pair_input(const Bytes& x, const Bytes& y) {
  Bytes in{static_cast<std::uint8_t>(x.size())};
  in.insert(in.end(), x.begin(), x.end());
  in.insert(in.end(), y.begin(), y.end());
  return in;
}

}  // namespace romlab::testing

#endif  // ROMLAB_TESTS_TEST_PROGRAMS_HPP_
