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

// Bytecode fragments shared by the built-in program generators.

#ifndef ROMLAB_CODEGEN_HPP_
#define ROMLAB_CODEGEN_HPP_

#include <utility>
#include <vector>

#include "romlab/assembler.hpp"
#include "romlab/length.hpp"

namespace romlab::codegen {

struct Regs {
  std::uint8_t dst, byte, flag, shift, tmp;
};

// Reads a base-128 varint from the input into r.dst; jumps to eof when the
// input ends first. Clobbers every register in r.
inline void read_varint(Assembler& as, Regs r, Assembler::Label eof) {
  as.movi(r.dst, 0);
  as.movi(r.shift, 0);
  auto loop = as.here_label();
  as.emit(Op::kRead, r.byte, r.flag);
  as.jz(r.flag, eof);
  as.emit(Op::kAndi, r.tmp, r.byte, 0, 0x7F);
  as.emit(Op::kShl, r.tmp, r.tmp, r.shift);
  as.emit(Op::kOr, r.dst, r.dst, r.tmp);
  as.emit(Op::kAddi, r.shift, r.shift, 0, 7);
  as.emit(Op::kAndi, r.tmp, r.byte, 0, 0x80);
  as.jnz(r.tmp, loop);
}

// Writes the eight bytes of r big-endian, using tmp as scratch.
inline void write_word(Assembler& as, std::uint8_t r, std::uint8_t tmp) {
  for (int sh = 56; sh >= 0; sh -= 8) {
    as.emit(Op::kShri, tmp, r, 0, sh);
    as.emit(Op::kWrite, tmp);
  }
}

// Computes l(r1) into r2 with r3, r4 as scratch, jumping to undefined where
// l has no value. r1 may be modified.
inline void emit_length(Assembler& as, const LengthFunction& f, Assembler::Label undefined) {
  using K = LengthFunction::Kind;
  switch (f.kind()) {
    case K::kIdentity:
      as.emit(Op::kMov, 2, 1);
      return;
    case K::kAffine:
      as.movi64(3, static_cast<std::uint64_t>(f.num()));
      as.emit(Op::kMul, 2, 1, 3);
      as.movi64(3, static_cast<std::uint64_t>(f.den()));
      as.emit(Op::kDivu, 2, 2, 3);
      if (f.offset() > 0) {
        as.movi64(3, static_cast<std::uint64_t>(f.offset()));
        as.emit(Op::kAdd, 2, 2, 3);
      } else if (f.offset() < 0) {
        as.movi64(3, static_cast<std::uint64_t>(-f.offset()));
        as.emit(Op::kLtu, 4, 2, 3);
        as.jnz(4, undefined);
        as.emit(Op::kSub, 2, 2, 3);
      }
      return;
    case K::kTable: {
      std::vector<std::pair<Assembler::Label, std::uint64_t>> hits;
      auto done = as.label();
      for (const auto& [k, v] : f.values()) {
        if (k > 0x7FFFFFFF) continue;
        auto l = as.label();
        as.emit(Op::kEqi, 3, 1, 0, static_cast<std::int32_t>(k));
        as.jnz(3, l);
        hits.emplace_back(l, v);
      }
      as.jmp(undefined);
      for (const auto& [l, v] : hits) {
        as.bind(l);
        as.movi64(2, v);
        as.jmp(done);
      }
      as.bind(done);
      return;
    }
    case K::kScaled:
      as.movi64(3, f.factor());
      as.emit(Op::kModu, 4, 1, 3);
      as.jnz(4, undefined);
      as.emit(Op::kDivu, 1, 1, 3);
      emit_length(as, *f.base(), undefined);
      as.movi64(3, f.factor());
      as.emit(Op::kMul, 2, 2, 3);
      return;
  }
}

}  // namespace romlab::codegen

#endif  // ROMLAB_CODEGEN_HPP_
