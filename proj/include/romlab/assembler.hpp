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

#ifndef ROMLAB_ASSEMBLER_HPP_
#define ROMLAB_ASSEMBLER_HPP_

#include <cstdint>
#include <vector>

#include "romlab/vm.hpp"

namespace romlab {

// Builds programs with forward labels. Jump targets and label-valued data
// words are patched in finish().
class Assembler {
 public:
  struct Label {
    std::uint32_t id;
  };

  Label label();
  void bind(Label l);
  Label here_label();
  std::uint32_t here() const { return static_cast<std::uint32_t>(code_.size()); }

  void emit(Instr in) { code_.push_back(in); }
  void emit(Op op, std::uint8_t a = 0, std::uint8_t b = 0, std::uint8_t c = 0,
            std::int32_t imm = 0) {
    code_.push_back(Instr::make(op, a, b, c, imm));
  }
  // emits the jump with its immediate filled in once the label is bound
  void jump(Op op, std::uint8_t a, Label target);
  // Any op whose immediate is the address of target.
  void emit_at(Op op, std::uint8_t a, std::uint8_t b, std::uint8_t c, Label target);
  void jmp(Label target) { jump(Op::kJmp, 0, target); }
  void jz(std::uint8_t r, Label target) { jump(Op::kJz, r, target); }
  void jnz(std::uint8_t r, Label target) { jump(Op::kJnz, r, target); }

  void movi(std::uint8_t r, std::uint32_t v) { emit(Op::kMovi, r, 0, 0, static_cast<std::int32_t>(v)); }
  void movi64(std::uint8_t r, std::uint64_t v);
  // A record whose immediate is the address of target; read back with LOADC.
  void data_label(Label target);
  void data(std::uint64_t word) { code_.push_back(Instr::from_word(word)); }

  Program finish(std::uint32_t ram_bytes) const;

 private:
  struct Fixup {
    std::uint32_t at;
    std::uint32_t label;
  };
  std::vector<Instr> code_;
  std::vector<std::int64_t> bound_;
  std::vector<Fixup> fixups_;
};

}  // namespace romlab

#endif  // ROMLAB_ASSEMBLER_HPP_
