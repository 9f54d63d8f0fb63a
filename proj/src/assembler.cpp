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

#include "romlab/assembler.hpp"

#include "romlab/error.hpp"

namespace romlab {

Assembler::Label Assembler::label() {
  bound_.push_back(-1);
  return Label{static_cast<std::uint32_t>(bound_.size() - 1)};
}

void Assembler::bind(Label l) {
  if (bound_.at(l.id) >= 0) fail(ErrorCode::kInternal, "label bound twice");
  bound_[l.id] = here();
}

Assembler::Label Assembler::here_label() {
  Label l = label();
  bind(l);
  return l;
}

void Assembler::jump(Op op, std::uint8_t a, Label target) {
  fixups_.push_back({here(), target.id});
  emit(op, a, 0, 0, 0);
}

void Assembler::emit_at(Op op, std::uint8_t a, std::uint8_t b, std::uint8_t c, Label target) {
  fixups_.push_back({here(), target.id});
  emit(op, a, b, c, 0);
}

void Assembler::movi64(std::uint8_t r, std::uint64_t v) {
  movi(r, static_cast<std::uint32_t>(v));
  if (v >> 32) emit(Op::kMovhi, r, 0, 0, static_cast<std::int32_t>(static_cast<std::uint32_t>(v >> 32)));
}

void Assembler::data_label(Label target) {
  fixups_.push_back({here(), target.id});
  code_.push_back(Instr{0xFF, 0xFF, 0xFF, 0xFF, 0});
}

Program Assembler::finish(std::uint32_t ram_bytes) const {
  std::vector<Instr> code = code_;
  for (const Fixup& f : fixups_) {
    const std::int64_t at = bound_.at(f.label);
    if (at < 0) fail(ErrorCode::kInternal, "unbound label");
    code[f.at].imm = static_cast<std::int32_t>(at);
  }
  return Program(std::move(code), ram_bytes);
}

}  // namespace romlab
