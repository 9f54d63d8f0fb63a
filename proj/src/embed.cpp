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

#include "embed.hpp"

#include <vector>

#include "codegen.hpp"
#include "romlab/assembler.hpp"
#include "romlab/error.hpp"

namespace romlab {

namespace {

constexpr std::uint8_t kAbs = kAbsolute;

// Wrapper variables, 8 bytes each at the bottom of RAM.
constexpr std::int32_t kGpos = 0, kGlen = 8, kXrem = 16, kSave1 = 24, kSave2 = 32,
                       kOcnt = 40, kJ = 48, kL = 56, kXb = 64, kOb = 72;
constexpr std::int32_t kSeedBuf = 96;

// Stores 8 * L into r1.
void load_k(Assembler& as) {
  as.emit(Op::kLoadw, 1, kAbs, 0, kL);
  as.emit(Op::kShli, 1, 1, 0, 3);
}

}  // namespace

Program embed(const Program& guest, const EmbedPlan& plan) {
  if (plan.copies == 0) fail(ErrorCode::kInvalidArgument, "embed: zero copies");
  if (plan.copies > 1 && plan.tag) fail(ErrorCode::kInvalidArgument, "embed: tag with copies");
  if (!guest.all_well_formed()) fail(ErrorCode::kInvalidArgument, "embed: malformed guest");
  const bool multi = plan.copies > 1;
  const std::int32_t guest_buf = kSeedBuf + static_cast<std::int32_t>(plan.seed_cap);
  const std::int32_t base =
      (guest_buf + static_cast<std::int32_t>(plan.seed_cap) + 12 + 7) & ~7;
  const std::uint32_t guest_ram = guest.ram_bytes();
  const std::uint64_t total_ram = static_cast<std::uint64_t>(base) + guest_ram;
  if (total_ram > kMaxRam) fail(ErrorCode::kInvalidArgument, "embed: RAM too large");

  Assembler as;
  auto reject = as.label();
  auto copy_loop = as.label();
  auto run_guest = as.label();
  auto cont = as.label();
  const std::size_t n = guest.size();
  std::vector<Assembler::Label> at(n);
  for (auto& l : at) l = as.label();

  // Prologue: seed length, seed bytes, block length.
  codegen::read_varint(as, {0, 2, 3, 1, 4}, reject);
  as.jz(0, reject);
  as.emit(Op::kLtui, 4, 0, 0, static_cast<std::int32_t>(plan.seed_cap + 1));
  as.jz(4, reject);
  as.movi64(5, plan.copies);
  as.emit(Op::kModu, 4, 0, 5);
  as.jnz(4, reject);
  as.emit(Op::kDivu, 6, 0, 5);
  as.emit(Op::kStorew, 6, kAbs, 0, kL);
  as.movi(1, 0);
  {
    auto loop = as.here_label();
    auto done = as.label();
    as.emit(Op::kEq, 4, 1, 0);
    as.jnz(4, done);
    as.emit(Op::kRead, 2, 3);
    as.jz(3, reject);
    as.emit(Op::kStoreb, 2, 1, 0, kSeedBuf);
    as.emit(Op::kAddi, 1, 1, 0, 1);
    as.jmp(loop);
    as.bind(done);
  }
  if (multi) {
    load_k(as);
    codegen::emit_length(as, plan.in_len, reject);
    as.emit(Op::kAndi, 3, 2, 0, 7);
    as.jnz(3, reject);
    as.emit(Op::kShri, 2, 2, 0, 3);
    as.emit(Op::kStorew, 2, kAbs, 0, kXb);
    load_k(as);
    codegen::emit_length(as, plan.out_len, reject);
    as.emit(Op::kAndi, 3, 2, 0, 7);
    as.jnz(3, reject);
    as.emit(Op::kShri, 2, 2, 0, 3);
    as.emit(Op::kStorew, 2, kAbs, 0, kOb);
  } else {
    as.movi64(2, std::uint64_t{1} << 62);
    as.emit(Op::kStorew, 2, kAbs, 0, kXb);
  }
  as.movi(0, 0);
  as.emit(Op::kStorew, 0, kAbs, 0, kJ);

  // Per copy: build the guest prefix, reset the guest, run it.
  as.bind(copy_loop);
  as.emit(Op::kLoadw, 0, kAbs, 0, kJ);
  {
    auto go = as.label();
    as.emit(Op::kEqi, 1, 0, 0, static_cast<std::int32_t>(plan.copies));
    as.jz(1, go);
    as.emit(Op::kHaltAccept);
    as.bind(go);
  }
  as.movi(2, 0);
  as.emit(Op::kLoadw, 3, kAbs, 0, kL);
  {
    auto loop = as.here_label();
    auto last = as.label();
    as.emit(Op::kAndi, 4, 3, 0, 0x7F);
    as.emit(Op::kShri, 3, 3, 0, 7);
    as.jz(3, last);
    as.movi(5, 0x80);
    as.emit(Op::kOr, 4, 4, 5);
    as.emit(Op::kStoreb, 4, 2, 0, guest_buf);
    as.emit(Op::kAddi, 2, 2, 0, 1);
    as.jmp(loop);
    as.bind(last);
    as.emit(Op::kStoreb, 4, 2, 0, guest_buf);
    as.emit(Op::kAddi, 2, 2, 0, 1);
  }
  as.emit(Op::kLoadw, 6, kAbs, 0, kL);
  as.emit(Op::kMul, 5, 0, 6);
  as.movi(1, 0);
  {
    auto loop = as.here_label();
    auto done = as.label();
    as.emit(Op::kEq, 4, 1, 6);
    as.jnz(4, done);
    as.emit(Op::kAdd, 3, 5, 1);
    as.emit(Op::kLoadb, 4, 3, 0, kSeedBuf);
    as.emit(Op::kStoreb, 4, 2, 0, guest_buf);
    as.emit(Op::kAddi, 2, 2, 0, 1);
    as.emit(Op::kAddi, 1, 1, 0, 1);
    as.jmp(loop);
    as.bind(done);
  }
  if (plan.tag) {
    as.movi(4, *plan.tag);
    as.emit(Op::kStoreb, 4, 2, 0, guest_buf);
    as.emit(Op::kAddi, 2, 2, 0, 1);
  }
  as.emit(Op::kStorew, 2, kAbs, 0, kGlen);
  as.movi(4, 0);
  as.emit(Op::kStorew, 4, kAbs, 0, kGpos);
  as.emit(Op::kStorew, 4, kAbs, 0, kOcnt);
  as.emit(Op::kLoadw, 3, kAbs, 0, kXb);
  as.emit(Op::kStorew, 3, kAbs, 0, kXrem);
  as.movi(1, 0);
  {
    auto loop = as.here_label();
    auto done = as.label();
    as.emit(Op::kEqi, 3, 1, 0, static_cast<std::int32_t>(guest_ram));
    as.jnz(3, done);
    as.emit(Op::kStoreb, 4, 1, 0, base);
    as.emit(Op::kAddi, 1, 1, 0, 1);
    as.jmp(loop);
    as.bind(done);
  }
  for (std::uint8_t r = 0; r < 8; ++r) as.movi(r, 0);
  as.jmp(run_guest);

  // Guest body.
  as.bind(run_guest);
  for (std::size_t g = 0; g < n; ++g) {
    as.bind(at[g]);
    const Instr in = guest.code()[g];
    auto target = [&](std::int32_t imm) {
      const auto t = static_cast<std::uint32_t>(imm);
      return t < n ? at[t] : reject;
    };
    if (in.op >= kNumOps) {
      as.emit(in);
      continue;
    }
    switch (static_cast<Op>(in.op)) {
      case Op::kHaltAccept:
        as.jmp(cont);
        break;
      case Op::kJmp:
        as.jmp(target(in.imm));
        break;
      case Op::kJz:
        as.jz(in.a, target(in.imm));
        break;
      case Op::kJnz:
        as.jnz(in.a, target(in.imm));
        break;
      case Op::kJmpr:
      case Op::kLoadc:
        fail(ErrorCode::kInvalidArgument, "embed: guest uses code addresses");
      case Op::kLoadb:
      case Op::kStoreb:
      case Op::kLoadw:
      case Op::kStorew: {
        const std::int64_t width = (in.op == static_cast<std::uint8_t>(Op::kLoadb) ||
                                    in.op == static_cast<std::uint8_t>(Op::kStoreb))
                                       ? 1
                                       : 8;
        if (in.b == kAbs && (in.imm < 0 || in.imm + width > static_cast<std::int64_t>(guest_ram))) {
          as.emit(Op::kHaltReject);
          break;
        }
        const std::int64_t imm = static_cast<std::int64_t>(in.imm) + base;
        if (imm > 0x7FFFFFFF) fail(ErrorCode::kInvalidArgument, "embed: guest offset too large");
        Instr out = in;
        out.imm = static_cast<std::int32_t>(imm);
        as.emit(out);
        break;
      }
      case Op::kRead: {
        if (in.a == in.b) fail(ErrorCode::kInvalidArgument, "embed: READ with a == b");
        const std::uint8_t a = in.a, b = in.b;
        auto real = as.label();
        auto eof = as.label();
        auto done = as.label();
        as.emit(Op::kLoadw, a, kAbs, 0, kGpos);
        as.emit(Op::kLoadw, b, kAbs, 0, kGlen);
        as.emit(Op::kLtu, b, a, b);
        as.jz(b, real);
        as.emit(Op::kAddi, b, a, 0, 1);
        as.emit(Op::kStorew, b, kAbs, 0, kGpos);
        as.emit(Op::kLoadb, a, a, 0, guest_buf);
        as.movi(b, 1);
        as.jmp(done);
        as.bind(real);
        as.emit(Op::kLoadw, a, kAbs, 0, kXrem);
        as.jz(a, eof);
        as.emit(Op::kRead, a, b);
        as.jz(b, done);
        as.emit(Op::kLoadw, b, kAbs, 0, kXrem);
        as.emit(Op::kAddi, b, b, 0, -1);
        as.emit(Op::kStorew, b, kAbs, 0, kXrem);
        as.movi(b, 1);
        as.jmp(done);
        as.bind(eof);
        as.movi(b, 0);
        as.bind(done);
        break;
      }
      case Op::kWrite: {
        if (!multi) {
          as.emit(in);
          break;
        }
        const std::uint8_t t = (in.a + 1) % 8, u = (in.a + 2) % 8;
        auto skip = as.label();
        as.emit(Op::kStorew, t, kAbs, 0, kSave1);
        as.emit(Op::kStorew, u, kAbs, 0, kSave2);
        as.emit(Op::kLoadw, t, kAbs, 0, kOcnt);
        as.emit(Op::kLoadw, u, kAbs, 0, kOb);
        as.emit(Op::kLtu, u, t, u);
        as.jz(u, skip);
        as.emit(in);
        as.emit(Op::kAddi, t, t, 0, 1);
        as.emit(Op::kStorew, t, kAbs, 0, kOcnt);
        as.bind(skip);
        as.emit(Op::kLoadw, t, kAbs, 0, kSave1);
        as.emit(Op::kLoadw, u, kAbs, 0, kSave2);
        break;
      }
      default:
        as.emit(in);
        break;
    }
  }
  as.emit(Op::kHaltReject);  // running off the end of the guest

  // Continuation after a guest accept.
  as.bind(cont);
  if (!multi) {
    as.emit(Op::kHaltAccept);
  } else {
    {
      auto loop = as.here_label();
      auto done = as.label();
      as.emit(Op::kLoadw, 0, kAbs, 0, kXrem);
      as.jz(0, done);
      as.emit(Op::kRead, 1, 2);
      as.jz(2, done);
      as.emit(Op::kAddi, 0, 0, 0, -1);
      as.emit(Op::kStorew, 0, kAbs, 0, kXrem);
      as.jmp(loop);
      as.bind(done);
    }
    {
      auto loop = as.here_label();
      auto done = as.label();
      as.emit(Op::kLoadw, 0, kAbs, 0, kOcnt);
      as.emit(Op::kLoadw, 1, kAbs, 0, kOb);
      as.emit(Op::kLtu, 2, 0, 1);
      as.jz(2, done);
      as.movi(3, 0);
      as.emit(Op::kWrite, 3);
      as.emit(Op::kAddi, 0, 0, 0, 1);
      as.emit(Op::kStorew, 0, kAbs, 0, kOcnt);
      as.jmp(loop);
      as.bind(done);
    }
    as.emit(Op::kLoadw, 0, kAbs, 0, kJ);
    as.emit(Op::kAddi, 0, 0, 0, 1);
    as.emit(Op::kStorew, 0, kAbs, 0, kJ);
    as.jmp(copy_loop);
  }
  as.bind(reject);
  as.emit(Op::kHaltReject);
  return as.finish(static_cast<std::uint32_t>(total_ram));
}

}  // namespace romlab
