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

#include "romlab/universal.hpp"

#include <algorithm>
#include <array>

#include "codegen.hpp"
#include "romlab/assembler.hpp"
#include "romlab/coding.hpp"
#include "romlab/error.hpp"

namespace romlab {

namespace {

constexpr std::uint8_t kAbs = kAbsolute;

// RAM layout.
constexpr std::int32_t kXl = 0, kIlen = 8, kSl = 16, kGramSz = 32, kLout = 40, kOutBytes = 48,
                       kGl = 56, kGcur = 64, kGocnt = 72;
constexpr std::int32_t kXbuf = 128;
constexpr std::int32_t kYbuf = kXbuf + 80;
constexpr std::int32_t kGout = kYbuf + 128;
constexpr std::int32_t kGibuf = kGout + 128;
constexpr std::int32_t kGregs = kGibuf + 160;
constexpr std::int32_t kGram = kGregs + 64;
constexpr std::uint32_t kRam = kGram + kUniversalMaxGuestRam;

constexpr std::int32_t kLow32 = -1;  // ANDI mask 0xFFFFFFFF

// Host registers while emulating: r7 guest pc, r6 code start, r5 code
// length, r1 current record; r0 r2 r3 r4 are scratch.
struct Emitter {
  Assembler& as;
  Assembler::Label fetch, reject, guest_accept;

  void fa(std::uint8_t r) {
    as.emit(Op::kShri, r, 1, 0, 45);
    as.emit(Op::kAndi, r, r, 0, 0x38);
  }
  void fb(std::uint8_t r) {
    as.emit(Op::kShri, r, 1, 0, 37);
    as.emit(Op::kAndi, r, r, 0, 0x38);
  }
  void fc(std::uint8_t r) {
    as.emit(Op::kShri, r, 1, 0, 29);
    as.emit(Op::kAndi, r, r, 0, 0x38);
  }
  void getreg(std::uint8_t dst, std::uint8_t off) { as.emit(Op::kLoadw, dst, off, 0, kGregs); }
  void setreg(std::uint8_t val, std::uint8_t off) { as.emit(Op::kStorew, val, off, 0, kGregs); }
  void simm(std::uint8_t r) {
    as.emit(Op::kShli, r, 1, 0, 32);
    as.emit(Op::kSari, r, r, 0, 32);
  }
  void zimm(std::uint8_t r) { as.emit(Op::kAndi, r, 1, 0, kLow32); }
  void next() {
    as.emit(Op::kAddi, 7, 7, 0, 1);
    as.jmp(fetch);
  }
  // r0 = base + sext(imm) for memory and LOADC records.
  void effective() {
    auto abs = as.label();
    as.emit(Op::kShri, 2, 1, 0, 40);
    as.emit(Op::kAndi, 2, 2, 0, 0xFF);
    as.emit(Op::kEqi, 3, 2, 0, 0xFF);
    as.movi(4, 0);
    as.jnz(3, abs);
    fb(4);
    getreg(4, 4);
    as.bind(abs);
    simm(0);
    as.emit(Op::kAdd, 0, 0, 4);
  }
  void checked_address(std::int32_t width) {
    effective();
    as.emit(Op::kLoadw, 2, kAbs, 0, kGramSz);
    as.emit(Op::kLtu, 3, 0, 2);
    as.jz(3, reject);
    as.emit(Op::kSub, 3, 2, 0);
    as.emit(Op::kLtui, 3, 3, 0, width);
    as.jnz(3, reject);
  }
};

// Copies RAM[src_off + r2 .. src_off + end) to RAM[dst_off + r1 ..), leaving
// the new write position in r1. end is read from the variable at end_var.
void copy_loop(Assembler& as, std::int32_t src_off, std::int32_t end_var, std::int32_t dst_off) {
  auto loop = as.here_label();
  auto done = as.label();
  as.emit(Op::kLoadw, 3, kAbs, 0, end_var);
  as.emit(Op::kEq, 4, 2, 3);
  as.jnz(4, done);
  as.emit(Op::kLoadb, 3, 2, 0, src_off);
  as.emit(Op::kStoreb, 3, 1, 0, dst_off);
  as.emit(Op::kAddi, 1, 1, 0, 1);
  as.emit(Op::kAddi, 2, 2, 0, 1);
  as.jmp(loop);
  as.bind(done);
}

}  // namespace

bool universal_supports(const EnsembleSpec& spec) {
  return !spec.native_only && spec.program.ram_bytes() <= kUniversalMaxGuestRam &&
         spec.program.all_well_formed() && spec.program.size() > 0;
}

Program build_universal(const Registry& registry) {
  Assembler as;
  Emitter e{as, as.label(), as.label(), as.label()};
  auto directory = as.label();
  auto jump_table = as.label();

  struct Entry {
    std::uint64_t index;
    const EnsembleSpec* spec;
    Assembler::Label code, lout;
  };
  std::vector<Entry> entries;
  for (EnsembleId id : registry.ids()) {
    const EnsembleSpec& s = registry.spec(id);
    if (universal_supports(s)) entries.push_back({id.value, &s, as.label(), as.label()});
  }

  // x
  codegen::read_varint(as, {0, 2, 3, 1, 4}, e.reject);
  as.emit(Op::kLtui, 4, 0, 0, static_cast<std::int32_t>(kUniversalMaxX + 1));
  as.jz(4, e.reject);
  as.emit(Op::kStorew, 0, kAbs, 0, kXl);
  as.movi(1, 0);
  {
    auto loop = as.here_label();
    auto done = as.label();
    as.emit(Op::kEq, 4, 1, 0);
    as.jnz(4, done);
    as.emit(Op::kRead, 2, 3);
    as.jz(3, e.reject);
    as.emit(Op::kStoreb, 2, 1, 0, kXbuf);
    as.emit(Op::kAddi, 1, 1, 0, 1);
    as.jmp(loop);
    as.bind(done);
  }

  // i from the front of x, with the same limits as decode_pair
  as.movi(0, 0);
  as.movi(1, 0);
  as.movi(2, 0);
  auto parsed = as.label();
  {
    auto loop = as.here_label();
    auto group_ok = as.label();
    as.emit(Op::kLoadw, 3, kAbs, 0, kXl);
    as.emit(Op::kLtu, 4, 1, 3);
    as.jz(4, e.reject);
    as.emit(Op::kLoadb, 3, 1, 0, kXbuf);
    as.emit(Op::kAddi, 1, 1, 0, 1);
    as.emit(Op::kAndi, 4, 3, 0, 0x7F);
    as.emit(Op::kEqi, 5, 2, 0, 63);
    as.jz(5, group_ok);
    as.emit(Op::kLtui, 5, 4, 0, 2);
    as.jz(5, e.reject);
    as.bind(group_ok);
    as.emit(Op::kShl, 4, 4, 2);
    as.emit(Op::kOr, 0, 0, 4);
    as.emit(Op::kAddi, 2, 2, 0, 7);
    as.emit(Op::kAndi, 4, 3, 0, 0x80);
    as.jz(4, parsed);
    as.emit(Op::kLtui, 4, 2, 0, 70);
    as.jnz(4, loop);
    as.jmp(e.reject);
  }
  as.bind(parsed);
  as.emit(Op::kStorew, 1, kAbs, 0, kIlen);
  as.emit(Op::kLoadw, 3, kAbs, 0, kXl);
  as.emit(Op::kSub, 3, 3, 1);
  as.jz(3, e.reject);
  as.emit(Op::kLtui, 4, 3, 0, static_cast<std::int32_t>(kUniversalMaxSeed + 1));
  as.jz(4, e.reject);
  as.emit(Op::kStorew, 3, kAbs, 0, kSl);

  // directory lookup
  as.movi(2, static_cast<std::uint32_t>(entries.size()));
  as.emit_at(Op::kMovi, 4, 0, 0, directory);
  auto found = as.label();
  {
    auto loop = as.here_label();
    as.jz(2, e.reject);
    as.emit(Op::kLoadc, 5, 4, 0, 0);
    as.emit(Op::kEq, 5, 5, 0);
    as.jnz(5, found);
    as.emit(Op::kAddi, 4, 4, 0, 5);
    as.emit(Op::kAddi, 2, 2, 0, -1);
    as.jmp(loop);
  }
  as.bind(found);
  as.emit(Op::kLoadc, 6, 4, 0, 1);
  as.emit(Op::kAndi, 6, 6, 0, kLow32);
  as.emit(Op::kLoadc, 5, 4, 0, 2);
  as.emit(Op::kLoadc, 3, 4, 0, 3);
  as.emit(Op::kStorew, 3, kAbs, 0, kGramSz);
  auto lout_done = as.label();
  as.emit(Op::kLoadw, 1, kAbs, 0, kSl);
  as.emit(Op::kShli, 1, 1, 0, 3);
  as.emit(Op::kLoadc, 3, 4, 0, 4);
  as.emit(Op::kAndi, 3, 3, 0, kLow32);
  as.emit(Op::kJmpr, 3);
  as.bind(lout_done);
  as.jz(2, e.reject);
  as.emit(Op::kLtui, 3, 2, 0, static_cast<std::int32_t>(8 * kUniversalMaxOutBytes + 1));
  as.jz(3, e.reject);
  as.emit(Op::kMov, 3, 2);
  as.emit(Op::kStorew, 3, kAbs, 0, kLout);
  as.emit(Op::kAddi, 3, 3, 0, 7);
  as.emit(Op::kShri, 3, 3, 0, 3);
  as.emit(Op::kStorew, 3, kAbs, 0, kOutBytes);

  // y, then end of input
  codegen::read_varint(as, {0, 2, 3, 1, 4}, e.reject);
  as.emit(Op::kLoadw, 1, kAbs, 0, kLout);
  as.emit(Op::kEq, 1, 0, 1);
  as.jz(1, e.reject);
  as.emit(Op::kLoadw, 0, kAbs, 0, kOutBytes);
  as.movi(1, 0);
  {
    auto loop = as.here_label();
    auto done = as.label();
    as.emit(Op::kEq, 4, 1, 0);
    as.jnz(4, done);
    as.emit(Op::kRead, 2, 3);
    as.jz(3, e.reject);
    as.emit(Op::kStoreb, 2, 1, 0, kYbuf);
    as.emit(Op::kAddi, 1, 1, 0, 1);
    as.jmp(loop);
    as.bind(done);
  }
  as.emit(Op::kRead, 2, 3);
  as.jnz(3, e.reject);

  // guest input varint(|s|) || s || x; |s| <= 64 fits one varint byte
  as.emit(Op::kLoadw, 0, kAbs, 0, kSl);
  as.emit(Op::kStoreb, 0, kAbs, 0, kGibuf);
  as.movi(1, 1);
  as.emit(Op::kLoadw, 2, kAbs, 0, kIlen);
  copy_loop(as, kXbuf, kXl, kGibuf);
  as.movi(2, 0);
  copy_loop(as, kXbuf, kXl, kGibuf);
  as.emit(Op::kStorew, 1, kAbs, 0, kGl);
  as.movi(7, 0);

  // fetch and dispatch
  as.bind(e.fetch);
  as.emit(Op::kLtu, 0, 7, 5);
  as.jz(0, e.reject);
  as.emit(Op::kAdd, 0, 7, 6);
  as.emit(Op::kLoadc, 1, 0, 0, 0);
  as.emit(Op::kShri, 2, 1, 0, 56);
  as.emit(Op::kLtui, 3, 2, 0, kNumOps);
  as.jz(3, e.reject);
  as.emit_at(Op::kLoadc, 3, 2, 0, jump_table);
  as.emit(Op::kAndi, 3, 3, 0, kLow32);
  as.emit(Op::kJmpr, 3);

  std::array<Assembler::Label, kNumOps> handler;
  for (auto& l : handler) l = as.label();
  auto at = [&](Op op) { as.bind(handler[static_cast<std::uint8_t>(op)]); };

  at(Op::kHaltAccept);
  as.jmp(e.guest_accept);
  at(Op::kHaltReject);
  as.jmp(e.reject);

  at(Op::kMovi);
  e.fa(2);
  e.zimm(3);
  e.setreg(3, 2);
  e.next();

  at(Op::kMovhi);
  e.fa(2);
  e.getreg(3, 2);
  as.emit(Op::kAndi, 3, 3, 0, kLow32);
  e.zimm(4);
  as.emit(Op::kShli, 4, 4, 0, 32);
  as.emit(Op::kOr, 3, 3, 4);
  e.setreg(3, 2);
  e.next();

  at(Op::kMov);
  e.fb(3);
  e.getreg(3, 3);
  e.fa(2);
  e.setreg(3, 2);
  e.next();

  for (Op op : {Op::kAdd, Op::kSub, Op::kMul, Op::kDivu, Op::kModu, Op::kAnd, Op::kOr, Op::kXor,
                Op::kShl, Op::kShr, Op::kEq, Op::kLtu}) {
    at(op);
    e.fb(3);
    e.getreg(3, 3);
    e.fc(4);
    e.getreg(4, 4);
    if (op == Op::kDivu || op == Op::kModu) as.jz(4, e.reject);
    as.emit(op, 3, 3, 4);
    e.fa(2);
    e.setreg(3, 2);
    e.next();
  }

  struct ImmOp {
    Op op, host;
    bool sign;
  };
  for (ImmOp io : {ImmOp{Op::kAddi, Op::kAdd, true}, ImmOp{Op::kAndi, Op::kAnd, false},
                   ImmOp{Op::kShli, Op::kShl, false}, ImmOp{Op::kShri, Op::kShr, false},
                   ImmOp{Op::kEqi, Op::kEq, true}, ImmOp{Op::kLtui, Op::kLtu, true}}) {
    at(io.op);
    e.fb(3);
    e.getreg(3, 3);
    if (io.sign) {
      e.simm(4);
    } else {
      e.zimm(4);
    }
    as.emit(io.host, 3, 3, 4);
    e.fa(2);
    e.setreg(3, 2);
    e.next();
  }

  at(Op::kSari);
  {
    auto pos = as.label();
    auto store = as.label();
    e.fb(3);
    e.getreg(3, 3);
    e.zimm(4);
    as.emit(Op::kShri, 0, 3, 0, 63);
    as.jz(0, pos);
    as.movi(0, 0);
    as.emit(Op::kAddi, 0, 0, 0, -1);
    as.emit(Op::kXor, 3, 3, 0);
    as.emit(Op::kShr, 3, 3, 4);
    as.emit(Op::kXor, 3, 3, 0);
    as.jmp(store);
    as.bind(pos);
    as.emit(Op::kShr, 3, 3, 4);
    as.bind(store);
    e.fa(2);
    e.setreg(3, 2);
    e.next();
  }

  at(Op::kJmp);
  e.zimm(7);
  as.jmp(e.fetch);

  for (Op op : {Op::kJz, Op::kJnz}) {
    auto fall = as.label();
    at(op);
    e.fa(2);
    e.getreg(2, 2);
    if (op == Op::kJz) {
      as.jnz(2, fall);
    } else {
      as.jz(2, fall);
    }
    e.zimm(7);
    as.jmp(e.fetch);
    as.bind(fall);
    e.next();
  }

  at(Op::kJmpr);
  e.fa(2);
  e.getreg(2, 2);
  as.emit(Op::kShri, 3, 2, 0, 32);
  as.jnz(3, e.reject);
  as.emit(Op::kMov, 7, 2);
  as.jmp(e.fetch);

  at(Op::kLoadb);
  e.checked_address(1);
  as.emit(Op::kLoadb, 3, 0, 0, kGram);
  e.fa(2);
  e.setreg(3, 2);
  e.next();

  at(Op::kStoreb);
  e.checked_address(1);
  e.fa(2);
  e.getreg(3, 2);
  as.emit(Op::kStoreb, 3, 0, 0, kGram);
  e.next();

  at(Op::kLoadw);
  e.checked_address(8);
  as.emit(Op::kLoadw, 3, 0, 0, kGram);
  e.fa(2);
  e.setreg(3, 2);
  e.next();

  at(Op::kStorew);
  e.checked_address(8);
  e.fa(2);
  e.getreg(3, 2);
  as.emit(Op::kStorew, 3, 0, 0, kGram);
  e.next();

  at(Op::kRead);
  {
    auto eof = as.label();
    as.emit(Op::kLoadw, 0, kAbs, 0, kGcur);
    as.emit(Op::kLoadw, 2, kAbs, 0, kGl);
    as.emit(Op::kLtu, 3, 0, 2);
    as.jz(3, eof);
    as.emit(Op::kLoadb, 3, 0, 0, kGibuf);
    as.emit(Op::kAddi, 0, 0, 0, 1);
    as.emit(Op::kStorew, 0, kAbs, 0, kGcur);
    e.fa(2);
    e.setreg(3, 2);
    as.movi(3, 1);
    e.fb(2);
    e.setreg(3, 2);
    e.next();
    as.bind(eof);
    as.movi(3, 0);
    e.fa(2);
    e.setreg(3, 2);
    e.fb(2);
    e.setreg(3, 2);
    e.next();
  }

  at(Op::kWrite);
  {
    auto count = as.label();
    as.emit(Op::kLoadw, 0, kAbs, 0, kGocnt);
    as.emit(Op::kLtui, 3, 0, 0, static_cast<std::int32_t>(kOutputCap));
    as.jz(3, e.reject);
    as.emit(Op::kLoadw, 2, kAbs, 0, kOutBytes);
    as.emit(Op::kLtu, 3, 0, 2);
    as.jz(3, count);
    e.fa(2);
    e.getreg(3, 2);
    as.emit(Op::kStoreb, 3, 0, 0, kGout);
    as.bind(count);
    as.emit(Op::kAddi, 0, 0, 0, 1);
    as.emit(Op::kStorew, 0, kAbs, 0, kGocnt);
    e.next();
  }

  at(Op::kLoadc);
  e.effective();
  as.emit(Op::kLtu, 3, 0, 5);
  as.jz(3, e.reject);
  as.emit(Op::kAdd, 0, 0, 6);
  as.emit(Op::kLoadc, 3, 0, 0, 0);
  e.fa(2);
  e.setreg(3, 2);
  e.next();

  // compare the adjusted guest output with y
  as.bind(e.guest_accept);
  {
    auto all = as.label();
    auto nomask = as.label();
    as.emit(Op::kLoadw, 2, kAbs, 0, kOutBytes);
    as.movi(0, 0);
    auto body = as.here_label();
    as.emit(Op::kEq, 3, 0, 2);
    as.jnz(3, all);
    as.emit(Op::kLoadb, 3, 0, 0, kGout);
    as.emit(Op::kAddi, 4, 0, 0, 1);
    as.emit(Op::kEq, 4, 4, 2);
    as.jz(4, nomask);
    as.emit(Op::kLoadw, 4, kAbs, 0, kLout);
    as.emit(Op::kAndi, 4, 4, 0, 7);
    as.jz(4, nomask);
    as.movi(1, 8);
    as.emit(Op::kSub, 1, 1, 4);
    as.movi(4, 0xFF);
    as.emit(Op::kShl, 4, 4, 1);
    as.emit(Op::kAnd, 3, 3, 4);
    as.bind(nomask);
    as.emit(Op::kLoadb, 4, 0, 0, kYbuf);
    as.emit(Op::kEq, 4, 3, 4);
    as.jz(4, e.reject);
    as.emit(Op::kAddi, 0, 0, 0, 1);
    as.jmp(body);
    as.bind(all);
    as.emit(Op::kHaltAccept);
  }
  as.bind(e.reject);
  as.emit(Op::kHaltReject);

  // l_out routines: r1 = 8|s| in, r2 = l_out out
  for (const Entry& en : entries) {
    as.bind(en.lout);
    codegen::emit_length(as, en.spec->out_len, e.reject);
    as.jmp(lout_done);
  }

  // data: jump table, directory, guest code
  as.bind(jump_table);
  for (auto& l : handler) as.data_label(l);
  as.bind(directory);
  for (const Entry& en : entries) {
    as.data(en.index);
    as.data_label(en.code);
    as.data(en.spec->program.size());
    as.data(en.spec->program.ram_bytes());
    as.data_label(en.lout);
  }
  for (const Entry& en : entries) {
    as.bind(en.code);
    for (const Instr& in : en.spec->program.code()) as.emit(in);
  }
  return as.finish(kRam);
}

Bytes universal_input(ByteView x, const Bits& y) {
  Bytes in;
  put_varint(in, x.size());
  in.insert(in.end(), x.begin(), x.end());
  put_varint(in, y.size());
  in.insert(in.end(), y.bytes().begin(), y.bytes().end());
  return in;
}

std::uint64_t statement_bits(ByteView x, const Bits& y) { return 8 * x.size() + y.size(); }

std::uint64_t universal_time_bound(ByteView x, const Bits& y) {
  return t_bound(std::max<std::uint64_t>(1, statement_bits(x, y)));
}

}  // namespace romlab
