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

#define OPENSSL_SUPPRESS_DEPRECATED
#include "romlab/vm.hpp"

#include <openssl/sha.h>

#include "romlab/coding.hpp"
#include "romlab/error.hpp"

namespace romlab {

namespace {

constexpr const char* kOpNames[kNumOps] = {
    "halt_accept", "halt_reject", "movi", "movhi", "mov",    "add",    "sub",  "mul",   "divu",
    "modu",        "and",         "or",   "xor",   "shl",    "shr",    "addi", "andi",  "shli",
    "shri",        "eq",          "ltu",  "eqi",   "ltui",   "jmp",    "jz",   "jnz",   "jmpr",
    "loadb",       "storeb",      "loadw", "storew", "read", "write",  "loadc", "sari"};

// Which register fields an op reads or writes: bit 0 = a, 1 = b, 2 = c,
// 3 = b is a memory base (register or kAbsolute).
constexpr std::uint8_t kFieldA = 1, kFieldB = 2, kFieldC = 4, kBase = 8;

std::uint8_t fields_of(std::uint8_t op) {
  switch (static_cast<Op>(op)) {
    case Op::kHaltAccept:
    case Op::kHaltReject:
    case Op::kJmp:
      return 0;
    case Op::kMovi:
    case Op::kMovhi:
    case Op::kJz:
    case Op::kJnz:
    case Op::kJmpr:
    case Op::kWrite:
      return kFieldA;
    case Op::kMov:
    case Op::kAddi:
    case Op::kAndi:
    case Op::kShli:
    case Op::kShri:
    case Op::kSari:
    case Op::kEqi:
    case Op::kLtui:
    case Op::kRead:
      return kFieldA | kFieldB;
    case Op::kLoadb:
    case Op::kStoreb:
    case Op::kLoadw:
    case Op::kStorew:
    case Op::kLoadc:
      return kFieldA | kBase;
    default:
      return kFieldA | kFieldB | kFieldC;
  }
}

std::uint64_t sext(std::int32_t v) { return static_cast<std::uint64_t>(static_cast<std::int64_t>(v)); }
std::uint64_t zext(std::int32_t v) { return static_cast<std::uint32_t>(v); }

}  // namespace

const char* op_name(std::uint8_t op) { return op < kNumOps ? kOpNames[op] : "data"; }

Instr Instr::from_word(std::uint64_t w) {
  return Instr{static_cast<std::uint8_t>(w >> 56), static_cast<std::uint8_t>(w >> 48),
               static_cast<std::uint8_t>(w >> 40), static_cast<std::uint8_t>(w >> 32),
               static_cast<std::int32_t>(static_cast<std::uint32_t>(w))};
}

std::uint64_t Instr::word() const {
  return (std::uint64_t{op} << 56) | (std::uint64_t{a} << 48) | (std::uint64_t{b} << 40) |
         (std::uint64_t{c} << 32) | static_cast<std::uint32_t>(imm);
}

bool Instr::well_formed() const {
  if (op >= kNumOps) return false;
  const std::uint8_t f = fields_of(op);
  if ((f & kFieldA) && a >= 8) return false;
  if ((f & kFieldB) && b >= 8) return false;
  if ((f & kFieldC) && c >= 8) return false;
  if ((f & kBase) && b >= 8 && b != kAbsolute) return false;
  return true;
}

Program::Program(std::vector<Instr> code, std::uint32_t ram_bytes)
    : code_(std::move(code)), ram_(ram_bytes) {
  if (ram_ > kMaxRam) fail(ErrorCode::kInvalidArgument, "program RAM exceeds 64 KiB");
  if (code_.size() > 0xFFFFFFu) fail(ErrorCode::kInvalidArgument, "program too long");
}

Program Program::decode(ByteView bytes) {
  Reader r(bytes);
  if (r.u8() != kProgramVersion) fail(ErrorCode::kMalformed, "unknown program version");
  const std::uint32_t ram = r.u32();
  const std::uint32_t count = r.u32();
  if (ram > kMaxRam) fail(ErrorCode::kMalformed, "program RAM exceeds 64 KiB");
  if (r.remaining() != std::uint64_t{count} * 8) {
    fail(ErrorCode::kMalformed, "program record count does not match its length");
  }
  std::vector<Instr> code;
  code.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) code.push_back(Instr::from_word(r.u64()));
  return Program(std::move(code), ram);
}

Bytes Program::encode() const {
  Bytes out;
  out.reserve(9 + 8 * code_.size());
  out.push_back(kProgramVersion);
  put_u32(out, ram_);
  put_u32(out, static_cast<std::uint32_t>(code_.size()));
  for (const Instr& in : code_) put_u64(out, in.word());
  return out;
}

std::string Program::digest_hex() const {
  const Bytes e = encode();
  std::uint8_t d[SHA256_DIGEST_LENGTH];
  SHA256(e.data(), e.size(), d);
  return to_hex(ByteView(d, sizeof d));
}

bool Program::all_well_formed() const {
  for (const Instr& in : code_) {
    if (in.op < kNumOps && !in.well_formed()) return false;
  }
  return true;
}

Bytes MachineState::serialize() const {
  Bytes out;
  serialize_into(out);
  return out;
}

void MachineState::serialize_into(Bytes& out) const {
  out.clear();
  out.reserve(kHeaderBytes + ram.size());
  put_u32(out, pc);
  out.push_back(static_cast<std::uint8_t>(status));
  put_u32(out, cursor);
  put_u32(out, out_len);
  for (std::uint64_t r : regs) put_u64(out, r);
  out.insert(out.end(), ram.begin(), ram.end());
}

MachineState MachineState::deserialize(ByteView bytes, std::uint32_t ram_bytes) {
  if (bytes.size() != kHeaderBytes + ram_bytes) {
    fail(ErrorCode::kMalformed, "state record has the wrong size");
  }
  Reader r(bytes);
  MachineState s;
  s.pc = r.u32();
  const std::uint8_t st = r.u8();
  if (st > 2) fail(ErrorCode::kMalformed, "bad state status byte");
  s.status = static_cast<Status>(st);
  s.cursor = r.u32();
  s.out_len = r.u32();
  for (auto& reg : s.regs) reg = r.u64();
  s.ram = r.bytes(ram_bytes);
  return s;
}

std::size_t state_size(const Program& p) { return MachineState::kHeaderBytes + p.ram_bytes(); }

MachineState initial_state(const Program& p) {
  MachineState s;
  s.ram.assign(p.ram_bytes(), 0);
  return s;
}

void step_inplace(MachineState& s, const Program& p, ByteView input, Bytes* out) {
  if (s.halted()) fail(ErrorCode::kState, "step on a halted machine");
  auto reject = [&] { s.status = Status::kReject; };
  if (s.pc >= p.size()) return reject();
  const Instr in = p.code()[s.pc];
  if (!in.well_formed()) return reject();
  auto& r = s.regs;
  const std::uint64_t ram = s.ram.size();
  auto address = [&](std::uint64_t width) -> std::optional<std::uint64_t> {
    const std::uint64_t base = in.b == kAbsolute ? 0 : r[in.b];
    const std::uint64_t addr = base + sext(in.imm);
    if (addr < ram && ram - addr >= width) return addr;
    return std::nullopt;
  };
  std::uint32_t next = s.pc + 1;
  switch (static_cast<Op>(in.op)) {
    case Op::kHaltAccept:
      s.status = Status::kAccept;
      return;
    case Op::kHaltReject:
      return reject();
    case Op::kMovi:
      r[in.a] = zext(in.imm);
      break;
    case Op::kMovhi:
      r[in.a] = (r[in.a] & 0xFFFFFFFFu) | (zext(in.imm) << 32);
      break;
    case Op::kMov:
      r[in.a] = r[in.b];
      break;
    case Op::kAdd:
      r[in.a] = r[in.b] + r[in.c];
      break;
    case Op::kSub:
      r[in.a] = r[in.b] - r[in.c];
      break;
    case Op::kMul:
      r[in.a] = r[in.b] * r[in.c];
      break;
    case Op::kDivu:
      if (r[in.c] == 0) return reject();
      r[in.a] = r[in.b] / r[in.c];
      break;
    case Op::kModu:
      if (r[in.c] == 0) return reject();
      r[in.a] = r[in.b] % r[in.c];
      break;
    case Op::kAnd:
      r[in.a] = r[in.b] & r[in.c];
      break;
    case Op::kOr:
      r[in.a] = r[in.b] | r[in.c];
      break;
    case Op::kXor:
      r[in.a] = r[in.b] ^ r[in.c];
      break;
    case Op::kShl:
      r[in.a] = r[in.b] << (r[in.c] & 63);
      break;
    case Op::kShr:
      r[in.a] = r[in.b] >> (r[in.c] & 63);
      break;
    case Op::kAddi:
      r[in.a] = r[in.b] + sext(in.imm);
      break;
    case Op::kAndi:
      r[in.a] = r[in.b] & zext(in.imm);
      break;
    case Op::kShli:
      r[in.a] = r[in.b] << (in.imm & 63);
      break;
    case Op::kShri:
      r[in.a] = r[in.b] >> (in.imm & 63);
      break;
    case Op::kSari:
      r[in.a] = static_cast<std::uint64_t>(static_cast<std::int64_t>(r[in.b]) >> (in.imm & 63));
      break;
    case Op::kEq:
      r[in.a] = r[in.b] == r[in.c];
      break;
    case Op::kLtu:
      r[in.a] = r[in.b] < r[in.c];
      break;
    case Op::kEqi:
      r[in.a] = r[in.b] == sext(in.imm);
      break;
    case Op::kLtui:
      r[in.a] = r[in.b] < sext(in.imm);
      break;
    case Op::kJmp:
      next = static_cast<std::uint32_t>(in.imm);
      break;
    case Op::kJz:
      if (r[in.a] == 0) next = static_cast<std::uint32_t>(in.imm);
      break;
    case Op::kJnz:
      if (r[in.a] != 0) next = static_cast<std::uint32_t>(in.imm);
      break;
    case Op::kJmpr:
      if (r[in.a] > 0xFFFFFFFFu) return reject();
      next = static_cast<std::uint32_t>(r[in.a]);
      break;
    case Op::kLoadb: {
      auto a = address(1);
      if (!a) return reject();
      r[in.a] = s.ram[*a];
      break;
    }
    case Op::kStoreb: {
      auto a = address(1);
      if (!a) return reject();
      s.ram[*a] = static_cast<std::uint8_t>(r[in.a]);
      break;
    }
    case Op::kLoadw: {
      auto a = address(8);
      if (!a) return reject();
      r[in.a] = load_u64(s.ram.data() + *a);
      break;
    }
    case Op::kStorew: {
      auto a = address(8);
      if (!a) return reject();
      for (int i = 0; i < 8; ++i) s.ram[*a + i] = static_cast<std::uint8_t>(r[in.a] >> (56 - 8 * i));
      break;
    }
    case Op::kRead:
      if (s.cursor < input.size()) {
        r[in.a] = input[s.cursor++];
        r[in.b] = 1;
      } else {
        r[in.a] = 0;
        r[in.b] = 0;
      }
      break;
    case Op::kWrite:
      if (s.out_len >= kOutputCap) return reject();
      if (out) out->push_back(static_cast<std::uint8_t>(r[in.a]));
      ++s.out_len;
      break;
    case Op::kLoadc: {
      const std::uint64_t base = in.b == kAbsolute ? 0 : r[in.b];
      const std::uint64_t idx = base + sext(in.imm);
      if (idx >= p.size()) return reject();
      r[in.a] = p.code()[idx].word();
      break;
    }
  }
  s.pc = next;
}

MachineState step(const MachineState& s, const Program& p, ByteView input) {
  MachineState n = s;
  step_inplace(n, p, input, nullptr);
  return n;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kAccept:
      return "accept";
    case Verdict::kReject:
      return "reject";
    case Verdict::kTimeout:
      return "timeout";
  }
  return "?";
}

RunResult run_visit(const Program& p, ByteView input, std::uint64_t step_cap,
                    const std::function<void(const MachineState&)>& visit) {
  if (step_cap == 0) fail(ErrorCode::kInvalidArgument, "step cap must be positive");
  RunResult res;
  MachineState s = initial_state(p);
  if (visit) visit(s);
  while (!s.halted() && res.steps < step_cap) {
    step_inplace(s, p, input, &res.output);
    ++res.steps;
    if (visit) visit(s);
  }
  if (s.status == Status::kAccept) {
    res.verdict = Verdict::kAccept;
  } else if (s.status == Status::kReject) {
    res.verdict = Verdict::kReject;
  } else {
    res.verdict = Verdict::kTimeout;
  }
  return res;
}

RunResult run(const Program& p, ByteView input, std::uint64_t step_cap, bool record_trace) {
  if (!record_trace) return run_visit(p, input, step_cap, nullptr);
  std::vector<Bytes> trace;
  RunResult res =
      run_visit(p, input, step_cap, [&](const MachineState& s) { trace.push_back(s.serialize()); });
  if (res.verdict != Verdict::kTimeout) res.trace = std::move(trace);
  return res;
}

std::uint64_t t_bound(std::uint64_t n) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "t_bound needs n >= 1");
  unsigned e = 0;
  while ((std::uint64_t{1} << e) < n) ++e;  // ceil(log2 n)
  std::uint64_t acc = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (acc > kTimeBoundCap / n) return kTimeBoundCap;
    acc *= n;
  }
  return std::min(acc, kTimeBoundCap);
}

}  // namespace romlab
