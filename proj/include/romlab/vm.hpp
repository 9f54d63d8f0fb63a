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

#ifndef ROMLAB_VM_HPP_
#define ROMLAB_VM_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "romlab/bits.hpp"

namespace romlab {

enum class Op : std::uint8_t {
  kHaltAccept = 0x00,
  kHaltReject = 0x01,
  kMovi = 0x02,   // ra = zext(imm)
  kMovhi = 0x03,  // ra[63:32] = imm
  kMov = 0x04,
  kAdd = 0x05,
  kSub = 0x06,
  kMul = 0x07,
  kDivu = 0x08,  // rejects on a zero divisor
  kModu = 0x09,
  kAnd = 0x0A,
  kOr = 0x0B,
  kXor = 0x0C,
  kShl = 0x0D,  // shift counts are taken mod 64
  kShr = 0x0E,
  kAddi = 0x0F,  // ra = rb + sext(imm)
  kAndi = 0x10,  // ra = rb & zext(imm)
  kShli = 0x11,
  kShri = 0x12,
  kEq = 0x13,
  kLtu = 0x14,
  kEqi = 0x15,   // ra = (rb == sext(imm))
  kLtui = 0x16,  // ra = (rb < sext(imm)), unsigned compare
  kJmp = 0x17,
  kJz = 0x18,
  kJnz = 0x19,
  kJmpr = 0x1A,  // pc = ra
  kLoadb = 0x1B,  // ra = ram[base + sext(imm)]
  kStoreb = 0x1C,
  kLoadw = 0x1D,  // 8 bytes, big-endian
  kStorew = 0x1E,
  kRead = 0x1F,   // ra = next input byte, rb = 1; at end of input ra = rb = 0
  kWrite = 0x20,  // appends ra & 0xff to the output
  kLoadc = 0x21,  // ra = record word at code[base + sext(imm)]
  kSari = 0x22,
};
constexpr std::uint8_t kNumOps = 0x23;
// Memory and LOADC base field meaning "address is the immediate alone".
constexpr std::uint8_t kAbsolute = 0xFF;
constexpr std::uint32_t kDefaultRam = 4096;
constexpr std::uint32_t kMaxRam = 1u << 16;
constexpr std::uint32_t kOutputCap = 4096;
constexpr std::uint8_t kProgramVersion = 1;

const char* op_name(std::uint8_t op);

// One 8-byte record: op, a, b, c, imm (big-endian). Records are not
// validated on decode, so data words can live in the code segment.
struct Instr {
  std::uint8_t op = 0;
  std::uint8_t a = 0, b = 0, c = 0;
  std::int32_t imm = 0;

  static Instr make(Op o, std::uint8_t a = 0, std::uint8_t b = 0, std::uint8_t c = 0,
                    std::int32_t imm = 0) {
    return Instr{static_cast<std::uint8_t>(o), a, b, c, imm};
  }
  static Instr from_word(std::uint64_t w);
  std::uint64_t word() const;
  // True when the op is known and every register field it reads is in range.
  bool well_formed() const;
  friend bool operator==(const Instr&, const Instr&) = default;
};

class Program {
 public:
  Program() = default;
  explicit Program(std::vector<Instr> code, std::uint32_t ram_bytes = kDefaultRam);

  // Layout: version(1) | ram_bytes(4) | count(4) | records. Throws kMalformed.
  static Program decode(ByteView bytes);
  Bytes encode() const;
  std::string digest_hex() const;

  const std::vector<Instr>& code() const { return code_; }
  std::size_t size() const { return code_.size(); }
  std::uint32_t ram_bytes() const { return ram_; }
  bool all_well_formed() const;

  friend bool operator==(const Program& x, const Program& y) {
    return x.ram_ == y.ram_ && x.code_ == y.code_;
  }

 private:
  std::vector<Instr> code_;
  std::uint32_t ram_ = kDefaultRam;
};

enum class Status : std::uint8_t { kRunning = 0, kAccept = 1, kReject = 2 };

struct MachineState {
  std::uint32_t pc = 0;
  Status status = Status::kRunning;
  std::uint32_t cursor = 0;
  std::uint32_t out_len = 0;
  std::array<std::uint64_t, 8> regs{};
  Bytes ram;

  static constexpr std::size_t kHeaderBytes = 4 + 1 + 4 + 4 + 64;
  bool halted() const { return status != Status::kRunning; }
  // pc | status | cursor | out_len | regs | ram, integers big-endian.
  Bytes serialize() const;
  void serialize_into(Bytes& out) const;
  static MachineState deserialize(ByteView bytes, std::uint32_t ram_bytes);
  friend bool operator==(const MachineState&, const MachineState&) = default;
};

std::size_t state_size(const Program& p);
MachineState initial_state(const Program& p);

// Advances one instruction in place; WRITE bytes go to *out when non-null.
// Throws kState when the state is already halted.
void step_inplace(MachineState& s, const Program& p, ByteView input, Bytes* out);
MachineState step(const MachineState& s, const Program& p, ByteView input);

enum class Verdict { kAccept, kReject, kTimeout };
const char* verdict_name(Verdict v);

struct RunResult {
  Verdict verdict = Verdict::kTimeout;
  std::uint64_t steps = 0;
  Bytes output;
  std::optional<std::vector<Bytes>> trace;  // serialized states 0..T
};

RunResult run(const Program& p, ByteView input, std::uint64_t step_cap,
              bool record_trace = false);
// Calls visit on state 0 and after every step; the state is only valid for
// the duration of the call.
RunResult run_visit(const Program& p, ByteView input, std::uint64_t step_cap,
                    const std::function<void(const MachineState&)>& visit);

constexpr std::uint64_t kTimeBoundCap = std::uint64_t{1} << 40;
// min(n^ceil(log2 n), 2^40)
std::uint64_t t_bound(std::uint64_t n);

}  // namespace romlab

#endif  // ROMLAB_VM_HPP_
