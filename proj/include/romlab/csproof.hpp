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

#ifndef ROMLAB_CSPROOF_HPP_
#define ROMLAB_CSPROOF_HPP_

#include <array>
#include <cstdint>
#include <vector>

#include "romlab/bits.hpp"
#include "romlab/oracle.hpp"
#include "romlab/vm.hpp"

namespace romlab {

// w = (M, x, t): M accepts x within t steps.
struct Statement {
  Program machine;
  Bytes input;
  std::uint64_t time_bound = 0;

  // varint(|enc M|) || enc M || varint(|x|) || x || t (8 bytes)
  Bytes serialize() const;
};

using Digest = std::array<std::uint8_t, 32>;

struct Opening {
  std::uint64_t index = 0;
  Bytes leaf;  // serialized machine state
  std::vector<Digest> path;
  friend bool operator==(const Opening&, const Opening&) = default;
};

// Merkle commitment to the trace states 0..T plus the opened leaves: the two
// boundary states first, then both ends of every probed transition. The
// challenge digests are carried in full so that every bit the verifier
// reads from the oracle is checked against the proof.
struct CsProof {
  std::uint64_t steps = 0;
  Digest root{};
  std::vector<Digest> challenges;
  std::vector<Opening> openings;

  // version(1) | T(8) | root(32) | count(2) | challenge digests(32 each) |
  // per opening: index(8) | leaf length(4) | leaf | path length(2) |
  // nodes(32 each)
  Bytes serialize() const;
  // Throws kMalformed.
  static CsProof deserialize(ByteView bytes);
  friend bool operator==(const CsProof&, const CsProof&) = default;
};

constexpr std::uint64_t kProbeBase = 8;
// m = 8 + ceil(k / 64)
std::uint64_t probe_count(std::uint64_t k);
// k + |w| in bits, the parameter used by the bumped calls.
std::uint64_t bumped_parameter(std::uint64_t k, const Statement& w);

// Hashing goes through oracle.resized(256). Throws kInvalidArgument when M
// does not accept x within t steps.
CsProof prove(std::uint64_t k, const Statement& w, const OracleHandle& oracle);
bool verify(std::uint64_t k, const Statement& w, const CsProof& proof,
            const OracleHandle& oracle);
bool verify_bytes(std::uint64_t k, const Statement& w, ByteView proof,
                  const OracleHandle& oracle);

CsProof prove_bumped(std::uint64_t k, const Statement& w, const OracleHandle& oracle);
bool verify_bumped(std::uint64_t k, const Statement& w, const CsProof& proof,
                   const OracleHandle& oracle);

// verify_bumped, recording the verifier's queries.
struct LoggedVerdict {
  bool accept = false;
  // Every query the verifier issued to the oracle it was given, in order.
  OracleHandle::Log log;
};
LoggedVerdict verify_logged(std::uint64_t k, const Statement& w, const CsProof& proof,
                            const OracleHandle& oracle);

// Process-wide call counters, so harnesses can check which entry point a
// caller went through.
struct VerifyCalls {
  std::uint64_t plain = 0;
  std::uint64_t bumped = 0;
};
VerifyCalls verify_calls();

// Commits to the honest prefix of a run that does not accept, with the last
// state replaced by an accepting copy of itself. Used to measure soundness.
CsProof prove_truncated(std::uint64_t k, const Statement& w, std::uint64_t steps,
                        const OracleHandle& oracle);

}  // namespace romlab

#endif  // ROMLAB_CSPROOF_HPP_
