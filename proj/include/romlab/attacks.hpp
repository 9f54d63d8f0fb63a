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

#ifndef ROMLAB_ATTACKS_HPP_
#define ROMLAB_ATTACKS_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "romlab/bits.hpp"
#include "romlab/ensembles.hpp"
#include "romlab/length.hpp"
#include "romlab/report.hpp"
#include "romlab/schemes.hpp"

namespace romlab {

// A claimed member (x, y) of some relation.
struct Claim {
  Bytes x;
  Bits y;
};
struct TupleClaim {
  std::vector<Bytes> xs;
  std::vector<Bits> ys;
};

// (s, f_s(s)), a member of rf(i) for every s.
Claim identity_attack(const Registry& reg, EnsembleId i, ByteView seed);
// The prefix machine: x = l_in(k)-prefix of s, y = f_s(x).
Claim prefix_attack(const Registry& reg, EnsembleId i, const LengthFunction& in_len,
                    ByteView seed);
// x = s_1, the first of the m seed blocks, y = f'_seed(x). Throws kConfig
// when |seed| is not a multiple of m bytes.
Claim product_attack(const Registry& reg, EnsembleId product, std::uint64_t m, ByteView seed);
// x_j = (j, s_j) for j = 1..k, plus (j, 0) for j = k+1..2k when padded.
TupleClaim multi_attack(const Registry& reg, EnsembleId i, ByteView seed, bool padded = false);

// The ensemble whose Eval is the prime view of i. Throws kConfig when it
// is not registered.
EnsembleId prime_index(const Registry& reg, EnsembleId i);

// <i', s, pi> for x = <i', s>, y = f'_s(x), i' = prime_index(i), with pi
// proved at parameter n + k against the double-prime view of f_s. Throws
// kInvalidArgument when the statement is false, which cannot happen for a
// registered ensemble the universal machine supports.
Bytes csproof_forge(RegistryPtr reg, EnsembleId i, ByteView seed, std::uint64_t k);
// The same forge run against whatever raw oracle the adversary holds, x
// built from the index ip directly. Against a random oracle the statement
// is false and this throws kInvalidArgument.
Bytes csproof_forge_against(const Registry& reg, EnsembleId ip, ByteView seed, std::uint64_t k,
                            const OracleHandle& oracle);

// Forge-then-log against f_s for the transcript relation: x = <i, s>,
// y = f_s(x), pi proved at n + l against f_s, then the bumped verifier's
// queries recorded with their answers. Every output is f_s of its input.
TupleClaim transcript_attack(RegistryPtr reg, EnsembleId i, ByteView seed);

// The trigger message the key-only adversary outputs for variant v given
// seed s: s for the relation scheme, <i', s> for the universal one and the
// proof message for the csproof one.
Bytes key_only_message(const SignatureScheme& scheme, EnsembleId i, ByteView seed,
                       std::uint64_t k);

struct Forgery {
  Bytes msg;
  Signature sig;
};
// Reads s from vk and outputs (msg, empty magic signature).
Forgery key_only_forge(const ImplementedScheme& inst, const VerifyKey& vk);

// The relation a relation-variant scheme implemented with ensemble i is
// bound to: rf of the prime view of i.
Relation bound_relation(RegistryPtr reg, EnsembleId i);
// closed_registry() with the scheme for variant v, bound for ensemble i.
SignatureScheme make_scheme(Variant v, EnsembleId i);

struct AdversaryId {
  enum class Kind { kIdentity, kKeyOnly, kCsForge, kProduct, kMulti, kMagicPt, kCcaReveal, kRandomForger };
  Kind kind = Kind::kKeyOnly;
  std::uint64_t budget = 0;
  std::string name() const;
};
// identity, keyonly, csforge, product, multi, magic-pt, cca-reveal,
// random-forger:<b>. Throws kConfig.
AdversaryId parse_adversary(std::string_view id);

enum class GameKind { kEufCmaRom, kEufCmaImpl, kTotalBreakImpl, kIndRom, kIndImpl, kCcaKeyRecovery };
const char* game_name(GameKind g);
GameKind parse_game(std::string_view name);
bool is_implementation_game(GameKind g);

struct GameConfig {
  GameKind game = GameKind::kEufCmaRom;
  // base, relation, universal, csproof; encryption for the ind and cca games.
  std::string scheme = "csproof";
  AdversaryId adversary;
  std::uint64_t k = 32;
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  // Ensemble implementing the oracle, or the one the relation scheme is
  // bound to in the random oracle games.
  EnsembleId ensemble{3};
};

// Number of probe messages the total-break check signs with both keys.
constexpr int kProbeMessages = 10;

// Success predicates are evaluated here, never by the adversary. Throws
// kConfig for incompatible scheme, adversary and game.
GameReport run_game(const GameConfig& config);

}  // namespace romlab

#endif  // ROMLAB_ATTACKS_HPP_
