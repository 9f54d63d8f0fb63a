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

#ifndef ROMLAB_RELATIONS_HPP_
#define ROMLAB_RELATIONS_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "romlab/bits.hpp"
#include "romlab/csproof.hpp"
#include "romlab/ensembles.hpp"
#include "romlab/length.hpp"
#include "romlab/report.hpp"

namespace romlab {

// A membership predicate over (input tuple, output tuple). Lengths are in
// bits and indexed by the security parameter k of the oracle under test:
// arity(k) inputs of in_len(k) bits each, answered with out_len(k) bits.
struct Relation {
  using Predicate = std::function<bool(const std::vector<Bytes>& xs, const std::vector<Bits>& ys)>;

  std::string name;
  bool multi = false;
  std::function<std::size_t(std::uint64_t k)> arity = [](std::uint64_t) { return 1; };
  std::optional<LengthFunction> in_len;
  LengthFunction out_len;
  Predicate predicate;
  // Max over inputs of the fraction of outputs in relation, when known.
  std::function<std::optional<double>(std::uint64_t k)> density;

  // Malformed tuples and evaluation failures are non-members.
  bool contains(const std::vector<Bytes>& xs, const std::vector<Bits>& ys) const;
  bool contains(ByteView x, const Bits& y) const;
  std::optional<double> density_bound(std::uint64_t k) const;
};

using RegistryPtr = std::shared_ptr<const Registry>;

// (x, y) with y = f^i_x(x), the seed read from x itself.
Relation rf(RegistryPtr reg, EnsembleId i);
// x = <i, s> and y = f^i_s(x), decided by running the universal machine.
Relation ru(RegistryPtr reg);

// Largest z-search allowed by the restricted relations, in bits.
constexpr std::uint64_t kMaxGapBits = 20;
// Exists z with |x| = l_in(|xz|) and y = f^i_{xz}(x).
Relation restricted_a(RegistryPtr reg, EnsembleId i, const LengthFunction& in_len);
// Exists z with |xz| = min{K : l_in(K) = |x|} and y = f^i_{xz}(x).
Relation restricted_b(RegistryPtr reg, EnsembleId i, const LengthFunction& in_len);

// Copy of base registered with l_in(k) = k/m, the geometry the product
// relation needs.
EnsembleId register_split_base(Registry& reg, EnsembleId base, std::uint64_t m);
// (s, y): the first l_out(k) bits of y equal f^base_s(l_in(k)-prefix of s),
// where |s| = k = m * l_in(k).
Relation product_relation(RegistryPtr reg, EnsembleId base, std::uint64_t m);

// x_j = u16(j << 1 | b_j) for j = 1..k, s = b_1..b_k, y_j = f^i_s(x_j). The
// padded variant appends x_j for j = k+1..2k, each carrying bit 0.
Relation multi(RegistryPtr reg, EnsembleId i, bool padded = false);
Bytes multi_input(std::uint64_t j, bool bit);

// The statement (M_U, (x, y), t_bound(n)) with n = 8|x| + |y|.
Statement universal_statement(const Registry& reg, ByteView x, const Bits& y);
// ((x, pi, q_1..q_m), (y, phi, a_1..a_m)): all outputs share one length l and
// the bumped verifier at parameter n + l accepts pi when its queries are
// answered from the tuple, in order.
Relation cs_transcript(RegistryPtr reg);

Relation null_relation();

// rf:<i>, ru, ra:<i>, rb:<i> (l_in(k) = k - 8), rprod:<i>:<m>, rmulti:<i>,
// rcs, null. Throws kConfig.
Relation parse_relation(RegistryPtr reg, std::string_view id);

// Attackers for evasiveness estimation: fixed (outputs the zero tuple
// without querying), random-forger:<b> and exhaustive:<b> (query b inputs at
// random or in counter order and output the first member found).
struct EvasionAttacker {
  enum class Kind { kFixed, kRandom, kExhaustive };
  Kind kind = Kind::kFixed;
  std::uint64_t budget = 0;
  std::string name() const;
};
EvasionAttacker parse_evasion_attacker(std::string_view id);

GameReport estimate_evasiveness(const Relation& r, const EvasionAttacker& attacker,
                                std::uint64_t k, std::uint64_t trials,
                                std::uint64_t master_seed);

}  // namespace romlab

#endif  // ROMLAB_RELATIONS_HPP_
