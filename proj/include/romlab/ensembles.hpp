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

#ifndef ROMLAB_ENSEMBLES_HPP_
#define ROMLAB_ENSEMBLES_HPP_

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "romlab/bits.hpp"
#include "romlab/length.hpp"
#include "romlab/oracle.hpp"
#include "romlab/vm.hpp"

namespace romlab {

struct EnsembleId {
  std::uint64_t value = 0;
  friend auto operator<=>(const EnsembleId&, const EnsembleId&) = default;
};

// Declared running time of an Eval program: coef * (n + 1)^degree + constant
// steps on an n-byte machine input.
struct StepBound {
  std::uint64_t coef = 64;
  unsigned degree = 1;
  std::uint64_t constant = 256;
  std::uint64_t operator()(std::uint64_t input_bytes) const;
};

// Raw output bytes of Eval(s, x) before length adjustment. Must agree with
// the program; throws kEvalFailure where the program would reject.
using NativeEval = std::function<Bytes(ByteView seed, ByteView x)>;

struct EnsembleSpec {
  std::string name;
  Program program;
  LengthFunction out_len;
  std::optional<LengthFunction> in_len;
  StepBound steps;
  NativeEval native;
  // The program field is a placeholder; only the native rule is meaningful
  // and the universal machine rejects this index.
  bool native_only = false;
};

enum class EvalRoute { kAuto, kVm, kNative };

// Machine input for Eval: varint(|s|) || s || x.
Bytes eval_input(ByteView seed, ByteView x);
// Runs the ensemble's Eval on (s, x) and returns the raw output bytes.
Bytes eval_raw(const EnsembleSpec& spec, ByteView seed, ByteView x,
               EvalRoute route = EvalRoute::kAuto);

class Registry {
 public:
  EnsembleId add(EnsembleSpec spec);
  void finalize();
  bool finalized() const { return finalized_; }

  std::size_t size() const { return specs_.size(); }
  std::vector<EnsembleId> ids() const;
  bool contains(EnsembleId id) const { return id.value >= 1 && id.value <= specs_.size(); }
  const EnsembleSpec& spec(EnsembleId id) const;
  std::optional<EnsembleId> find(std::string_view name) const;

  std::uint64_t out_bits(EnsembleId id, std::size_t seed_bytes) const;
  Bytes eval_raw(EnsembleId id, ByteView seed, ByteView x,
                 EvalRoute route = EvalRoute::kAuto) const;
  // Output adjusted to l_out(8|s|) bits.
  Bits eval(EnsembleId id, ByteView seed, ByteView x, EvalRoute route = EvalRoute::kAuto) const;

  // One line per ensemble: index name l_in l_out program-digest.
  std::string manifest() const;
  // Available once finalized.
  const Program& universal() const;

 private:
  std::vector<EnsembleSpec> specs_;
  bool finalized_ = false;
  Program universal_;
};

// varint(i) || s
Bytes encode_pair(std::uint64_t i, ByteView seed);
std::optional<std::pair<std::uint64_t, Bytes>> decode_pair(ByteView code);

// Oracle view answering f_s(x) for a registered ensemble.
OracleHandle ensemble_oracle(std::shared_ptr<const Registry> registry, EnsembleId id,
                             Bytes seed);

EnsembleSpec constant_spec();
EnsembleSpec table_spec();
EnsembleSpec keyed_hash_spec();
EnsembleSpec keyed_hash_trunc_spec();

// f'_s(x) = f_s(tag || x) as a standalone program.
EnsembleSpec tagged_view(const EnsembleSpec& base, Tag tag);
std::string view_name(std::string_view base, Tag tag);

// F^m over concatenated seeds; both length functions must be byte aligned.
EnsembleId direct_product(Registry& registry, EnsembleId base, std::uint64_t m);

using NissimPredicate = std::function<bool(const Bits& x, const Bits& y)>;
// f_s(x) = the first block s_i with (x, s_i) outside the relation, else s_t.
EnsembleId nissim_build(Registry& registry, std::string name, NissimPredicate in_relation,
                        const LengthFunction& in_len, const LengthFunction& out_len,
                        std::uint64_t t_blocks);

// constant, table, kh, kh-trunc, then the prime view of each, not yet
// finalized so callers can append more ensembles.
Registry builtin_registry();
// The finalized built-in registry, shared.
std::shared_ptr<const Registry> default_registry();
// default_registry() plus the prime view of each of its views, so every
// default entry has its prime view registered. Shared and finalized.
std::shared_ptr<const Registry> closed_registry();
// Index of the registered ensemble named after the prime view of id.
std::optional<EnsembleId> prime_view_of(const Registry& reg, EnsembleId id);

}  // namespace romlab

#endif  // ROMLAB_ENSEMBLES_HPP_
