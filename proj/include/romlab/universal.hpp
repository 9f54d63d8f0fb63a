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

#ifndef ROMLAB_UNIVERSAL_HPP_
#define ROMLAB_UNIVERSAL_HPP_

#include <cstdint>

#include "romlab/ensembles.hpp"

namespace romlab {

// Limits of the bytecode universal machine. Ensembles outside them (or
// native-only ones) are not listed in its directory, so it rejects them.
constexpr std::size_t kUniversalMaxSeed = 64;
constexpr std::size_t kUniversalMaxX = 80;
constexpr std::size_t kUniversalMaxOutBytes = 128;
constexpr std::uint32_t kUniversalMaxGuestRam = 768;

bool universal_supports(const EnsembleSpec& spec);

// On input varint(|x|) || x || varint(|y|) || y the program parses
// x = <i, s>, emulates Eval_i on (s, x) and accepts iff the adjusted output
// equals y bit for bit.
Program build_universal(const Registry& registry);

Bytes universal_input(ByteView x, const Bits& y);
// Statement length n = 8|x| + |y| in bits.
std::uint64_t statement_bits(ByteView x, const Bits& y);
// t_bound(n) for the statement (x, y).
std::uint64_t universal_time_bound(ByteView x, const Bits& y);

}  // namespace romlab

#endif  // ROMLAB_UNIVERSAL_HPP_
