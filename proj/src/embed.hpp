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

#ifndef ROMLAB_EMBED_HPP_
#define ROMLAB_EMBED_HPP_

#include <cstdint>
#include <optional>

#include "romlab/length.hpp"
#include "romlab/vm.hpp"

namespace romlab {

// Wraps an Eval program so that it runs once per seed block with a rewritten
// input stream. With copies == 1 the guest sees varint(L) || s || tag || x;
// with copies == m each block j sees varint(L) || s_j || x_j where x_j is the
// j-th l_in(8L)/8-byte slice, and its output is cut or padded to
// l_out(8L)/8 bytes.
struct EmbedPlan {
  std::uint64_t copies = 1;
  std::optional<std::uint8_t> tag;
  LengthFunction in_len;
  LengthFunction out_len;
  std::uint32_t seed_cap = 64;
};

// Guests may not use JMPR or LOADC, nor READ with a == b.
Program embed(const Program& guest, const EmbedPlan& plan);

}  // namespace romlab

#endif  // ROMLAB_EMBED_HPP_
