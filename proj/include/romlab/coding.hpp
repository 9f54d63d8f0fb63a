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

#ifndef ROMLAB_CODING_HPP_
#define ROMLAB_CODING_HPP_

#include <cstdint>
#include <optional>
#include <utility>

#include "romlab/bits.hpp"

namespace romlab {

// Base-128 varint, low group first, high bit set on every byte but the last.
void put_varint(Bytes& out, std::uint64_t v);
// Returns the value and the number of bytes consumed, or nullopt when the
// encoding is truncated or longer than ten bytes.
std::optional<std::pair<std::uint64_t, std::size_t>> get_varint(ByteView in);

void put_u16(Bytes& out, std::uint16_t v);
void put_u32(Bytes& out, std::uint32_t v);
void put_u64(Bytes& out, std::uint64_t v);
std::uint16_t load_u16(const std::uint8_t* p);
std::uint32_t load_u32(const std::uint8_t* p);
std::uint64_t load_u64(const std::uint8_t* p);

// Cursor over a byte view that throws kMalformed when reads run past the end.
class Reader {
 public:
  explicit Reader(ByteView in) : in_(in) {}
  std::uint8_t u8();
  std::uint16_t u16();
  std::uint32_t u32();
  std::uint64_t u64();
  ByteView take(std::size_t n);
  Bytes bytes(std::size_t n);
  std::size_t remaining() const { return in_.size() - pos_; }
  bool done() const { return pos_ == in_.size(); }

 private:
  ByteView in_;
  std::size_t pos_ = 0;
};

// Stateless 64-bit mixer used to derive per-trial seeds from a master seed.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t index);

}  // namespace romlab

#endif  // ROMLAB_CODING_HPP_
