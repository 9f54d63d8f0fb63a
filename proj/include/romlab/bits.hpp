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

#ifndef ROMLAB_BITS_HPP_
#define ROMLAB_BITS_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace romlab {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

// Bit string stored MSB-first. Bits past size() in the last byte are zero,
// so equality on the byte vector is equality on the bit string.
class Bits {
 public:
  Bits() = default;
  Bits(Bytes bytes, std::size_t nbits);
  static Bits from_bytes(ByteView bytes);
  static Bits zeros(std::size_t nbits);

  std::size_t size() const noexcept { return nbits_; }
  bool empty() const noexcept { return nbits_ == 0; }
  const Bytes& bytes() const noexcept { return bytes_; }
  ByteView view() const noexcept { return bytes_; }

  bool bit(std::size_t i) const;
  void set_bit(std::size_t i, bool v);
  void flip(std::size_t i);

  // Truncates or zero-pads on the right.
  Bits resized(std::size_t nbits) const;
  void append(const Bits& other);
  std::string hex() const;

  friend bool operator==(const Bits&, const Bits&) = default;

 private:
  Bytes bytes_;
  std::size_t nbits_ = 0;
};

std::string to_hex(ByteView bytes);
Bytes from_hex(std::string_view hex);

inline ByteView as_view(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

Bytes concat(std::initializer_list<ByteView> parts);

}  // namespace romlab

#endif  // ROMLAB_BITS_HPP_
