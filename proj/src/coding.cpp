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

#include "romlab/coding.hpp"

#include "romlab/error.hpp"

namespace romlab {

void put_varint(Bytes& out, std::uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<std::uint8_t>(v | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<std::uint8_t>(v));
}

std::optional<std::pair<std::uint64_t, std::size_t>> get_varint(ByteView in) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < in.size() && i < 10; ++i) {
    const std::uint64_t group = in[i] & 0x7F;
    if (i == 9 && group > 1) return std::nullopt;
    v |= group << (7 * i);
    if ((in[i] & 0x80) == 0) return std::make_pair(v, i + 1);
  }
  return std::nullopt;
}

void put_u16(Bytes& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_u32(Bytes& out, std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

void put_u64(Bytes& out, std::uint64_t v) {
  for (int s = 56; s >= 0; s -= 8) out.push_back(static_cast<std::uint8_t>(v >> s));
}

std::uint16_t load_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] << 8 | p[1]);
}

std::uint32_t load_u32(const std::uint8_t* p) {
  return std::uint32_t{p[0]} << 24 | std::uint32_t{p[1]} << 16 |
         std::uint32_t{p[2]} << 8 | p[3];
}

std::uint64_t load_u64(const std::uint8_t* p) {
  return std::uint64_t{load_u32(p)} << 32 | load_u32(p + 4);
}

std::uint8_t Reader::u8() { return take(1)[0]; }
std::uint16_t Reader::u16() { return load_u16(take(2).data()); }
std::uint32_t Reader::u32() { return load_u32(take(4).data()); }
std::uint64_t Reader::u64() { return load_u64(take(8).data()); }

ByteView Reader::take(std::size_t n) {
  if (n > remaining()) fail(ErrorCode::kMalformed, "truncated record");
  auto v = in_.subspan(pos_, n);
  pos_ += n;
  return v;
}

Bytes Reader::bytes(std::size_t n) {
  auto v = take(n);
  return Bytes(v.begin(), v.end());
}

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t index) {
  return mix64(mix64(mix64(master) ^ stream) ^ index);
}

}  // namespace romlab
