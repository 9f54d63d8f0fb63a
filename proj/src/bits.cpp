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

#include "romlab/bits.hpp"

#include <algorithm>

#include "romlab/error.hpp"

namespace romlab {
namespace {

std::size_t byte_len(std::size_t nbits) { return (nbits + 7) / 8; }

void mask_tail(Bytes& b, std::size_t nbits) {
  if (nbits % 8 != 0 && !b.empty()) {
    b.back() &= static_cast<std::uint8_t>(0xFF << (8 - nbits % 8));
  }
}

int nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Bits::Bits(Bytes bytes, std::size_t nbits) : bytes_(std::move(bytes)), nbits_(nbits) {
  bytes_.resize(byte_len(nbits), 0);
  mask_tail(bytes_, nbits_);
}

Bits Bits::from_bytes(ByteView bytes) {
  return Bits(Bytes(bytes.begin(), bytes.end()), bytes.size() * 8);
}

Bits Bits::zeros(std::size_t nbits) { return Bits(Bytes(byte_len(nbits), 0), nbits); }

bool Bits::bit(std::size_t i) const {
  if (i >= nbits_) fail(ErrorCode::kInvalidArgument, "bit index out of range");
  return (bytes_[i / 8] >> (7 - i % 8)) & 1;
}

void Bits::set_bit(std::size_t i, bool v) {
  if (i >= nbits_) fail(ErrorCode::kInvalidArgument, "bit index out of range");
  const auto m = static_cast<std::uint8_t>(1 << (7 - i % 8));
  if (v) {
    bytes_[i / 8] |= m;
  } else {
    bytes_[i / 8] &= static_cast<std::uint8_t>(~m);
  }
}

void Bits::flip(std::size_t i) { set_bit(i, !bit(i)); }

Bits Bits::resized(std::size_t nbits) const {
  Bytes b(bytes_.begin(), bytes_.begin() + std::min(bytes_.size(), byte_len(nbits)));
  return Bits(std::move(b), nbits);
}

void Bits::append(const Bits& other) {
  if (nbits_ % 8 == 0) {
    bytes_.insert(bytes_.end(), other.bytes_.begin(), other.bytes_.end());
    nbits_ += other.nbits_;
    return;
  }
  const std::size_t total = nbits_ + other.nbits_;
  bytes_.resize(byte_len(total), 0);
  for (std::size_t i = 0; i < other.nbits_; ++i) {
    const std::size_t j = nbits_ + i;
    if (other.bit(i)) bytes_[j / 8] |= static_cast<std::uint8_t>(1 << (7 - j % 8));
  }
  nbits_ = total;
}

std::string Bits::hex() const { return to_hex(bytes_); }

std::string to_hex(ByteView bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 15]);
  }
  return s;
}

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) fail(ErrorCode::kInvalidArgument, "odd-length hex string");
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int hi = nibble(hex[2 * i]);
    const int lo = nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) fail(ErrorCode::kInvalidArgument, "bad hex digit");
    out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return out;
}

Bytes concat(std::initializer_list<ByteView> parts) {
  std::size_t n = 0;
  for (auto p : parts) n += p.size();
  Bytes out;
  out.reserve(n);
  for (auto p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace romlab
