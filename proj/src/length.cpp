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

#include "romlab/length.hpp"

#include "romlab/error.hpp"

namespace romlab {

namespace {
__extension__ using Wide = __int128;
}  // namespace

std::uint64_t polynomial_cap(std::uint64_t k) { return 64 * k * k + 64; }

LengthFunction::LengthFunction() = default;

LengthFunction LengthFunction::identity() { return LengthFunction(); }

LengthFunction LengthFunction::affine(std::int64_t num, std::int64_t den,
                                      std::int64_t offset) {
  if (den <= 0) fail(ErrorCode::kInvalidArgument, "affine length: denominator must be positive");
  if (num < 0 || num > 64 * den) {
    fail(ErrorCode::kInvalidArgument, "affine length: slope outside the polynomial cap");
  }
  LengthFunction f;
  f.kind_ = Kind::kAffine;
  f.num_ = num;
  f.den_ = den;
  f.offset_ = offset;
  return f;
}

LengthFunction LengthFunction::constant(std::uint64_t value) {
  return affine(0, 1, static_cast<std::int64_t>(value));
}

LengthFunction LengthFunction::table(std::map<std::uint64_t, std::uint64_t> values) {
  for (const auto& [k, v] : values) {
    if (v > polynomial_cap(k)) {
      fail(ErrorCode::kInvalidArgument, "table length: value outside the polynomial cap");
    }
  }
  LengthFunction f;
  f.kind_ = Kind::kTable;
  f.table_ = std::move(values);
  return f;
}

LengthFunction LengthFunction::scaled(const LengthFunction& base, std::uint64_t m) {
  if (m == 0) fail(ErrorCode::kInvalidArgument, "scaled length: m must be positive");
  LengthFunction f;
  f.kind_ = Kind::kScaled;
  f.base_ = std::make_shared<const LengthFunction>(base);
  f.m_ = m;
  return f;
}

std::optional<std::uint64_t> LengthFunction::try_eval(std::uint64_t k) const {
  switch (kind_) {
    case Kind::kIdentity:
      return k;
    case Kind::kAffine: {
      const auto v = static_cast<std::int64_t>((static_cast<Wide>(num_) * k) / den_) + offset_;
      if (v < 0) return std::nullopt;
      return static_cast<std::uint64_t>(v);
    }
    case Kind::kTable: {
      auto it = table_.find(k);
      if (it == table_.end()) return std::nullopt;
      return it->second;
    }
    case Kind::kScaled: {
      if (k % m_ != 0) return std::nullopt;
      auto v = base_->try_eval(k / m_);
      if (!v) return std::nullopt;
      return *v * m_;
    }
  }
  return std::nullopt;
}

std::uint64_t LengthFunction::operator()(std::uint64_t k) const {
  auto v = try_eval(k);
  if (!v) fail(ErrorCode::kInvalidArgument, "length function undefined at k=" + std::to_string(k));
  return *v;
}

std::string LengthFunction::describe() const {
  switch (kind_) {
    case Kind::kIdentity:
      return "k";
    case Kind::kAffine: {
      std::string s;
      if (num_ == 0) return std::to_string(offset_);
      if (num_ == den_) {
        s = "k";
      } else {
        s = (num_ == 1 ? "k" : std::to_string(num_) + "k");
        if (den_ != 1) s += "/" + std::to_string(den_);
      }
      if (offset_ > 0) s += "+" + std::to_string(offset_);
      if (offset_ < 0) s += std::to_string(offset_);
      return s;
    }
    case Kind::kTable:
      return "table";
    case Kind::kScaled:
      return std::to_string(m_) + "*(" + base_->describe() + ")@k/" + std::to_string(m_);
  }
  return "?";
}

}  // namespace romlab
