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

#ifndef ROMLAB_LENGTH_HPP_
#define ROMLAB_LENGTH_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>

namespace romlab {

// A length function k -> l(k) measured in bits.
class LengthFunction {
 public:
  enum class Kind { kIdentity, kAffine, kTable, kScaled };

  LengthFunction();  // identity
  static LengthFunction identity();
  // floor(num * k / den) + offset
  static LengthFunction affine(std::int64_t num, std::int64_t den, std::int64_t offset);
  static LengthFunction constant(std::uint64_t value);
  static LengthFunction table(std::map<std::uint64_t, std::uint64_t> values);
  // l'(k) = m * base(k / m), defined when m divides k.
  static LengthFunction scaled(const LengthFunction& base, std::uint64_t m);

  Kind kind() const { return kind_; }
  std::optional<std::uint64_t> try_eval(std::uint64_t k) const;
  // Throws kInvalidArgument when undefined at k.
  std::uint64_t operator()(std::uint64_t k) const;
  std::string describe() const;

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  std::int64_t offset() const { return offset_; }
  const std::map<std::uint64_t, std::uint64_t>& values() const { return table_; }
  const LengthFunction* base() const { return base_.get(); }
  std::uint64_t factor() const { return m_; }

 private:
  Kind kind_ = Kind::kIdentity;
  std::int64_t num_ = 1, den_ = 1, offset_ = 0;
  std::map<std::uint64_t, std::uint64_t> table_;
  std::shared_ptr<const LengthFunction> base_;
  std::uint64_t m_ = 1;
};

// Every length function in the laboratory must stay below this polynomial
// envelope on the supported parameter range.
constexpr std::uint64_t kMaxSecurityParameter = 1u << 16;
std::uint64_t polynomial_cap(std::uint64_t k);

}  // namespace romlab

#endif  // ROMLAB_LENGTH_HPP_
