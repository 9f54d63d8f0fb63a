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

#ifndef ROMLAB_ORACLE_HPP_
#define ROMLAB_ORACLE_HPP_

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "romlab/bits.hpp"
#include "romlab/length.hpp"

namespace romlab {

// Domain tags for the three derived oracles; the tag byte is prepended to
// every query issued through the view.
enum class Tag : std::uint8_t { kRaw = 0, kPrime = 1, kDoublePrime = 2, kTriplePrime = 3 };
const char* tag_name(Tag t);

// Lazily sampled random function {0,1}* -> {0,1}^l(k). Answers are a pure
// function of (sampling seed, query); the memo table only caches them.
class RandomOracle {
 public:
  static constexpr std::size_t kMemoEntries = 1u << 14;
  static constexpr std::size_t kMemoMaxQuery = 256;

  RandomOracle(std::uint64_t k, const LengthFunction& ell, std::uint64_t sampling_seed);

  std::uint64_t k() const { return k_; }
  std::uint64_t out_bits() const { return out_bits_; }
  std::uint64_t sampling_seed() const { return seed_; }

  Bits query(ByteView x);
  Bits sample(ByteView x) const;
  std::uint64_t query_count() const { return queries_; }
  std::size_t memo_size() const { return memo_.size(); }
  // Off by default: one SHA-256 block is cheaper than the table lookup for
  // the short queries the games issue.
  void set_memoize(bool on) { memoize_ = on; }

 private:
  std::uint64_t k_;
  std::uint64_t out_bits_;
  std::uint64_t seed_;
  std::uint64_t queries_ = 0;
  bool memoize_ = false;
  std::unordered_map<std::string, Bits> memo_;
};

class OracleBackend {
 public:
  virtual ~OracleBackend() = default;
  virtual std::uint64_t out_bits() const = 0;
  virtual Bits answer(ByteView x) = 0;
  virtual std::string describe() const = 0;
};

std::shared_ptr<OracleBackend> random_backend(std::shared_ptr<RandomOracle> ro);

// Query totals for one root oracle. by_tag[t] counts queries that arrived
// through a view carrying tag t; root counts every query the backend answered.
struct ViewCounters {
  std::uint64_t root = 0;
  std::array<std::uint64_t, 4> by_tag{};
  std::uint64_t direct() const { return root - by_tag[1] - by_tag[2] - by_tag[3]; }
};

// A queryable view: a backend plus an optional chain of tag, resize, budget
// and logging transformations. Copies share the underlying state.
class OracleHandle {
 public:
  using Log = std::vector<std::pair<Bytes, Bits>>;
  struct Split;

  OracleHandle() = default;
  explicit OracleHandle(std::shared_ptr<OracleBackend> backend);
  static OracleHandle random(std::uint64_t k, const LengthFunction& ell,
                             std::uint64_t sampling_seed);

  bool valid() const { return node_ != nullptr; }
  Bits query(ByteView x) const;
  std::uint64_t out_bits() const;
  Tag tag() const;
  bool splittable() const;

  Split split() const;
  OracleHandle resized(std::uint64_t bits) const;
  // Throws kBudget once more than budget queries are issued through the view.
  OracleHandle budgeted(std::uint64_t budget) const;
  // Appends (query, answer) pairs, in issue order, to *sink.
  OracleHandle logged(Log* sink) const;

  std::uint64_t query_count() const;
  const ViewCounters& counters() const;
  std::string describe() const;

 private:
  struct Root;
  struct Node;
  explicit OracleHandle(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct OracleHandle::Split {
  OracleHandle prime;
  OracleHandle double_prime;
  OracleHandle triple_prime;
};

}  // namespace romlab

#endif  // ROMLAB_ORACLE_HPP_
