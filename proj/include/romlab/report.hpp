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

#ifndef ROMLAB_REPORT_HPP_
#define ROMLAB_REPORT_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace romlab {

inline constexpr const char* kVersion = "1.0.0";

struct GameReport {
  std::string game;
  std::uint64_t k = 0;
  std::string ell;
  std::optional<std::uint64_t> ensemble;
  std::string adversary;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::optional<double> bound;
  std::uint64_t seed = 0;
  std::map<std::string, std::uint64_t> query_counts;
  double wall_ms = 0;

  double rate() const {
    return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
  }
  friend bool operator==(const GameReport&, const GameReport&) = default;
};

// Fields in this order: game, k, ell, ensemble, adversary, trials,
// successes, rate, bound, seed, query_counts, wall_ms, version.
std::string report_json(const GameReport& r);
// Throws kMalformed on missing or mistyped fields.
GameReport parse_report(std::string_view json);
// Throws kIo when the file cannot be written.
void emit_report(const GameReport& r, const std::string& path);

// Binomial standard deviation of the success count for n trials at rate p.
double binomial_sigma(std::uint64_t n, double p);

}  // namespace romlab

#endif  // ROMLAB_REPORT_HPP_
