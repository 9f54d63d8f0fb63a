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

#include "romlab/report.hpp"

#include <cmath>
#include <fstream>

#include "json.hpp"
#include "romlab/error.hpp"

namespace romlab {

using nlohmann::ordered_json;

std::string report_json(const GameReport& r) {
  ordered_json j;
  j["game"] = r.game;
  j["k"] = r.k;
  j["ell"] = r.ell;
  j["ensemble"] = r.ensemble ? ordered_json(*r.ensemble) : ordered_json(nullptr);
  j["adversary"] = r.adversary;
  j["trials"] = r.trials;
  j["successes"] = r.successes;
  j["rate"] = r.rate();
  j["bound"] = r.bound ? ordered_json(*r.bound) : ordered_json(nullptr);
  j["seed"] = r.seed;
  j["query_counts"] = ordered_json::object();
  for (const auto& [name, n] : r.query_counts) j["query_counts"][name] = n;
  j["wall_ms"] = r.wall_ms;
  j["version"] = kVersion;
  return j.dump(2) + "\n";
}

GameReport parse_report(std::string_view text) {
  try {
    const auto j = ordered_json::parse(text);
    GameReport r;
    r.game = j.at("game").get<std::string>();
    r.k = j.at("k").get<std::uint64_t>();
    r.ell = j.at("ell").get<std::string>();
    if (!j.at("ensemble").is_null()) r.ensemble = j.at("ensemble").get<std::uint64_t>();
    r.adversary = j.at("adversary").get<std::string>();
    r.trials = j.at("trials").get<std::uint64_t>();
    r.successes = j.at("successes").get<std::uint64_t>();
    if (!j.at("bound").is_null()) r.bound = j.at("bound").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& [name, n] : j.at("query_counts").items()) {
      r.query_counts[name] = n.get<std::uint64_t>();
    }
    r.wall_ms = j.at("wall_ms").get<double>();
    if (j.at("version").get<std::string>() != kVersion) {
      fail(ErrorCode::kMalformed, "report version mismatch");
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kMalformed, std::string("bad report: ") + e.what());
  }
}

void emit_report(const GameReport& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot open " + path);
  out << report_json(r);
  if (!out) fail(ErrorCode::kIo, "write failed for " + path);
}

double binomial_sigma(std::uint64_t n, double p) {
  return std::sqrt(static_cast<double>(n) * p * (1.0 - p));
}

}  // namespace romlab
