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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "romlab/demos.hpp"
#include "romlab/error.hpp"
#include "romlab/report.hpp"

namespace romlab {
namespace {

GameReport sample() {
  GameReport r;
  r.game = "euf-cma-rom";
  r.k = 32;
  r.ell = "k";
  r.ensemble = 3;
  r.adversary = "random-forger:4";
  r.trials = 8;
  r.successes = 2;
  r.bound = 0.125;
  r.seed = 99;
  r.query_counts = {{"oracle", 40}, {"signing", 4}};
  r.wall_ms = 1.5;
  return r;
}

TEST(Json, FieldOrder) {
  const auto j = nlohmann::ordered_json::parse(report_json(sample()));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  const std::vector<std::string> want = {"game",      "k",    "ell",          "ensemble",
                                         "adversary", "trials", "successes",  "rate",
                                         "bound",     "seed", "query_counts", "wall_ms",
                                         "version"};
  EXPECT_EQ(keys, want);
  EXPECT_DOUBLE_EQ(j["rate"].get<double>(), 0.25);
  EXPECT_EQ(j["version"], kVersion);
}

TEST(Json, AbsentFieldsAreNull) {
  GameReport r = sample();
  r.ensemble.reset();
  r.bound.reset();
  const auto j = nlohmann::ordered_json::parse(report_json(r));
  EXPECT_TRUE(j["ensemble"].is_null());
  EXPECT_TRUE(j["bound"].is_null());
  EXPECT_EQ(parse_report(report_json(r)), r);
}

TEST(Json, RoundTrip) {
  EXPECT_EQ(parse_report(report_json(sample())), sample());
  GameReport zero;
  EXPECT_EQ(zero.rate(), 0.0);
  EXPECT_EQ(parse_report(report_json(zero)), zero);
}

TEST(Json, MalformedInputs) {
  const std::string good = report_json(sample());
  auto without = [&](const char* key) {
    auto j = nlohmann::ordered_json::parse(good);
    j.erase(key);
    return j.dump();
  };
  EXPECT_THROW(parse_report(without("trials")), Error);
  EXPECT_THROW(parse_report(without("version")), Error);
  auto j = nlohmann::ordered_json::parse(good);
  j["k"] = "thirty-two";
  EXPECT_THROW(parse_report(j.dump()), Error);
  j = nlohmann::ordered_json::parse(good);
  j["version"] = "0.0.1";
  EXPECT_THROW(parse_report(j.dump()), Error);
  EXPECT_THROW(parse_report("{"), Error);
  EXPECT_THROW(parse_report(""), Error);
}

TEST(Emit, WritesTheJsonAndReportsIoErrors) {
  const auto path = std::filesystem::temp_directory_path() / "romlab_report_test.json";
  emit_report(sample(), path.string());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), report_json(sample()));
  std::filesystem::remove(path);
  try {
    emit_report(sample(), "/nonexistent-dir/x/report.json");
    FAIL() << "expected an IO error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(Sigma, Binomial) {
  EXPECT_DOUBLE_EQ(binomial_sigma(100, 0.5), 5.0);
  EXPECT_DOUBLE_EQ(binomial_sigma(100, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(binomial_sigma(10000, 0.01), std::sqrt(99.0));
}

TEST(Demo, ListNamesEveryDemo) {
  const auto& list = demo_list();
  ASSERT_EQ(list.size(), 6u);
  for (const DemoEntry& e : list) {
    EXPECT_FALSE(e.claim.empty());
    EXPECT_EQ(e.command.rfind("romlab demo " + e.name, 0), 0u) << e.command;
  }
  EXPECT_THROW(run_demo(DemoConfig{"nope"}), Error);
}

TEST(Demo, CorrelationReportsEveryEnsemble) {
  DemoConfig c;
  c.name = "correlation";
  c.trials = 5;
  c.k = 16;
  c.seed = 3;
  const DemoOutcome out = run_demo(c);
  EXPECT_TRUE(out.ok());
  std::size_t certain = 0;
  for (const GameReport& r : out.reports) {
    if (r.game == "correlation") {
      ++certain;
      EXPECT_EQ(r.successes, r.trials);
    }
  }
  EXPECT_EQ(certain, default_registry()->size());
}

TEST(Demo, SingleEnsembleSelection) {
  DemoConfig c;
  c.name = "correlation";
  c.ensemble = 3;
  c.trials = 3;
  c.rom_trials = 100;
  const DemoOutcome out = run_demo(c);
  for (const GameReport& r : out.reports) EXPECT_EQ(r.ensemble.value_or(3), 3u);
}

TEST(Demo, NissimHasNoViolations) {
  const GameReport r = nissim_check(2, 4, 20, 1);
  EXPECT_EQ(r.query_counts.at("violations"), 0u);
  EXPECT_EQ(r.trials, 20u);
}

}  // namespace
}  // namespace romlab
