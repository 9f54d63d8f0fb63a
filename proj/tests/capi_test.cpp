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

#include <cstring>
#include <string>

#include "json.hpp"
#include "romlab/ensembles.hpp"
#include "romlab/romlab.h"
#include "test_programs.hpp"

namespace {

using romlab::Bytes;

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(romlab_version(), "1.0.0");
  EXPECT_STREQ(romlab_status_name(ROMLAB_OK), "ok");
  EXPECT_STREQ(romlab_status_name(ROMLAB_E_CONFIG), "config");
}

TEST(CApi, GameReportAccessors) {
  romlab_report* r = nullptr;
  ASSERT_EQ(romlab_run_game("euf-cma-rom", "relation", "random-forger:2", 16, 20, 4, 3, &r),
            ROMLAB_OK)
      << romlab_last_error();
  EXPECT_STREQ(romlab_last_error(), "");
  EXPECT_STREQ(romlab_report_game(r), "euf-cma-rom");
  EXPECT_EQ(romlab_report_trials(r), 20u);
  EXPECT_EQ(romlab_report_successes(r), 0u);
  EXPECT_EQ(romlab_report_rate(r), 0.0);
  double bound = -1;
  EXPECT_EQ(romlab_report_bound(r, &bound), 1);
  EXPECT_GT(bound, 0.0);
  std::uint64_t q = 12345;
  EXPECT_EQ(romlab_report_query_count(r, "no-such-counter", &q), 0);
  EXPECT_EQ(q, 12345u);
  const auto j = nlohmann::json::parse(romlab_report_json(r));
  EXPECT_EQ(j["trials"], 20);
  EXPECT_EQ(j["ensemble"], 3);
  EXPECT_EQ(romlab_report_write(r, "/nonexistent-dir/r.json"), ROMLAB_E_IO);
  romlab_report_free(r);
}

TEST(CApi, ImplementationGameHasNoBound) {
  romlab_report* r = nullptr;
  ASSERT_EQ(romlab_run_game("euf-cma-impl", "universal", "keyonly", 32, 3, 1, 4, &r), ROMLAB_OK)
      << romlab_last_error();
  EXPECT_EQ(romlab_report_successes(r), 3u);
  EXPECT_EQ(romlab_report_bound(r, nullptr), 0);
  romlab_report_free(r);
}

TEST(CApi, ErrorsCarryAMessage) {
  romlab_report* r = nullptr;
  EXPECT_EQ(romlab_run_game("no-game", nullptr, "keyonly", 32, 1, 0, -1, &r), ROMLAB_E_CONFIG);
  EXPECT_EQ(r, nullptr);
  EXPECT_GT(std::strlen(romlab_last_error()), 0u);
  EXPECT_EQ(romlab_run_game("euf-cma-rom", "relation", "keyonly", 32, 1, 0, -1, nullptr),
            ROMLAB_E_INVALID_ARGUMENT);
  EXPECT_EQ(romlab_estimate_evasive("rf:77", "fixed", 16, 1, 0, &r), ROMLAB_E_CONFIG);
  romlab_report_free(nullptr);
  romlab_demo_free(nullptr);
  romlab_bytes_free(nullptr);
}

TEST(CApi, EncryptionIsTheDefaultSchemeForIndGames) {
  romlab_report* r = nullptr;
  ASSERT_EQ(romlab_run_game("ind-rom", nullptr, "magic-pt", 32, 50, 2, -1, &r), ROMLAB_OK)
      << romlab_last_error();
  double bound = 0;
  EXPECT_EQ(romlab_report_bound(r, &bound), 1);
  EXPECT_EQ(bound, 0.5);
  romlab_report_free(r);
}

TEST(CApi, Evasiveness) {
  romlab_report* r = nullptr;
  ASSERT_EQ(romlab_estimate_evasive("rf:3", "random-forger:4", 16, 100, 1, &r), ROMLAB_OK);
  EXPECT_STREQ(romlab_report_game(r), "evasive");
  std::uint64_t q = 0;
  EXPECT_EQ(romlab_report_query_count(r, "adversary", &q), 1);
  EXPECT_GT(q, 0u);
  romlab_report_free(r);
}

TEST(CApi, DemoResultAndList) {
  romlab_demo_result* d = nullptr;
  ASSERT_EQ(romlab_run_demo("correlation", 3, nullptr, 16, 4, 100, 0, 7, &d), ROMLAB_OK)
      << romlab_last_error();
  ASSERT_GT(romlab_demo_report_count(d), 0u);
  EXPECT_EQ(romlab_demo_failure_count(d), 0u);
  EXPECT_EQ(romlab_demo_failure(d, 0), nullptr);
  EXPECT_EQ(romlab_demo_report(d, romlab_demo_report_count(d)), nullptr);
  const auto arr = nlohmann::json::parse(romlab_demo_json(d));
  EXPECT_EQ(arr.size(), romlab_demo_report_count(d));
  EXPECT_STREQ(romlab_report_game(romlab_demo_report(d, 0)), "correlation");
  romlab_demo_free(d);
  EXPECT_EQ(romlab_run_demo("no-demo", -1, nullptr, 0, 0, 0, 0, 0, &d), ROMLAB_E_CONFIG);

  ASSERT_EQ(romlab_demo_list_count(), 6u);
  for (size_t i = 0; i < romlab_demo_list_count(); ++i) {
    EXPECT_NE(romlab_demo_list_name(i), nullptr);
    EXPECT_NE(romlab_demo_list_claim(i), nullptr);
    EXPECT_NE(romlab_demo_list_command(i), nullptr);
  }
  EXPECT_EQ(romlab_demo_list_name(6), nullptr);
}

TEST(CApi, Manifest) {
  const std::string m = romlab_registry_manifest();
  EXPECT_NE(m.find("3 kh k k "), std::string::npos);
}

TEST(CApi, NamedPrograms) {
  romlab_bytes* b = nullptr;
  ASSERT_EQ(romlab_program_named("universal", &b), ROMLAB_OK);
  EXPECT_GT(romlab_bytes_size(b), 0u);
  romlab_bytes_free(b);
  ASSERT_EQ(romlab_program_named("ensemble:3", &b), ROMLAB_OK);
  const Bytes kh(romlab_bytes_data(b), romlab_bytes_data(b) + romlab_bytes_size(b));
  EXPECT_EQ(romlab::Program::decode(kh),
            romlab::default_registry()->spec(romlab::EnsembleId{3}).program);
  romlab_bytes_free(b);
  EXPECT_EQ(romlab_program_named("ensemble:0", &b), ROMLAB_E_CONFIG);
  EXPECT_EQ(romlab_program_named("sorting", &b), ROMLAB_E_CONFIG);
}

TEST(CApi, ProveAndVerify) {
  const Bytes prog = romlab::testing::countdown(6).encode();
  romlab_bytes* proof = nullptr;
  ASSERT_EQ(romlab_csproof_prove(prog.data(), prog.size(), nullptr, 0, 20, 64, 9, &proof),
            ROMLAB_OK)
      << romlab_last_error();
  Bytes p(romlab_bytes_data(proof), romlab_bytes_data(proof) + romlab_bytes_size(proof));
  romlab_bytes_free(proof);
  int accept = -1;
  ASSERT_EQ(romlab_csproof_verify(prog.data(), prog.size(), nullptr, 0, 20, 64, 9, p.data(),
                                  p.size(), &accept),
            ROMLAB_OK);
  EXPECT_EQ(accept, 1);
  EXPECT_EQ(romlab_csproof_verify(prog.data(), prog.size(), nullptr, 0, 20, 64, 10, p.data(),
                                  p.size(), &accept),
            ROMLAB_OK);
  EXPECT_EQ(accept, 0);
  p[p.size() / 2] ^= 1;
  EXPECT_EQ(romlab_csproof_verify(prog.data(), prog.size(), nullptr, 0, 20, 64, 9, p.data(),
                                  p.size(), &accept),
            ROMLAB_OK);
  EXPECT_EQ(accept, 0);
  // countdown(6) needs 14 steps.
  EXPECT_EQ(romlab_csproof_prove(prog.data(), prog.size(), nullptr, 0, 13, 64, 9, &proof),
            ROMLAB_E_INVALID_ARGUMENT);
  const std::uint8_t junk[] = {1, 2, 3};
  EXPECT_EQ(romlab_csproof_prove(junk, 3, nullptr, 0, 20, 64, 9, &proof), ROMLAB_E_MALFORMED);
}

}  // namespace
