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

// Command-line runner. Reports go to stdout as JSON (an array when a demo
// emits several) and to --out when given.
//
// Exit status: 0 on success, 1 when an outcome that should hold with
// probability one did not (or a proof was rejected), 2 on usage and
// configuration errors.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "romlab/romlab.h"

namespace {

constexpr int kOk = 0;
constexpr int kClaimFailed = 1;
constexpr int kUsage = 2;

int report_error(romlab_status s) {
  std::cerr << "romlab: " << romlab_status_name(s) << ": " << romlab_last_error() << "\n";
  return kUsage;
}

struct Bytes {
  std::vector<std::uint8_t> data;
};

std::optional<Bytes> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  Bytes b;
  b.data.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  return b;
}

bool write_file(const std::string& path, const std::uint8_t* p, std::size_t n) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(p), static_cast<std::streamsize>(n));
  return static_cast<bool>(out);
}

std::optional<Bytes> parse_hex(const std::string& s) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (s.size() % 2 != 0) return std::nullopt;
  Bytes b;
  for (std::size_t i = 0; i < s.size(); i += 2) {
    const int hi = nibble(s[i]);
    const int lo = nibble(s[i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    b.data.push_back(static_cast<std::uint8_t>(hi * 16 + lo));
  }
  return b;
}

// A file path, or "universal" / "ensemble:<i>".
std::optional<Bytes> load_program(const std::string& name) {
  if (name == "universal" || name.rfind("ensemble:", 0) == 0) {
    romlab_bytes* b = nullptr;
    if (romlab_program_named(name.c_str(), &b) != ROMLAB_OK) return std::nullopt;
    Bytes out;
    out.data.assign(romlab_bytes_data(b), romlab_bytes_data(b) + romlab_bytes_size(b));
    romlab_bytes_free(b);
    return out;
  }
  return read_file(name);
}

struct Common {
  std::uint64_t k = 32;
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  std::string out;
};

void add_common(CLI::App* app, Common& c, std::uint64_t default_trials) {
  c.trials = default_trials;
  app->add_option("--k", c.k, "security parameter in bits")->capture_default_str();
  app->add_option("--trials", c.trials, "number of trials")->capture_default_str();
  app->add_option("--seed", c.seed, "master seed")->capture_default_str();
  app->add_option("--out", c.out, "write the JSON report here");
}

int finish_report(romlab_report* r, const std::string& out, bool certain) {
  std::cout << romlab_report_json(r);
  int code = kOk;
  if (!out.empty() && romlab_report_write(r, out.c_str()) != ROMLAB_OK) code = report_error(ROMLAB_E_IO);
  if (code == kOk && certain && romlab_report_successes(r) != romlab_report_trials(r)) {
    std::cerr << "romlab: " << romlab_report_game(r) << " succeeded in "
              << romlab_report_successes(r) << " of " << romlab_report_trials(r)
              << " trials; every trial should have\n";
    code = kClaimFailed;
  }
  romlab_report_free(r);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"romlab: random-oracle methodology laboratory"};
  app.set_version_flag("--version", std::string(romlab_version()));
  app.set_config("--config", "", "TOML file with the same keys as the flags; flags win");
  app.require_subcommand(1);

  // demo
  auto* demo = app.add_subcommand("demo", "run a demonstration and check its outcomes");
  std::string demo_name;
  bool demo_list = false;
  std::int64_t demo_ensemble = -1;
  std::string demo_scheme;
  Common demo_c;
  std::uint64_t rom_trials = 10000;
  std::uint64_t impl_trials = 2;
  demo->add_option("name", demo_name, "correlation, rom-gap, restricted, product, multi or nissim");
  demo->add_flag("--list", demo_list, "print the claim behind each demo and its command");
  demo->add_option("--ensemble", demo_ensemble, "restrict to one ensemble index");
  demo->add_option("--scheme", demo_scheme, "rom-gap only: relation, universal or csproof");
  demo->add_option("--rom-trials", rom_trials, "trials for random-oracle runs")->capture_default_str();
  demo->add_option("--impl-trials", impl_trials, "trials for proof-carrying implementation runs")
      ->capture_default_str();
  add_common(demo, demo_c, 100);

  // game
  auto* game = app.add_subcommand("game", "run one security game");
  std::string game_name;
  std::string game_scheme;
  std::string adversary;
  std::int64_t game_ensemble = -1;
  Common game_c;
  game->add_option("name", game_name,
                   "euf-cma-rom, euf-cma-impl, total-break-impl, ind-rom, ind-impl or "
                   "cca-key-recovery")
      ->required();
  game->add_option("--scheme", game_scheme, "relation, universal, csproof or encryption");
  game->add_option("--adversary", adversary, "adversary identifier")->required();
  game->add_option("--ensemble", game_ensemble, "ensemble implementing the oracle");
  add_common(game, game_c, 100);

  // csproof
  auto* cs = app.add_subcommand("csproof", "prove or verify a bounded acceptance statement");
  cs->require_subcommand(1);
  std::string program;
  std::string input_hex;
  std::uint64_t time_bound = 0;
  std::uint64_t cs_k = 32;
  std::uint64_t oracle_seed = 0;
  std::string proof_path;
  for (auto* sub : {cs->add_subcommand("prove", "write a proof"),
                    cs->add_subcommand("verify", "check a proof")}) {
    sub->add_option("--program", program, "encoded program file, universal or ensemble:<i>")
        ->required();
    sub->add_option("--input", input_hex, "input as hex")->required();
    sub->add_option("--t", time_bound, "step bound")->required();
    sub->add_option("--k", cs_k, "security parameter")->capture_default_str();
    sub->add_option("--seed", oracle_seed, "seed of the random oracle")->capture_default_str();
    sub->add_option("--proof", proof_path, "proof file")->required();
  }

  // estimate evasive
  auto* estimate = app.add_subcommand("estimate", "estimate a property by sampling");
  estimate->require_subcommand(1);
  auto* evasive = estimate->add_subcommand("evasive", "attack a relation against a random oracle");
  std::string relation;
  std::string attacker = "random-forger:64";
  Common ev_c;
  evasive->add_option("--relation", relation, "rf:<i>, ru, ra:<i>, rb:<i>, rprod:<i>:<m>, rmulti:<i>, rcs")
      ->required();
  evasive->add_option("--attacker", attacker, "fixed, random-forger:<b> or exhaustive:<b>")
      ->capture_default_str();
  add_common(evasive, ev_c, 1000);

  // registry
  auto* registry = app.add_subcommand("registry", "inspect the ensemble registry");
  registry->require_subcommand(1);
  auto* reg_list = registry->add_subcommand("list", "print the manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*demo) {
    if (demo_list) {
      for (std::size_t i = 0; i < romlab_demo_list_count(); ++i) {
        std::cout << romlab_demo_list_name(i) << "\t" << romlab_demo_list_claim(i) << "\t"
                  << romlab_demo_list_command(i) << "\n";
      }
      return kOk;
    }
    if (demo_name.empty()) {
      std::cerr << demo->help();
      return kUsage;
    }
    romlab_demo_result* d = nullptr;
    const romlab_status s = romlab_run_demo(
        demo_name.c_str(), demo_ensemble, demo_scheme.empty() ? nullptr : demo_scheme.c_str(),
        demo_c.k, demo_c.trials, rom_trials, impl_trials, demo_c.seed, &d);
    if (s != ROMLAB_OK) return report_error(s);
    std::cout << romlab_demo_json(d);
    int code = kOk;
    if (!demo_c.out.empty() && romlab_demo_write(d, demo_c.out.c_str()) != ROMLAB_OK) {
      code = report_error(ROMLAB_E_IO);
    }
    for (std::size_t i = 0; i < romlab_demo_failure_count(d); ++i) {
      std::cerr << "romlab: expected outcome failed: " << romlab_demo_failure(d, i) << "\n";
      if (code == kOk) code = kClaimFailed;
    }
    romlab_demo_free(d);
    return code;
  }

  if (*game) {
    romlab_report* r = nullptr;
    const romlab_status s = romlab_run_game(
        game_name.c_str(), game_scheme.empty() ? nullptr : game_scheme.c_str(), adversary.c_str(),
        game_c.k, game_c.trials, game_c.seed, game_ensemble, &r);
    if (s != ROMLAB_OK) return report_error(s);
    // Games without an analytic bound are the implementation breaks.
    const bool certain = romlab_report_bound(r, nullptr) == 0;
    return finish_report(r, game_c.out, certain);
  }

  if (*cs) {
    const auto prog = load_program(program);
    if (!prog) {
      std::cerr << "romlab: cannot load program " << program << "\n";
      return kUsage;
    }
    const auto input = parse_hex(input_hex);
    if (!input) {
      std::cerr << "romlab: --input is not hex\n";
      return kUsage;
    }
    if (cs->got_subcommand("prove")) {
      romlab_bytes* proof = nullptr;
      const romlab_status s = romlab_csproof_prove(prog->data.data(), prog->data.size(),
                                                   input->data.data(), input->data.size(),
                                                   time_bound, cs_k, oracle_seed, &proof);
      if (s != ROMLAB_OK) return report_error(s);
      const bool ok = write_file(proof_path, romlab_bytes_data(proof), romlab_bytes_size(proof));
      std::cout << "proof " << romlab_bytes_size(proof) << " bytes\n";
      romlab_bytes_free(proof);
      if (!ok) {
        std::cerr << "romlab: cannot write " << proof_path << "\n";
        return kUsage;
      }
      return kOk;
    }
    const auto proof = read_file(proof_path);
    if (!proof) {
      std::cerr << "romlab: cannot read " << proof_path << "\n";
      return kUsage;
    }
    int accept = 0;
    const romlab_status s = romlab_csproof_verify(
        prog->data.data(), prog->data.size(), input->data.data(), input->data.size(), time_bound,
        cs_k, oracle_seed, proof->data.data(), proof->data.size(), &accept);
    if (s != ROMLAB_OK) return report_error(s);
    std::cout << (accept ? "accept" : "reject") << "\n";
    return accept ? kOk : kClaimFailed;
  }

  if (*evasive) {
    romlab_report* r = nullptr;
    const romlab_status s = romlab_estimate_evasive(relation.c_str(), attacker.c_str(), ev_c.k,
                                                    ev_c.trials, ev_c.seed, &r);
    if (s != ROMLAB_OK) return report_error(s);
    return finish_report(r, ev_c.out, false);
  }

  if (*reg_list) {
    std::cout << romlab_registry_manifest();
    return kOk;
  }
  std::cerr << app.help();
  return kUsage;
}
