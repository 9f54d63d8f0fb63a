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

#ifndef ROMLAB_DEMOS_HPP_
#define ROMLAB_DEMOS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "romlab/ensembles.hpp"
#include "romlab/relations.hpp"
#include "romlab/report.hpp"

namespace romlab {

struct DemoConfig {
  std::string name;
  std::optional<std::uint64_t> ensemble;  // all default entries when unset
  std::optional<std::string> scheme;      // rom-gap: one variant instead of all three
  std::uint64_t k = 32;
  std::uint64_t trials = 100;        // trials of the attacks that must always win
  std::uint64_t rom_trials = 10000;  // random-oracle trials
  std::uint64_t impl_trials = 2;     // implementation trials of the proof-based games
  std::uint64_t seed = 0;
};

struct DemoOutcome {
  std::vector<GameReport> reports;
  // Reports whose probability-1 claim did not hold.
  std::vector<std::string> failed;
  bool ok() const { return failed.empty(); }
};

// correlation, rom-gap, restricted, product, multi, nissim. Throws kConfig.
DemoOutcome run_demo(const DemoConfig& config);

struct DemoEntry {
  std::string name;
  std::string claim;
  std::string command;
};
// Every demo with the claim it exercises and the command that runs it.
const std::vector<DemoEntry>& demo_list();

// Builtins plus kh with l_out(k) = k/4 ("kh-quarter") and l_out(k) = 1
// ("kh-bit"), finalized.
RegistryPtr demo_registry();

// Fraction of random oracles O for which some seed s of k bits has
// O(x_j) = f^i_s(x_j) for every multi-invocation input x_j of s.
GameReport multi_rom_membership(RegistryPtr reg, EnsembleId i, std::uint64_t k,
                                std::uint64_t trials, std::uint64_t master_seed);

// Nissim's ensemble avoiding R = {(x, y) : the top d bits of y equal the top
// d bits of h(x)} at l_in = l_out = 8, t blocks, over every x in {0,1}^8.
// successes counts seeds with some x in relation; query_counts["violations"]
// counts x where some block avoided R yet f_s(x) did not.
GameReport nissim_check(unsigned density_bits, std::uint64_t t_blocks, std::uint64_t seeds,
                        std::uint64_t master_seed);

}  // namespace romlab

#endif  // ROMLAB_DEMOS_HPP_
