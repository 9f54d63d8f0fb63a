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

#include "romlab/demos.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "romlab/attacks.hpp"
#include "romlab/coding.hpp"
#include "romlab/error.hpp"

namespace romlab {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

Bytes random_bytes(std::mt19937_64& rng, std::size_t n) {
  Bytes b(n);
  for (auto& x : b) x = static_cast<std::uint8_t>(rng());
  return b;
}

GameReport base_report(std::string game, std::uint64_t k, std::string ell,
                       std::optional<std::uint64_t> ensemble, std::string adversary,
                       std::uint64_t trials, std::uint64_t seed) {
  GameReport r;
  r.game = std::move(game);
  r.k = k;
  r.ell = std::move(ell);
  r.ensemble = ensemble;
  r.adversary = std::move(adversary);
  r.trials = trials;
  r.seed = seed;
  return r;
}

class Demo {
 public:
  explicit Demo(const DemoConfig& c) : c_(c) {}
  DemoOutcome run();

 private:
  std::vector<EnsembleId> ensembles(const Registry& reg) const {
    if (c_.ensemble) {
      if (!reg.contains(EnsembleId{*c_.ensemble})) {
        fail(ErrorCode::kConfig, "unknown ensemble " + std::to_string(*c_.ensemble));
      }
      return {EnsembleId{*c_.ensemble}};
    }
    return default_registry()->ids();
  }
  void certain(GameReport r) {
    if (r.successes != r.trials) failed_.push_back(r.game + " ensemble " + std::to_string(r.ensemble.value_or(0)));
    reports_.push_back(std::move(r));
  }
  void bounded(GameReport r) { reports_.push_back(std::move(r)); }

  void correlation();
  void rom_gap();
  void restricted();
  void product();
  void multi_demo();
  void nissim();

  const DemoConfig& c_;
  std::vector<GameReport> reports_;
  std::vector<std::string> failed_;
};

void Demo::correlation() {
  const RegistryPtr reg = default_registry();
  const std::size_t sb = static_cast<std::size_t>(c_.k / 8);
  for (EnsembleId i : ensembles(*reg)) {
    const Relation r = rf(reg, i);
    auto t0 = Clock::now();
    GameReport rep = base_report("correlation", c_.k, reg->spec(i).out_len.describe(), i.value,
                                 "identity", c_.trials, c_.seed);
    for (std::uint64_t t = 0; t < c_.trials; ++t) {
      std::mt19937_64 rng(derive_seed(c_.seed, 0, t));
      const Claim cl = identity_attack(*reg, i, random_bytes(rng, sb));
      if (r.contains(cl.x, cl.y)) ++rep.successes;
    }
    rep.wall_ms = since(t0);
    certain(std::move(rep));

    // The same adversary against a random oracle: x = s, y = O(s).
    t0 = Clock::now();
    GameReport rom = base_report("correlation-rom", c_.k, r.out_len.describe(), i.value,
                                 "identity", c_.rom_trials, c_.seed);
    for (std::uint64_t t = 0; t < c_.rom_trials; ++t) {
      const OracleHandle o = OracleHandle::random(c_.k, r.out_len, derive_seed(c_.seed, 1, t));
      std::mt19937_64 rng(derive_seed(c_.seed, 2, t));
      const Bytes s = random_bytes(rng, sb);
      if (r.contains(s, o.query(s))) ++rom.successes;
    }
    rom.bound = r.density_bound(c_.k);
    rom.query_counts["adversary"] = c_.rom_trials;
    rom.wall_ms = since(t0);
    bounded(std::move(rom));
  }
}

void Demo::rom_gap() {
  std::vector<std::string> variants = {"relation", "universal", "csproof"};
  if (c_.scheme) variants = {*c_.scheme};
  for (const std::string& v : variants) {
    if (v != "relation" && v != "universal" && v != "csproof") {
      fail(ErrorCode::kConfig, "rom-gap runs relation, universal or csproof, not " + v);
    }
    GameConfig g;
    g.scheme = v;
    g.k = c_.k;
    g.seed = c_.seed;
    g.game = GameKind::kEufCmaRom;
    g.adversary = parse_adversary("random-forger:64");
    g.trials = c_.rom_trials;
    GameReport rom = run_game(g);
    if (!rom.bound || rom.rate() > *rom.bound + 4 * binomial_sigma(rom.trials, *rom.bound) / static_cast<double>(rom.trials)) {
      failed_.push_back("euf-cma-rom " + v + " above its bound");
    }
    bounded(std::move(rom));
    for (EnsembleId i : ensembles(*default_registry())) {
      g.ensemble = i;
      g.adversary = parse_adversary("keyonly");
      g.trials = v == "csproof" ? c_.impl_trials : c_.trials;
      for (GameKind kind : {GameKind::kEufCmaImpl, GameKind::kTotalBreakImpl}) {
        g.game = kind;
        certain(run_game(g));
      }
    }
  }
}

void Demo::restricted() {
  const RegistryPtr reg = default_registry();
  const std::size_t sb = static_cast<std::size_t>(c_.k / 8);
  const LengthFunction in_len = LengthFunction::affine(1, 1, -8);
  for (EnsembleId i : ensembles(*reg)) {
    if (!reg->spec(i).in_len || reg->spec(i).in_len->try_eval(c_.k) != c_.k) continue;
    for (int which = 0; which < 2; ++which) {
      const Relation r = which == 0 ? restricted_a(reg, i, in_len) : restricted_b(reg, i, in_len);
      auto t0 = Clock::now();
      GameReport rep = base_report(which == 0 ? "restricted-a" : "restricted-b", c_.k,
                                   r.out_len.describe(), i.value, "prefix", c_.trials, c_.seed);
      for (std::uint64_t t = 0; t < c_.trials; ++t) {
        std::mt19937_64 rng(derive_seed(c_.seed, 3, t));
        const Claim cl = prefix_attack(*reg, i, in_len, random_bytes(rng, sb));
        if (r.contains(cl.x, cl.y)) ++rep.successes;
      }
      rep.wall_ms = since(t0);
      certain(std::move(rep));
    }
  }
}

void Demo::product() {
  constexpr std::uint64_t m = 4;
  const EnsembleId base{c_.ensemble.value_or(3)};
  Registry local = builtin_registry();
  if (!local.contains(base)) fail(ErrorCode::kConfig, "unknown ensemble " + std::to_string(base.value));
  const EnsembleId split = register_split_base(local, base, m);
  const EnsembleId prod = direct_product(local, split, m);
  local.finalize();
  const RegistryPtr reg = std::make_shared<const Registry>(std::move(local));
  const Relation r = product_relation(reg, split, m);
  const std::uint64_t K = m * c_.k;

  auto t0 = Clock::now();
  GameReport rep = base_report("product", K, r.out_len.describe(), prod.value, "product",
                               c_.trials, c_.seed);
  for (std::uint64_t t = 0; t < c_.trials; ++t) {
    std::mt19937_64 rng(derive_seed(c_.seed, 4, t));
    const Claim cl = product_attack(*reg, prod, m, random_bytes(rng, static_cast<std::size_t>(K / 8)));
    if (r.contains(cl.x, cl.y)) ++rep.successes;
  }
  rep.wall_ms = since(t0);
  certain(std::move(rep));

  GameReport rom = estimate_evasiveness(r, parse_evasion_attacker("random-forger:1"), K,
                                        c_.rom_trials, c_.seed);
  rom.game = "product-rom";
  rom.ensemble = prod.value;
  bounded(std::move(rom));
}

void Demo::multi_demo() {
  const RegistryPtr reg = demo_registry();
  const EnsembleId i{c_.ensemble.value_or(3)};
  const EnsembleId bit = *reg->find("kh-bit");
  constexpr std::uint64_t k = 16;
  for (int padded = 0; padded < 2; ++padded) {
    const EnsembleId e = padded ? bit : i;
    const Relation r = multi(reg, e, padded != 0);
    auto t0 = Clock::now();
    GameReport rep = base_report(padded ? "multi-padded" : "multi", k, r.out_len.describe(),
                                 e.value, "multi", c_.trials, c_.seed);
    for (std::uint64_t t = 0; t < c_.trials; ++t) {
      std::mt19937_64 rng(derive_seed(c_.seed, 5, t));
      const TupleClaim cl = multi_attack(*reg, e, random_bytes(rng, k / 8), padded != 0);
      if (r.contains(cl.xs, cl.ys)) ++rep.successes;
    }
    rep.wall_ms = since(t0);
    certain(std::move(rep));
  }
  bounded(multi_rom_membership(reg, *reg->find("kh-quarter"), 8, c_.rom_trials, c_.seed));
}

void Demo::nissim() {
  for (unsigned d : {1u, 4u}) bounded(nissim_check(d, 4, 200, c_.seed));
  for (const GameReport& r : reports_) {
    if (r.query_counts.at("violations") != 0) failed_.push_back(r.game + " avoidance");
  }
}

DemoOutcome Demo::run() {
  if (c_.k == 0 || c_.k % 8 != 0 || c_.k > 256) fail(ErrorCode::kConfig, "k must be a multiple of 8 in 8..256");
  if (c_.name == "correlation") {
    correlation();
  } else if (c_.name == "rom-gap") {
    rom_gap();
  } else if (c_.name == "restricted") {
    restricted();
  } else if (c_.name == "product") {
    product();
  } else if (c_.name == "multi") {
    multi_demo();
  } else if (c_.name == "nissim") {
    nissim();
  } else {
    fail(ErrorCode::kConfig, "unknown demo: " + c_.name);
  }
  return DemoOutcome{std::move(reports_), std::move(failed_)};
}

}  // namespace

DemoOutcome run_demo(const DemoConfig& config) { return Demo(config).run(); }

const std::vector<DemoEntry>& demo_list() {
  static const std::vector<DemoEntry> entries = {
      {"correlation",
       "no ensemble is correlation intractable: the identity machine hits rf(i) for every seed",
       "romlab demo correlation --seed 7"},
      {"rom-gap",
       "the relation, universal and proof-triggered signature schemes are secure with a random "
       "oracle and totally broken under every implementation",
       "romlab demo rom-gap --seed 7"},
      {"restricted",
       "length-restricted relations with l_in(k) < k are broken by the prefix machine",
       "romlab demo restricted --seed 7"},
      {"product",
       "the direct product of any ensemble is not correlation intractable even when restricted",
       "romlab demo product --seed 7"},
      {"multi",
       "no ensemble survives the multi-invocation relation, including one-bit outputs",
       "romlab demo multi --seed 7"},
      {"nissim",
       "an ensemble can avoid a fixed sparse relation on all short inputs",
       "romlab demo nissim --seed 7"},
  };
  return entries;
}

RegistryPtr demo_registry() {
  static const RegistryPtr shared = [] {
    auto r = std::make_shared<Registry>(builtin_registry());
    EnsembleSpec quarter = keyed_hash_spec();
    quarter.name = "kh-quarter";
    quarter.out_len = LengthFunction::affine(1, 4, 0);
    r->add(std::move(quarter));
    EnsembleSpec bit = keyed_hash_spec();
    bit.name = "kh-bit";
    bit.out_len = LengthFunction::constant(1);
    r->add(std::move(bit));
    r->finalize();
    return RegistryPtr(std::move(r));
  }();
  return shared;
}

GameReport multi_rom_membership(RegistryPtr reg, EnsembleId i, std::uint64_t k,
                                std::uint64_t trials, std::uint64_t master_seed) {
  const auto t0 = Clock::now();
  if (k == 0 || k > 16 || k % 8 != 0) fail(ErrorCode::kConfig, "exhaustive multi check needs k = 8 or 16");
  const LengthFunction out = reg->spec(i).out_len;
  const std::uint64_t lout = out(k);
  const std::size_t seeds = std::size_t{1} << k;
  // want[s][j] = f_s(x_j(s)); fixed across oracles.
  std::vector<std::vector<Bits>> want(seeds);
  for (std::size_t s = 0; s < seeds; ++s) {
    Bytes sb(k / 8);
    for (std::size_t b = 0; b < sb.size(); ++b) sb[b] = static_cast<std::uint8_t>(s >> (8 * (sb.size() - 1 - b)));
    const Bits bits = Bits::from_bytes(sb);
    for (std::uint64_t j = 1; j <= k; ++j) {
      want[s].push_back(reg->eval(i, sb, multi_input(j, bits.bit(j - 1))));
    }
  }
  GameReport rep = base_report("multi-rom", k, out.describe(), i.value, "exists-seed", trials,
                               master_seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const OracleHandle o = OracleHandle::random(k, out, derive_seed(master_seed, 6, t));
    std::vector<std::array<Bits, 2>> ans(k + 1);
    for (std::uint64_t j = 1; j <= k; ++j) {
      for (int b = 0; b < 2; ++b) ans[j][b] = o.query(multi_input(j, b != 0));
    }
    bool any = false;
    for (std::size_t s = 0; s < seeds && !any; ++s) {
      bool all = true;
      for (std::uint64_t j = 1; j <= k && all; ++j) {
        const bool bit = (s >> (k - j)) & 1;
        all = ans[j][bit ? 1 : 0] == want[s][j - 1];
      }
      any = all;
    }
    if (any) ++rep.successes;
  }
  rep.bound = std::ldexp(1.0, static_cast<int>(k) - static_cast<int>(lout * k));
  rep.query_counts["oracle"] = 2 * k * trials;
  rep.wall_ms = since(t0);
  return rep;
}

GameReport nissim_check(unsigned density_bits, std::uint64_t t_blocks, std::uint64_t seeds,
                        std::uint64_t master_seed) {
  const auto t0 = Clock::now();
  if (density_bits == 0 || density_bits > 8 || t_blocks == 0 || t_blocks > 32) {
    fail(ErrorCode::kConfig, "nissim check needs 1..8 density bits and 1..32 blocks");
  }
  auto h = [](std::uint8_t x) { return static_cast<std::uint8_t>(x * 167u + 13u); };
  const unsigned shift = 8 - density_bits;
  auto in_rel = [h, shift](std::uint8_t x, std::uint8_t y) { return (y >> shift) == (h(x) >> shift); };
  NissimPredicate pred = [in_rel](const Bits& x, const Bits& y) {
    return in_rel(x.bytes().at(0), y.bytes().at(0));
  };
  Registry local = builtin_registry();
  const std::uint64_t k = 8 * t_blocks;
  const EnsembleId id = nissim_build(local, "nissim", pred, LengthFunction::constant(8),
                                     LengthFunction::affine(1, static_cast<std::int64_t>(t_blocks), 0),
                                     t_blocks);
  local.finalize();

  GameReport rep = base_report(density_bits == 1 ? "nissim" : "nissim-sparse", k, "8", id.value,
                               "exhaustive", seeds, master_seed);
  std::uint64_t violations = 0;
  for (std::uint64_t t = 0; t < seeds; ++t) {
    std::mt19937_64 rng(derive_seed(master_seed, 7, t));
    const Bytes s = random_bytes(rng, static_cast<std::size_t>(t_blocks));
    bool hit = false;
    for (unsigned x = 0; x < 256; ++x) {
      const Bytes xb{static_cast<std::uint8_t>(x)};
      const std::uint8_t y = local.eval(id, s, xb).bytes().at(0);
      const bool member = in_rel(static_cast<std::uint8_t>(x), y);
      bool some_block_avoids = false;
      for (std::uint8_t block : s) some_block_avoids |= !in_rel(static_cast<std::uint8_t>(x), block);
      if (member && some_block_avoids) ++violations;
      hit |= member;
    }
    if (hit) ++rep.successes;
  }
  rep.bound = std::min(1.0, std::ldexp(1.0, 8 - static_cast<int>(density_bits * t_blocks)));
  rep.query_counts["violations"] = violations;
  rep.query_counts["inputs"] = 256 * seeds;
  rep.wall_ms = since(t0);
  return rep;
}

}  // namespace romlab
