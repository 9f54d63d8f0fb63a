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

#include "romlab/relations.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "romlab/coding.hpp"
#include "romlab/error.hpp"
#include "romlab/universal.hpp"

namespace romlab {

namespace {

std::optional<double> pow2(std::optional<std::int64_t> e) {
  if (!e) return std::nullopt;
  return std::ldexp(1.0, static_cast<int>(std::max<std::int64_t>(*e, -1074)));
}

std::optional<std::int64_t> neg_len(const LengthFunction& f, std::uint64_t k) {
  auto v = f.try_eval(k);
  if (!v) return std::nullopt;
  return -static_cast<std::int64_t>(*v);
}

bool single(const std::vector<Bytes>& xs, const std::vector<Bits>& ys) {
  return xs.size() == 1 && ys.size() == 1;
}

// y == f^i_seed(x), with the length checked first so a wrong-length y never
// reaches the evaluator.
bool matches(const Registry& reg, EnsembleId i, ByteView seed, ByteView x, const Bits& y) {
  if (reg.out_bits(i, seed.size()) != y.size()) return false;
  return reg.eval(i, seed, x) == y;
}

void check_gap(const LengthFunction& in_len) {
  for (std::uint64_t k = 8; k <= 1024; k += 8) {
    auto v = in_len.try_eval(k);
    if (!v) continue;
    if (*v >= k) fail(ErrorCode::kConfig, "restricted relation needs l_in(k) < k");
    if (k - *v > kMaxGapBits) {
      fail(ErrorCode::kConfig, "restricted relation: z-search beyond " +
                                   std::to_string(kMaxGapBits) + " bits at k=" +
                                   std::to_string(k));
    }
  }
}

// Tries every z of gap bits (a whole number of bytes).
bool search_z(const Registry& reg, EnsembleId i, ByteView x, const Bits& y, std::uint64_t gap) {
  if (gap % 8 != 0 || gap > kMaxGapBits) return false;
  const std::size_t zb = gap / 8;
  if (reg.out_bits(i, x.size() + zb) != y.size()) return false;
  Bytes seed(x.begin(), x.end());
  seed.resize(x.size() + zb, 0);
  const std::uint64_t count = std::uint64_t{1} << gap;
  for (std::uint64_t z = 0; z < count; ++z) {
    for (std::size_t b = 0; b < zb; ++b) seed[x.size() + b] = static_cast<std::uint8_t>(z >> (8 * (zb - 1 - b)));
    if (reg.eval(i, seed, x) == y) return true;
  }
  return false;
}

Relation restricted(RegistryPtr reg, EnsembleId i, const LengthFunction& in_len, bool minimal) {
  if (!reg->contains(i)) fail(ErrorCode::kConfig, "unknown ensemble index");
  check_gap(in_len);
  const EnsembleSpec& spec = reg->spec(i);
  Relation r;
  r.name = std::string(minimal ? "rb:" : "ra:") + std::to_string(i.value);
  r.in_len = in_len;
  r.out_len = spec.out_len;
  r.predicate = [reg, i, in_len, minimal](const std::vector<Bytes>& xs,
                                          const std::vector<Bits>& ys) {
    if (!single(xs, ys)) return false;
    const std::uint64_t n = 8 * xs[0].size();
    for (std::uint64_t big = n; big <= n + kMaxGapBits; big += 8) {
      if (in_len.try_eval(big) != n) continue;
      if (search_z(*reg, i, xs[0], ys[0], big - n)) return true;
      if (minimal) return false;
    }
    return false;
  };
  r.density = [in_len, out = spec.out_len](std::uint64_t k) -> std::optional<double> {
    auto a = in_len.try_eval(k);
    auto b = out.try_eval(k);
    if (!a || !b) return std::nullopt;
    return pow2(static_cast<std::int64_t>(k - *a) - static_cast<std::int64_t>(*b));
  };
  return r;
}

class ReplayBackend final : public OracleBackend {
 public:
  ReplayBackend(const std::vector<Bytes>& qs, const std::vector<Bits>& as, std::size_t first,
                std::uint64_t bits)
      : qs_(qs), as_(as), pos_(first), bits_(bits) {}

  std::uint64_t out_bits() const override { return bits_; }
  Bits answer(ByteView x) override {
    if (pos_ >= qs_.size() || !std::equal(x.begin(), x.end(), qs_[pos_].begin(), qs_[pos_].end())) {
      fail(ErrorCode::kState, "verifier query not in the transcript");
    }
    return as_[pos_++];
  }
  std::string describe() const override { return "replay"; }
  bool exhausted() const { return pos_ == qs_.size(); }

 private:
  const std::vector<Bytes>& qs_;
  const std::vector<Bits>& as_;
  std::size_t pos_;
  std::uint64_t bits_;
};

}  // namespace

bool Relation::contains(const std::vector<Bytes>& xs, const std::vector<Bits>& ys) const {
  try {
    return predicate(xs, ys);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kBudget) throw;
    return false;
  }
}

bool Relation::contains(ByteView x, const Bits& y) const {
  return contains(std::vector<Bytes>{Bytes(x.begin(), x.end())}, std::vector<Bits>{y});
}

std::optional<double> Relation::density_bound(std::uint64_t k) const {
  if (!density) return std::nullopt;
  return density(k);
}

Relation rf(RegistryPtr reg, EnsembleId i) {
  if (!reg->contains(i)) fail(ErrorCode::kConfig, "unknown ensemble index");
  const EnsembleSpec& spec = reg->spec(i);
  Relation r;
  r.name = "rf:" + std::to_string(i.value);
  r.in_len = LengthFunction::identity();
  r.out_len = spec.out_len;
  r.predicate = [reg, i](const std::vector<Bytes>& xs, const std::vector<Bits>& ys) {
    return single(xs, ys) && matches(*reg, i, xs[0], xs[0], ys[0]);
  };
  r.density = [out = spec.out_len](std::uint64_t k) { return pow2(neg_len(out, k)); };
  return r;
}

Relation ru(RegistryPtr reg) {
  if (!reg->finalized()) fail(ErrorCode::kConfig, "registry is not finalized");
  Relation r;
  r.name = "ru";
  r.in_len = LengthFunction::identity();
  r.out_len = LengthFunction::identity();
  r.predicate = [reg](const std::vector<Bytes>& xs, const std::vector<Bits>& ys) {
    if (!single(xs, ys) || !decode_pair(xs[0])) return false;
    const Bytes in = universal_input(xs[0], ys[0]);
    return run(reg->universal(), in, universal_time_bound(xs[0], ys[0])).verdict ==
           Verdict::kAccept;
  };
  // For each x at most one y is accepted.
  r.density = [](std::uint64_t k) { return pow2(-static_cast<std::int64_t>(k)); };
  return r;
}

Relation restricted_a(RegistryPtr reg, EnsembleId i, const LengthFunction& in_len) {
  return restricted(std::move(reg), i, in_len, false);
}

Relation restricted_b(RegistryPtr reg, EnsembleId i, const LengthFunction& in_len) {
  return restricted(std::move(reg), i, in_len, true);
}

EnsembleId register_split_base(Registry& reg, EnsembleId base, std::uint64_t m) {
  if (m == 0) fail(ErrorCode::kInvalidArgument, "m must be positive");
  EnsembleSpec s = reg.spec(base);
  s.name += "/" + std::to_string(m);
  s.in_len = LengthFunction::affine(1, static_cast<std::int64_t>(m), 0);
  return reg.add(std::move(s));
}

Relation product_relation(RegistryPtr reg, EnsembleId base, std::uint64_t m) {
  if (m == 0) fail(ErrorCode::kConfig, "m must be positive");
  if (!reg->contains(base)) fail(ErrorCode::kConfig, "unknown ensemble index");
  const EnsembleSpec& spec = reg->spec(base);
  if (!spec.in_len) fail(ErrorCode::kConfig, "product relation needs a declared l_in");
  const LengthFunction in_len = *spec.in_len;
  for (std::uint64_t k = 8 * m; k <= 64 * m; k += 8 * m) {
    if (in_len.try_eval(k) != k / m) {
      fail(ErrorCode::kConfig, "product geometry mismatch: need l_in(k) = k/m");
    }
  }
  Relation r;
  r.name = "rprod:" + std::to_string(base.value) + ":" + std::to_string(m);
  r.in_len = LengthFunction::affine(1, static_cast<std::int64_t>(m), 0);
  r.out_len = LengthFunction::scaled(spec.out_len, m);
  r.predicate = [reg, base, m, in_len, out = spec.out_len](const std::vector<Bytes>& xs,
                                                           const std::vector<Bits>& ys) {
    if (!single(xs, ys)) return false;
    const Bytes& s = xs[0];
    const std::uint64_t k = 8 * s.size();
    auto lin = in_len.try_eval(k);
    auto lout = out.try_eval(k);
    if (!lin || !lout || *lin % 8 != 0 || *lin * m != k) return false;
    if (ys[0].size() != m * *lout) return false;
    const ByteView prefix(s.data(), *lin / 8);
    return reg->eval(base, s, prefix) == ys[0].resized(*lout);
  };
  r.density = [m, out = spec.out_len](std::uint64_t k) -> std::optional<double> {
    if (k % m != 0) return std::nullopt;
    return pow2(neg_len(out, k / m));
  };
  return r;
}

Bytes multi_input(std::uint64_t j, bool bit) {
  Bytes x;
  put_u16(x, static_cast<std::uint16_t>((j << 1) | (bit ? 1 : 0)));
  return x;
}

Relation multi(RegistryPtr reg, EnsembleId i, bool padded) {
  if (!reg->contains(i)) fail(ErrorCode::kConfig, "unknown ensemble index");
  const EnsembleSpec& spec = reg->spec(i);
  Relation r;
  r.name = std::string(padded ? "rmulti2:" : "rmulti:") + std::to_string(i.value);
  r.multi = true;
  r.arity = [padded](std::uint64_t k) { return padded ? 2 * k : k; };
  r.in_len = LengthFunction::constant(16);
  r.out_len = spec.out_len;
  r.predicate = [reg, i, padded](const std::vector<Bytes>& xs, const std::vector<Bits>& ys) {
    const std::size_t n = xs.size();
    const std::size_t k = padded ? n / 2 : n;
    if (ys.size() != n || k == 0 || k % 8 != 0 || (padded && n % 2 != 0)) return false;
    if (n >= (std::size_t{1} << 15)) return false;
    Bytes s(k / 8, 0);
    for (std::size_t j = 1; j <= n; ++j) {
      const Bytes& x = xs[j - 1];
      if (x.size() != 2) return false;
      const std::uint16_t v = load_u16(x.data());
      if ((v >> 1) != j) return false;
      const bool bit = (v & 1) != 0;
      if (j > k) {
        if (bit) return false;
      } else if (bit) {
        s[(j - 1) / 8] |= static_cast<std::uint8_t>(0x80 >> ((j - 1) % 8));
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!matches(*reg, i, s, xs[j], ys[j])) return false;
    }
    return true;
  };
  r.density = [padded, out = spec.out_len](std::uint64_t k) -> std::optional<double> {
    auto v = out.try_eval(k);
    if (!v) return std::nullopt;
    const std::int64_t arity = static_cast<std::int64_t>(padded ? 2 * k : k);
    return pow2(-arity * static_cast<std::int64_t>(*v));
  };
  return r;
}

Statement universal_statement(const Registry& reg, ByteView x, const Bits& y) {
  return Statement{reg.universal(), universal_input(x, y), universal_time_bound(x, y)};
}

Relation cs_transcript(RegistryPtr reg) {
  if (!reg->finalized()) fail(ErrorCode::kConfig, "registry is not finalized");
  Relation r;
  r.name = "rcs";
  r.multi = true;
  r.arity = [](std::uint64_t) { return 2; };
  r.out_len = LengthFunction::identity();
  r.predicate = [reg](const std::vector<Bytes>& xs, const std::vector<Bits>& ys) {
    if (xs.size() < 2 || xs.size() != ys.size()) return false;
    const std::uint64_t ell = ys[0].size();
    if (ell == 0) return false;
    for (const Bits& y : ys) {
      if (y.size() != ell) return false;
    }
    CsProof proof;
    try {
      proof = CsProof::deserialize(xs[1]);
    } catch (const Error&) {
      return false;
    }
    const Statement w = universal_statement(*reg, xs[0], ys[0]);
    const std::uint64_t k = statement_bits(xs[0], ys[0]) + ell;
    auto replay = std::make_shared<ReplayBackend>(xs, ys, 2, ell);
    if (!verify_bumped(k, w, proof, OracleHandle(replay))) return false;
    return replay->exhausted();
  };
  return r;
}

Relation null_relation() {
  Relation r;
  r.name = "null";
  r.in_len = LengthFunction::identity();
  r.out_len = LengthFunction::identity();
  r.predicate = [](const std::vector<Bytes>&, const std::vector<Bits>&) { return false; };
  r.density = [](std::uint64_t) { return 0.0; };
  return r;
}

Relation parse_relation(RegistryPtr reg, std::string_view id) {
  auto index = [&](std::string_view s) {
    std::uint64_t v = 0;
    if (s.empty() || s.size() > 9) fail(ErrorCode::kConfig, "bad relation id: " + std::string(id));
    for (char c : s) {
      if (c < '0' || c > '9') fail(ErrorCode::kConfig, "bad relation id: " + std::string(id));
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return v;
  };
  auto need = [&](std::uint64_t i) {
    if (!reg->contains(EnsembleId{i})) {
      fail(ErrorCode::kConfig, "unknown ensemble index in " + std::string(id));
    }
    return EnsembleId{i};
  };
  const LengthFunction gap8 = LengthFunction::affine(1, 1, -8);
  if (id == "ru") return ru(reg);
  if (id == "rcs") return cs_transcript(reg);
  if (id == "null") return null_relation();
  if (id.starts_with("rf:")) return rf(reg, need(index(id.substr(3))));
  if (id.starts_with("ra:")) return restricted_a(reg, need(index(id.substr(3))), gap8);
  if (id.starts_with("rb:")) return restricted_b(reg, need(index(id.substr(3))), gap8);
  if (id.starts_with("rmulti:")) return multi(reg, need(index(id.substr(7))));
  if (id.starts_with("rprod:")) {
    auto rest = id.substr(6);
    auto colon = rest.find(':');
    if (colon == std::string_view::npos) fail(ErrorCode::kConfig, "expected rprod:<i>:<m>");
    const EnsembleId base = need(index(rest.substr(0, colon)));
    const std::uint64_t m = index(rest.substr(colon + 1));
    if (m == 0) fail(ErrorCode::kConfig, "m must be positive");
    Registry local = builtin_registry();
    for (std::uint64_t j = local.size() + 1; j <= reg->size(); ++j) local.add(reg->spec(EnsembleId{j}));
    const EnsembleId split = register_split_base(local, base, m);
    direct_product(local, split, m);
    local.finalize();
    return product_relation(std::make_shared<const Registry>(std::move(local)), split, m);
  }
  fail(ErrorCode::kConfig, "unknown relation id: " + std::string(id));
}

std::string EvasionAttacker::name() const {
  switch (kind) {
    case Kind::kFixed:
      return "fixed";
    case Kind::kRandom:
      return "random-forger:" + std::to_string(budget);
    case Kind::kExhaustive:
      return "exhaustive:" + std::to_string(budget);
  }
  return "?";
}

EvasionAttacker parse_evasion_attacker(std::string_view id) {
  auto budget_of = [&](std::string_view s) {
    if (s.empty() || s.size() > 9 || s.find_first_not_of("0123456789") != std::string_view::npos) {
      fail(ErrorCode::kConfig, "bad attacker budget: " + std::string(id));
    }
    return std::stoull(std::string(s));
  };
  if (id == "fixed") return {EvasionAttacker::Kind::kFixed, 0};
  if (id.starts_with("random-forger:")) {
    return {EvasionAttacker::Kind::kRandom, budget_of(id.substr(14))};
  }
  if (id.starts_with("exhaustive:")) {
    return {EvasionAttacker::Kind::kExhaustive, budget_of(id.substr(11))};
  }
  fail(ErrorCode::kConfig, "unknown attacker: " + std::string(id));
}

GameReport estimate_evasiveness(const Relation& r, const EvasionAttacker& attacker,
                                std::uint64_t k, std::uint64_t trials,
                                std::uint64_t master_seed) {
  const auto start = std::chrono::steady_clock::now();
  if (k == 0 || trials == 0) fail(ErrorCode::kConfig, "k and trials must be positive");
  if (!r.out_len.try_eval(k)) fail(ErrorCode::kConfig, "relation has no output length at this k");
  const std::size_t arity = r.arity(k);
  const std::uint64_t in_bits = r.in_len ? (*r.in_len)(k) : k;
  const std::size_t in_bytes = (in_bits + 7) / 8;
  const std::uint64_t tuples =
      attacker.kind == EvasionAttacker::Kind::kFixed || arity == 0 ? 0 : attacker.budget / arity;

  GameReport rep;
  rep.game = "evasive";
  rep.k = k;
  rep.ell = r.out_len.describe();
  rep.adversary = attacker.name();
  rep.trials = trials;
  rep.seed = master_seed;
  std::uint64_t issued = 0;

  for (std::uint64_t t = 0; t < trials; ++t) {
    OracleHandle root = OracleHandle::random(k, r.out_len, derive_seed(master_seed, 0, t));
    OracleHandle view = root.budgeted(attacker.budget);
    std::mt19937_64 rng(derive_seed(master_seed, 1, t));
    std::uint64_t counter = 0;
    auto next_tuple = [&] {
      std::vector<Bytes> xs(arity, Bytes(in_bytes, 0));
      if (attacker.kind == EvasionAttacker::Kind::kFixed) return xs;
      for (Bytes& x : xs) {
        if (attacker.kind == EvasionAttacker::Kind::kRandom) {
          for (auto& b : x) b = static_cast<std::uint8_t>(rng());
        } else {
          for (std::size_t b = 0; b < in_bytes && b < 8; ++b) {
            x[in_bytes - 1 - b] = static_cast<std::uint8_t>(counter >> (8 * b));
          }
          ++counter;
        }
      }
      return xs;
    };
    std::vector<Bytes> out = next_tuple();
    for (std::uint64_t a = 0; a < tuples; ++a) {
      std::vector<Bytes> xs = next_tuple();
      std::vector<Bits> ys;
      for (const Bytes& x : xs) ys.push_back(view.query(x));
      out = xs;
      if (r.contains(xs, ys)) break;
    }
    issued += view.query_count();
    std::vector<Bits> ys;
    for (const Bytes& x : out) ys.push_back(root.query(x));
    if (r.contains(out, ys)) ++rep.successes;
  }
  rep.query_counts["adversary"] = issued;
  if (auto d = r.density_bound(k)) rep.bound = static_cast<double>(std::max<std::uint64_t>(1, tuples)) * *d;
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace romlab
