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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <set>
#include <string>

#include "romlab/attacks.hpp"
#include "romlab/coding.hpp"
#include "romlab/error.hpp"
#include "romlab/universal.hpp"

namespace romlab {

const char* game_name(GameKind g) {
  switch (g) {
    case GameKind::kEufCmaRom:
      return "euf-cma-rom";
    case GameKind::kEufCmaImpl:
      return "euf-cma-impl";
    case GameKind::kTotalBreakImpl:
      return "total-break-impl";
    case GameKind::kIndRom:
      return "ind-rom";
    case GameKind::kIndImpl:
      return "ind-impl";
    case GameKind::kCcaKeyRecovery:
      return "cca-key-recovery";
  }
  return "?";
}

GameKind parse_game(std::string_view name) {
  for (GameKind g : {GameKind::kEufCmaRom, GameKind::kEufCmaImpl, GameKind::kTotalBreakImpl,
                     GameKind::kIndRom, GameKind::kIndImpl, GameKind::kCcaKeyRecovery}) {
    if (name == game_name(g)) return g;
  }
  fail(ErrorCode::kConfig, "unknown game: " + std::string(name));
}

bool is_implementation_game(GameKind g) {
  return g == GameKind::kEufCmaImpl || g == GameKind::kTotalBreakImpl ||
         g == GameKind::kIndImpl || g == GameKind::kCcaKeyRecovery;
}

namespace {

using Kind = AdversaryId::Kind;

// Seed streams under the master seed; the trial index is the stream index.
enum Stream : std::uint64_t {
  kOracleStream = 0,
  kAdversaryStream = 1,
  kKeyStream = 2,
  kImplStream = 3,
  kProbeStream = 4,
  kCoinStream = 5,
  kNonceStream = 6,
};

constexpr std::size_t kMessageBytes = 16;

Bytes random_bytes(std::mt19937_64& rng, std::size_t n) {
  Bytes b(n);
  for (auto& x : b) x = static_cast<std::uint8_t>(rng());
  return b;
}

std::size_t seed_bytes(std::uint64_t k) { return static_cast<std::size_t>((k + 7) / 8); }

// Everything one trial runs against.
struct Env {
  OracleHandle root;
  std::optional<PublishedSeed> published;
};

struct Tally {
  std::uint64_t successes = 0;
  std::uint64_t trigger_events = 0;
  std::uint64_t base_forgeries = 0;
  std::uint64_t signing = 0;
  std::uint64_t adversary = 0;
  std::uint64_t adversary_max = 0;
  std::uint64_t voided = 0;
  std::array<std::uint64_t, 4> by_tag{};

  void absorb(const OracleHandle& root, const OracleHandle& adv) {
    const ViewCounters& c = root.counters();
    for (int t = 1; t < 4; ++t) by_tag[t] += c.by_tag[t];
    adversary += adv.query_count();
    adversary_max = std::max(adversary_max, adv.query_count());
  }
};

class Runner {
 public:
  explicit Runner(const GameConfig& c) : c_(c), reg_(closed_registry()) {}

  GameReport run();

 private:
  Env env(std::uint64_t t) const {
    if (!is_implementation_game(c_.game)) {
      return Env{OracleHandle::random(c_.k, LengthFunction::identity(),
                                      derive_seed(c_.seed, kOracleStream, t)),
                 std::nullopt};
    }
    PublishedSeed p{c_.ensemble, draw_seed(c_.k, derive_seed(c_.seed, kImplStream, t))};
    return Env{implemented_oracle(reg_, p), p};
  }

  std::uint64_t declared_budget() const {
    if (c_.adversary.kind == Kind::kRandomForger) return c_.adversary.budget;
    // The forging adversaries read y = O'(x) once when they hold no seed.
    return 1;
  }

  // msg the forging adversaries aim for, for the seed they know or guess.
  Bytes trigger_message(const SignatureScheme& scheme, const Env& e, const OracleHandle& adv,
                        std::mt19937_64& rng) const;
  Bytes proof_message(const Env& e, const OracleHandle& adv, std::mt19937_64& rng) const;

  void euf_trial(const SignatureScheme& scheme, std::uint64_t t, Tally& tally) const;
  void total_break_trial(const SignatureScheme& scheme, std::uint64_t t, Tally& tally) const;
  void ind_trial(const EncryptionScheme& enc, std::uint64_t t, Tally& tally) const;
  void cca_trial(const EncryptionScheme& enc, std::uint64_t t, Tally& tally) const;

  const GameConfig& c_;
  RegistryPtr reg_;
};

Bytes Runner::proof_message(const Env& e, const OracleHandle& adv, std::mt19937_64& rng) const {
  if (e.published) return csproof_forge(reg_, e.published->id, e.published->seed, c_.k);
  const EnsembleId ip = prime_index(*reg_, c_.ensemble);
  const Bytes s = random_bytes(rng, seed_bytes(c_.k));
  try {
    return csproof_forge_against(*reg_, ip, s, c_.k, adv);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::kInvalidArgument) throw;
  }
  // No true statement to prove; send the claim with an empty proof.
  return encode_proof_message(ip.value, s, CsProof{});
}

Bytes Runner::trigger_message(const SignatureScheme& scheme, const Env& e,
                              const OracleHandle& adv, std::mt19937_64& rng) const {
  if (scheme.variant() == Variant::kCsproof) return proof_message(e, adv, rng);
  if (e.published) return key_only_message(scheme, e.published->id, e.published->seed, c_.k);
  return key_only_message(scheme, c_.ensemble, random_bytes(rng, seed_bytes(c_.k)), c_.k);
}

// Queries O' on random candidate trigger messages and returns the first
// one that fires, checked with the adversary's own copy of the predicate.
std::optional<Bytes> search_trigger(const SignatureScheme& scheme, std::uint64_t k,
                                    const OracleHandle& adv, std::uint64_t budget,
                                    std::mt19937_64& rng) {
  const RegistryPtr& reg = scheme.registry();
  const auto views = adv.split();
  for (std::uint64_t q = 0; q < budget; ++q) {
    const Bytes s = random_bytes(rng, seed_bytes(k));
    if (scheme.variant() == Variant::kRelation) {
      if (scheme.relation()->contains(s, views.prime.query(s))) return s;
      continue;
    }
    if (scheme.variant() == Variant::kBase) return std::nullopt;
    const EnsembleId ip{1 + rng() % reg->size()};
    const Bytes x = encode_pair(ip.value, s);
    const Bits y = views.prime.query(x);
    bool hit = false;
    try {
      hit = reg->eval(ip, s, x, EvalRoute::kNative) == y;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kBudget) throw;
    }
    if (!hit) continue;
    if (scheme.variant() == Variant::kUniversal) return x;
    const Statement w = universal_statement(*reg, x, y);
    return encode_proof_message(ip.value, s,
                                prove_bumped(statement_bits(x, y) + k, w, views.double_prime));
  }
  return std::nullopt;
}

void Runner::euf_trial(const SignatureScheme& scheme, std::uint64_t t, Tally& tally) const {
  const Env e = env(t);
  SigKeyPair kp = scheme.gen(c_.k, e.root, derive_seed(c_.seed, kKeyStream, t), e.published);
  const OracleHandle adv = e.root.budgeted(declared_budget());
  std::mt19937_64 rng(derive_seed(c_.seed, kAdversaryStream, t));
  std::set<Bytes> queried;
  auto sign = [&](ByteView m) {
    queried.emplace(m.begin(), m.end());
    ++tally.signing;
    return scheme.sign(kp.sk, m, e.root);
  };

  Forgery f;
  try {
    if (c_.adversary.kind == Kind::kRandomForger) {
      Signature last;
      for (std::uint64_t q = 0; q < c_.adversary.budget; ++q) {
        last = sign(random_bytes(rng, kMessageBytes));
      }
      if (auto hit = search_trigger(scheme, c_.k, adv, c_.adversary.budget, rng)) {
        f = Forgery{*hit, Signature::magic_of({})};
      } else {
        // Replay a signature on a fresh message.
        f = Forgery{random_bytes(rng, kMessageBytes), last};
      }
    } else {
      f = Forgery{trigger_message(scheme, e, adv, rng), Signature::magic_of({})};
    }
  } catch (const Error& err) {
    if (err.code() == ErrorCode::kCapacity) {
      ++tally.voided;
      tally.absorb(e.root, adv);
      return;
    }
    if (err.code() != ErrorCode::kBudget) throw;
  }

  if (!queried.contains(f.msg) && scheme.verify(kp.vk, f.msg, f.sig, e.root)) {
    ++tally.successes;
    if (base_verify(kp.vk, f.msg, f.sig, e.root.split().triple_prime)) {
      ++tally.base_forgeries;
    } else {
      ++tally.trigger_events;
    }
  }
  tally.absorb(e.root, adv);
}

void Runner::total_break_trial(const SignatureScheme& scheme, std::uint64_t t,
                               Tally& tally) const {
  const Env e = env(t);
  SigKeyPair kp = scheme.gen(c_.k, e.root, derive_seed(c_.seed, kKeyStream, t), e.published);
  const OracleHandle adv = e.root.budgeted(declared_budget());
  std::mt19937_64 rng(derive_seed(c_.seed, kAdversaryStream, t));
  auto sign = [&](ByteView m) {
    ++tally.signing;
    return scheme.sign(kp.sk, m, e.root);
  };

  std::optional<SigningKey> recovered;
  try {
    if (c_.adversary.kind == Kind::kRandomForger) {
      for (std::uint64_t q = 0; q < c_.adversary.budget && !recovered; ++q) {
        recovered = recover_signing_key(sign(random_bytes(rng, kMessageBytes)));
      }
    } else {
      recovered = recover_signing_key(sign(trigger_message(scheme, e, adv, rng)));
    }
  } catch (const Error& err) {
    if (err.code() == ErrorCode::kCapacity) {
      ++tally.voided;
      tally.absorb(e.root, adv);
      return;
    }
    if (err.code() != ErrorCode::kBudget) throw;
  }

  if (recovered) {
    ++tally.trigger_events;
    base_restore(*recovered, e.root.split().triple_prime);
    std::mt19937_64 probes(derive_seed(c_.seed, kProbeStream, t));
    bool same = true;
    for (int p = 0; p < kProbeMessages && same; ++p) {
      const Bytes m = random_bytes(probes, kMessageBytes);
      same = sign(m).serialize() == scheme.sign(*recovered, m, e.root).serialize();
    }
    if (same) ++tally.successes;
  }
  tally.absorb(e.root, adv);
}

void Runner::ind_trial(const EncryptionScheme& enc, std::uint64_t t, Tally& tally) const {
  const Env e = env(t);
  const CipherKey key = enc.gen(c_.k, derive_seed(c_.seed, kKeyStream, t), e.published);
  const OracleHandle adv = e.root.budgeted(declared_budget());
  std::mt19937_64 rng(derive_seed(c_.seed, kAdversaryStream, t));

  Bytes m0;
  if (c_.adversary.kind == Kind::kMagicPt) {
    m0 = proof_message(e, adv, rng);
  } else {
    m0 = random_bytes(rng, kMessageBytes);
  }
  const Bytes m1 = random_bytes(rng, m0.size());
  const int b = static_cast<int>(derive_seed(c_.seed, kCoinStream, t) & 1);
  const Ciphertext c =
      enc.enc(key, b == 0 ? m0 : m1, e.root, derive_seed(c_.seed, kNonceStream, t));
  int guess;
  if (c_.adversary.kind == Kind::kMagicPt) {
    guess = c.tag == Ciphertext::Tag::kClear ? 0 : 1;
  } else {
    guess = static_cast<int>(rng() & 1);
  }
  if (c.tag == Ciphertext::Tag::kClear) ++tally.trigger_events;
  if (guess == b) ++tally.successes;
  tally.absorb(e.root, adv);
}

void Runner::cca_trial(const EncryptionScheme& enc, std::uint64_t t, Tally& tally) const {
  const Env e = env(t);
  const CipherKey key = enc.gen(c_.k, derive_seed(c_.seed, kKeyStream, t), e.published);
  const OracleHandle adv = e.root.budgeted(declared_budget());
  std::mt19937_64 rng(derive_seed(c_.seed, kAdversaryStream, t));

  std::optional<CipherKey> revealed;
  const std::uint64_t attempts =
      c_.adversary.kind == Kind::kRandomForger ? c_.adversary.budget : 1;
  for (std::uint64_t q = 0; q < attempts && !revealed; ++q) {
    Ciphertext probe;
    probe.tag = Ciphertext::Tag::kTrigger;
    probe.payload = c_.adversary.kind == Kind::kCcaReveal ? proof_message(e, adv, rng)
                                                          : random_bytes(rng, kMessageBytes);
    ++tally.signing;
    Decryption d = enc.dec(key, probe, e.root);
    if (d.kind == Decryption::Kind::kKeyReveal) revealed = d.key;
  }
  if (revealed) {
    ++tally.trigger_events;
    std::mt19937_64 challenge(derive_seed(c_.seed, kProbeStream, t));
    const Bytes m = random_bytes(challenge, kMessageBytes);
    const Ciphertext c = enc.enc(key, m, e.root, derive_seed(c_.seed, kNonceStream, t));
    const Decryption d = enc.dec(*revealed, c, e.root);
    if (d.kind == Decryption::Kind::kPlaintext && d.plaintext == m) ++tally.successes;
  }
  tally.absorb(e.root, adv);
}

void check_compatible(const GameConfig& c) {
  const Kind a = c.adversary.kind;
  const bool enc_game = c.game == GameKind::kIndRom || c.game == GameKind::kIndImpl ||
                        c.game == GameKind::kCcaKeyRecovery;
  if (enc_game != (c.scheme == "encryption")) {
    fail(ErrorCode::kConfig, std::string(game_name(c.game)) + " does not run scheme " + c.scheme);
  }
  bool ok = false;
  switch (c.game) {
    case GameKind::kEufCmaRom:
    case GameKind::kEufCmaImpl:
    case GameKind::kTotalBreakImpl:
      ok = a == Kind::kKeyOnly || a == Kind::kRandomForger ||
           (a == Kind::kCsForge && c.scheme == "csproof");
      if (c.scheme == "base" && a == Kind::kKeyOnly) ok = false;
      break;
    case GameKind::kIndRom:
    case GameKind::kIndImpl:
      ok = a == Kind::kMagicPt || a == Kind::kRandomForger;
      break;
    case GameKind::kCcaKeyRecovery:
      ok = a == Kind::kCcaReveal || a == Kind::kRandomForger;
      break;
  }
  if (!ok) {
    fail(ErrorCode::kConfig,
         "adversary " + c.adversary.name() + " does not play " + game_name(c.game));
  }
  if (c.k == 0 || c.k % 8 != 0 || c.k > 256) fail(ErrorCode::kConfig, "k must be a multiple of 8 in 8..256");
  if (c.trials == 0) fail(ErrorCode::kConfig, "trials must be positive");
}

GameReport Runner::run() {
  const auto start = std::chrono::steady_clock::now();
  check_compatible(c_);
  if (!reg_->contains(c_.ensemble)) {
    fail(ErrorCode::kConfig, "unknown ensemble " + std::to_string(c_.ensemble.value));
  }
  const VerifyCalls calls_before = verify_calls();

  GameReport rep;
  rep.game = game_name(c_.game);
  rep.k = c_.k;
  rep.adversary = c_.adversary.name();
  rep.trials = c_.trials;
  rep.seed = c_.seed;
  const bool impl = is_implementation_game(c_.game);
  rep.ell = impl ? reg_->spec(c_.ensemble).out_len.describe() : "k";
  if (impl || c_.scheme == "relation") rep.ensemble = c_.ensemble.value;

  Tally tally;
  if (c_.scheme == "encryption") {
    const EncryptionScheme enc(reg_);
    for (std::uint64_t t = 0; t < c_.trials; ++t) {
      if (c_.game == GameKind::kCcaKeyRecovery) {
        cca_trial(enc, t, tally);
      } else {
        ind_trial(enc, t, tally);
      }
    }
    if (c_.game == GameKind::kIndRom) rep.bound = 0.5;
  } else {
    const SignatureScheme scheme = make_scheme(parse_variant(c_.scheme), c_.ensemble);
    for (std::uint64_t t = 0; t < c_.trials; ++t) {
      if (c_.game == GameKind::kTotalBreakImpl) {
        total_break_trial(scheme, t, tally);
      } else {
        euf_trial(scheme, t, tally);
      }
    }
    if (c_.game == GameKind::kEufCmaRom && scheme.variant() != Variant::kBase) {
      // One fresh O' value per signing query, candidate and final check.
      const double chances = c_.adversary.kind == Kind::kRandomForger
                                 ? 2.0 * static_cast<double>(c_.adversary.budget) + 1.0
                                 : 1.0;
      rep.bound = std::min(1.0, chances * std::ldexp(1.0, -static_cast<int>(c_.k)));
    }
  }
  if (verify_calls().plain != calls_before.plain) {
    fail(ErrorCode::kInternal, "scheme code reached the unbumped verifier");
  }

  rep.successes = tally.successes;
  rep.query_counts["adversary"] = tally.adversary;
  rep.query_counts["adversary_max"] = tally.adversary_max;
  rep.query_counts["budget"] = declared_budget();
  rep.query_counts["signing"] = tally.signing;
  rep.query_counts["prime"] = tally.by_tag[1];
  rep.query_counts["double_prime"] = tally.by_tag[2];
  rep.query_counts["triple_prime"] = tally.by_tag[3];
  rep.query_counts["trigger_events"] = tally.trigger_events;
  rep.query_counts["base_forgeries"] = tally.base_forgeries;
  rep.query_counts["voided"] = tally.voided;
  rep.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace

GameReport run_game(const GameConfig& config) { return Runner(config).run(); }

}  // namespace romlab
