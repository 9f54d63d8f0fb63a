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

#include "romlab/romlab.h"

#include <charconv>
#include <exception>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "romlab/attacks.hpp"
#include "romlab/csproof.hpp"
#include "romlab/demos.hpp"
#include "romlab/ensembles.hpp"
#include "romlab/error.hpp"
#include "romlab/relations.hpp"
#include "romlab/report.hpp"

struct romlab_report {
  romlab::GameReport report;
  std::string json;
};

struct romlab_demo_result {
  std::vector<romlab_report> reports;
  std::vector<std::string> failed;
  std::string json;
};

struct romlab_bytes {
  romlab::Bytes data;
};

namespace {

thread_local std::string last_error;

template <typename F>
romlab_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return ROMLAB_OK;
  } catch (const romlab::Error& e) {
    last_error = e.what();
    return static_cast<romlab_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return ROMLAB_E_INTERNAL;
}

void require(const void* p, const char* what) {
  if (p == nullptr) romlab::fail(romlab::ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

romlab_report wrap(romlab::GameReport r) {
  std::string json = romlab::report_json(r);
  return romlab_report{std::move(r), std::move(json)};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) romlab::fail(romlab::ErrorCode::kIo, "cannot open " + path);
  out << text;
  if (!out) romlab::fail(romlab::ErrorCode::kIo, "write failed for " + path);
}

romlab::Statement statement(const uint8_t* program, size_t program_len, const uint8_t* input,
                            size_t input_len, uint64_t t) {
  require(program, "program");
  if (input_len > 0) require(input, "input");
  romlab::Statement w;
  w.machine = romlab::Program::decode(romlab::ByteView(program, program_len));
  w.input.assign(input, input + input_len);
  w.time_bound = t;
  return w;
}

romlab::OracleHandle cli_oracle(uint64_t k, uint64_t seed) {
  return romlab::OracleHandle::random(k, romlab::LengthFunction::identity(), seed);
}

}  // namespace

extern "C" {

const char* romlab_version(void) { return romlab::kVersion; }

const char* romlab_last_error(void) { return last_error.c_str(); }

const char* romlab_status_name(romlab_status s) {
  switch (s) {
    case ROMLAB_OK: return "ok";
    case ROMLAB_E_INVALID_ARGUMENT: return "invalid-argument";
    case ROMLAB_E_MALFORMED: return "malformed";
    case ROMLAB_E_STATE: return "state";
    case ROMLAB_E_CAPACITY: return "capacity";
    case ROMLAB_E_BUDGET: return "budget";
    case ROMLAB_E_EVAL_FAILURE: return "eval-failure";
    case ROMLAB_E_CONFIG: return "config";
    case ROMLAB_E_IO: return "io";
    case ROMLAB_E_INTERNAL: return "internal";
  }
  return "unknown";
}

romlab_status romlab_run_game(const char* game, const char* scheme, const char* adversary,
                              uint64_t k, uint64_t trials, uint64_t seed, int64_t ensemble,
                              romlab_report** out) {
  return guarded([&] {
    require(game, "game");
    require(adversary, "adversary");
    require(out, "out");
    romlab::GameConfig c;
    c.game = romlab::parse_game(game);
    if (scheme != nullptr) {
      c.scheme = scheme;
    } else if (c.game == romlab::GameKind::kIndRom || c.game == romlab::GameKind::kIndImpl ||
               c.game == romlab::GameKind::kCcaKeyRecovery) {
      c.scheme = "encryption";
    }
    c.adversary = romlab::parse_adversary(adversary);
    c.k = k;
    c.trials = trials;
    c.seed = seed;
    if (ensemble >= 0) c.ensemble = romlab::EnsembleId{static_cast<std::uint64_t>(ensemble)};
    *out = new romlab_report(wrap(romlab::run_game(c)));
  });
}

romlab_status romlab_estimate_evasive(const char* relation, const char* attacker, uint64_t k,
                                      uint64_t trials, uint64_t seed, romlab_report** out) {
  return guarded([&] {
    require(relation, "relation");
    require(attacker, "attacker");
    require(out, "out");
    const romlab::Relation r = romlab::parse_relation(romlab::default_registry(), relation);
    *out = new romlab_report(wrap(romlab::estimate_evasiveness(
        r, romlab::parse_evasion_attacker(attacker), k, trials, seed)));
  });
}

const char* romlab_report_json(const romlab_report* r) { return r ? r->json.c_str() : ""; }

const char* romlab_report_game(const romlab_report* r) { return r ? r->report.game.c_str() : ""; }

uint64_t romlab_report_trials(const romlab_report* r) { return r ? r->report.trials : 0; }

uint64_t romlab_report_successes(const romlab_report* r) { return r ? r->report.successes : 0; }

double romlab_report_rate(const romlab_report* r) { return r ? r->report.rate() : 0.0; }

int romlab_report_bound(const romlab_report* r, double* bound) {
  if (r == nullptr || !r->report.bound) return 0;
  if (bound != nullptr) *bound = *r->report.bound;
  return 1;
}

int romlab_report_query_count(const romlab_report* r, const char* name, uint64_t* value) {
  if (r == nullptr || name == nullptr) return 0;
  auto it = r->report.query_counts.find(name);
  if (it == r->report.query_counts.end()) return 0;
  if (value != nullptr) *value = it->second;
  return 1;
}

romlab_status romlab_report_write(const romlab_report* r, const char* path) {
  return guarded([&] {
    require(r, "report");
    require(path, "path");
    write_file(path, r->json);
  });
}

void romlab_report_free(romlab_report* r) { delete r; }

romlab_status romlab_run_demo(const char* name, int64_t ensemble, const char* scheme, uint64_t k,
                              uint64_t trials, uint64_t rom_trials, uint64_t impl_trials,
                              uint64_t seed, romlab_demo_result** out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    romlab::DemoConfig c;
    c.name = name;
    if (ensemble >= 0) c.ensemble = static_cast<std::uint64_t>(ensemble);
    if (scheme != nullptr) c.scheme = scheme;
    if (k != 0) c.k = k;
    if (trials != 0) c.trials = trials;
    if (rom_trials != 0) c.rom_trials = rom_trials;
    if (impl_trials != 0) c.impl_trials = impl_trials;
    c.seed = seed;
    romlab::DemoOutcome o = romlab::run_demo(c);
    auto d = std::make_unique<romlab_demo_result>();
    nlohmann::ordered_json all = nlohmann::ordered_json::array();
    for (romlab::GameReport& r : o.reports) {
      d->reports.push_back(wrap(std::move(r)));
      all.push_back(nlohmann::ordered_json::parse(d->reports.back().json));
    }
    d->failed = std::move(o.failed);
    d->json = all.dump(2) + "\n";
    *out = d.release();
  });
}

size_t romlab_demo_report_count(const romlab_demo_result* d) { return d ? d->reports.size() : 0; }

const romlab_report* romlab_demo_report(const romlab_demo_result* d, size_t i) {
  if (d == nullptr || i >= d->reports.size()) return nullptr;
  return &d->reports[i];
}

size_t romlab_demo_failure_count(const romlab_demo_result* d) { return d ? d->failed.size() : 0; }

const char* romlab_demo_failure(const romlab_demo_result* d, size_t i) {
  if (d == nullptr || i >= d->failed.size()) return nullptr;
  return d->failed[i].c_str();
}

const char* romlab_demo_json(const romlab_demo_result* d) { return d ? d->json.c_str() : ""; }

romlab_status romlab_demo_write(const romlab_demo_result* d, const char* path) {
  return guarded([&] {
    require(d, "demo result");
    require(path, "path");
    write_file(path, d->json);
  });
}

void romlab_demo_free(romlab_demo_result* d) { delete d; }

size_t romlab_demo_list_count(void) { return romlab::demo_list().size(); }

const char* romlab_demo_list_name(size_t i) {
  const auto& l = romlab::demo_list();
  return i < l.size() ? l[i].name.c_str() : nullptr;
}

const char* romlab_demo_list_claim(size_t i) {
  const auto& l = romlab::demo_list();
  return i < l.size() ? l[i].claim.c_str() : nullptr;
}

const char* romlab_demo_list_command(size_t i) {
  const auto& l = romlab::demo_list();
  return i < l.size() ? l[i].command.c_str() : nullptr;
}

const char* romlab_registry_manifest(void) {
  static const std::string manifest = romlab::default_registry()->manifest();
  return manifest.c_str();
}

const uint8_t* romlab_bytes_data(const romlab_bytes* b) { return b ? b->data.data() : nullptr; }

size_t romlab_bytes_size(const romlab_bytes* b) { return b ? b->data.size() : 0; }

void romlab_bytes_free(romlab_bytes* b) { delete b; }

romlab_status romlab_program_named(const char* name, romlab_bytes** out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    const auto reg = romlab::default_registry();
    const std::string s = name;
    const std::string prefix = "ensemble:";
    if (s == "universal") {
      *out = new romlab_bytes{reg->universal().encode()};
      return;
    }
    if (s.rfind(prefix, 0) == 0) {
      std::uint64_t id = 0;
      const char* first = s.data() + prefix.size();
      const char* last = s.data() + s.size();
      auto [p, ec] = std::from_chars(first, last, id);
      if (ec != std::errc() || p != last || first == last || !reg->contains(romlab::EnsembleId{id})) {
        romlab::fail(romlab::ErrorCode::kConfig, "unknown ensemble in " + s);
      }
      const auto& e = reg->spec(romlab::EnsembleId{id});
      if (e.native_only) romlab::fail(romlab::ErrorCode::kConfig, e.name + " has no program");
      *out = new romlab_bytes{e.program.encode()};
      return;
    }
    romlab::fail(romlab::ErrorCode::kConfig, "unknown program name: " + s);
  });
}

romlab_status romlab_csproof_prove(const uint8_t* program, size_t program_len,
                                   const uint8_t* input, size_t input_len, uint64_t t, uint64_t k,
                                   uint64_t oracle_seed, romlab_bytes** proof) {
  return guarded([&] {
    require(proof, "proof");
    const romlab::Statement w = statement(program, program_len, input, input_len, t);
    *proof = new romlab_bytes{romlab::prove(k, w, cli_oracle(k, oracle_seed)).serialize()};
  });
}

romlab_status romlab_csproof_verify(const uint8_t* program, size_t program_len,
                                    const uint8_t* input, size_t input_len, uint64_t t, uint64_t k,
                                    uint64_t oracle_seed, const uint8_t* proof, size_t proof_len,
                                    int* accept) {
  return guarded([&] {
    require(accept, "accept");
    if (proof_len > 0) require(proof, "proof");
    const romlab::Statement w = statement(program, program_len, input, input_len, t);
    *accept = romlab::verify_bytes(k, w, romlab::ByteView(proof, proof_len),
                                   cli_oracle(k, oracle_seed)) ? 1 : 0;
  });
}

}  // extern "C"
