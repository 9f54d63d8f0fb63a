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

#include "romlab/csproof.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <unordered_map>

#include "romlab/coding.hpp"
#include "romlab/error.hpp"

namespace romlab {

namespace {

std::uint64_t challenge_index(const Digest& d, std::uint64_t steps) {
  return load_u64(d.data()) % steps;
}

constexpr std::uint8_t kLeafTag = 0x4C;
constexpr std::uint8_t kNodeTag = 0x4E;
constexpr std::uint8_t kDigestTag = 0x57;
constexpr std::uint8_t kChallengeTag = 0x43;
constexpr std::uint8_t kProofVersion = 2;

class Hasher {
 public:
  explicit Hasher(const OracleHandle& oracle) : h_(oracle.resized(256)) {}

  Digest call(ByteView q) const {
    Bits b = h_.query(q);
    Digest d;
    std::copy_n(b.bytes().begin(), d.size(), d.begin());
    return d;
  }
  Digest leaf(ByteView state) {
    buf_.assign(1, kLeafTag);
    buf_.insert(buf_.end(), state.begin(), state.end());
    return call(buf_);
  }
  Digest node(const Digest& l, const Digest& r) {
    buf_.assign(1, kNodeTag);
    buf_.insert(buf_.end(), l.begin(), l.end());
    buf_.insert(buf_.end(), r.begin(), r.end());
    return call(buf_);
  }
  Digest top(const Digest& tree, const Digest& first, const Digest& last) {
    buf_.assign(1, kNodeTag);
    for (const Digest* d : {&tree, &first, &last}) buf_.insert(buf_.end(), d->begin(), d->end());
    return call(buf_);
  }
  Digest statement(const Bytes& ser) {
    buf_.assign(1, kDigestTag);
    buf_.insert(buf_.end(), ser.begin(), ser.end());
    return call(buf_);
  }
  Digest challenge(const Digest& root, const Digest& digest, std::uint32_t j) {
    buf_.assign(1, kChallengeTag);
    buf_.insert(buf_.end(), root.begin(), root.end());
    buf_.insert(buf_.end(), digest.begin(), digest.end());
    put_u32(buf_, j);
    return call(buf_);
  }

 private:
  OracleHandle h_;
  Bytes buf_;
};

// Number of nodes per tree level, leaves first, for T + 1 leaves.
std::vector<std::uint64_t> level_sizes(std::uint64_t steps) {
  std::vector<std::uint64_t> sizes{steps + 1};
  while (sizes.back() > 1) sizes.push_back((sizes.back() + 1) / 2);
  return sizes;
}

// Calls emit(i, serialized state i) for i = 0..T in order.
using Trace = std::function<void(const std::function<void(std::uint64_t, const Bytes&)>&)>;

CsProof commit_and_open(std::uint64_t k, const Statement& w, std::uint64_t steps,
                        const Trace& trace, const OracleHandle& oracle,
                        const std::function<void()>& after_first_pass) {
  Hasher h(oracle);
  std::vector<std::vector<Digest>> levels(1);
  levels[0].reserve(steps + 1);
  trace([&](std::uint64_t, const Bytes& s) { levels[0].push_back(h.leaf(s)); });
  after_first_pass();
  if (levels[0].size() != steps + 1) fail(ErrorCode::kInternal, "trace length mismatch");
  while (levels.back().size() > 1) {
    const auto& cur = levels.back();
    std::vector<Digest> next;
    next.reserve((cur.size() + 1) / 2);
    for (std::size_t i = 0; i < cur.size(); i += 2) {
      next.push_back(i + 1 < cur.size() ? h.node(cur[i], cur[i + 1]) : cur[i]);
    }
    levels.push_back(std::move(next));
  }
  const Digest& tree = levels.back()[0];

  CsProof proof;
  proof.steps = steps;
  proof.root = h.top(tree, levels[0].front(), levels[0].back());
  const Digest digest = h.statement(w.serialize());
  const std::uint64_t m = probe_count(k);

  std::vector<std::uint64_t> wanted{0, steps};
  for (std::uint32_t j = 0; j < m; ++j) {
    proof.challenges.push_back(h.challenge(proof.root, digest, j));
    const std::uint64_t c = challenge_index(proof.challenges.back(), steps);
    wanted.push_back(c);
    wanted.push_back(c + 1);
  }
  std::map<std::uint64_t, Bytes> states;
  for (std::uint64_t i : wanted) states.emplace(i, Bytes{});
  trace([&](std::uint64_t i, const Bytes& s) {
    auto it = states.find(i);
    if (it != states.end()) it->second = s;
  });

  auto path_of = [&](std::uint64_t idx) {
    std::vector<Digest> path;
    for (std::size_t l = 0; l + 1 < levels.size(); ++l, idx >>= 1) {
      const std::uint64_t sib = idx ^ 1;
      if (sib < levels[l].size()) path.push_back(levels[l][sib]);
    }
    return path;
  };
  proof.openings.push_back({0, states[0], {tree}});
  proof.openings.push_back({steps, states[steps], {}});
  for (std::size_t j = 2; j < wanted.size(); ++j) {
    proof.openings.push_back({wanted[j], states[wanted[j]], path_of(wanted[j])});
  }
  return proof;
}

std::uint64_t key(std::size_t level, std::uint64_t idx) {
  return (static_cast<std::uint64_t>(level) << 48) | idx;
}

// Authenticates leaf_hash at o.index against the cache, which starts out
// holding the tree root. Once the walk reaches a cached node the remaining
// siblings are compared instead of hashed.
bool check_path(Hasher& h, const Opening& o, Digest cur, const std::vector<std::uint64_t>& sizes,
                std::unordered_map<std::uint64_t, Digest>& cache) {
  std::uint64_t idx = o.index;
  std::size_t p = 0;
  bool merged = false;
  for (std::size_t l = 0; l < sizes.size(); ++l, idx >>= 1) {
    auto it = cache.find(key(l, idx));
    if (it != cache.end()) {
      if (!merged && it->second != cur) return false;
      merged = true;
    } else {
      if (merged) return false;
      cache.emplace(key(l, idx), cur);
    }
    if (l + 1 == sizes.size()) break;
    const std::uint64_t sib = idx ^ 1;
    if (sib >= sizes[l]) continue;
    if (p >= o.path.size()) return false;
    const Digest& s = o.path[p++];
    if (merged) {
      auto sit = cache.find(key(l, sib));
      if (sit == cache.end() || sit->second != s) return false;
      continue;
    }
    cache.emplace(key(l, sib), s);
    cur = (idx & 1) ? h.node(s, cur) : h.node(cur, s);
  }
  return merged && p == o.path.size();
}

bool verify_impl(std::uint64_t k, const Statement& w, const CsProof& proof,
                 const OracleHandle& oracle) {
  const std::uint64_t steps = proof.steps;
  const std::uint64_t m = probe_count(k);
  if (steps == 0 || steps > w.time_bound || steps >= kTimeBoundCap) return false;
  if (proof.openings.size() != 2 + 2 * m || proof.challenges.size() != m) return false;
  const Opening& first = proof.openings[0];
  const Opening& last = proof.openings[1];
  if (first.index != 0 || first.path.size() != 1) return false;
  if (last.index != steps || !last.path.empty()) return false;

  const Program& M = w.machine;
  if (first.leaf != initial_state(M).serialize()) return false;
  const MachineState final_state = MachineState::deserialize(last.leaf, M.ram_bytes());
  if (final_state.status != Status::kAccept) return false;

  Hasher h(oracle);
  const Digest l0 = h.leaf(first.leaf);
  const Digest lt = h.leaf(last.leaf);
  const Digest& tree = first.path[0];
  if (h.top(tree, l0, lt) != proof.root) return false;

  const auto sizes = level_sizes(steps);
  std::unordered_map<std::uint64_t, Digest> cache;
  cache.emplace(key(sizes.size() - 1, 0), tree);
  const Digest digest = h.statement(w.serialize());

  auto leaf_hash = [&](const Opening& o) {
    if (o.index == 0 && o.leaf == first.leaf) return l0;
    if (o.index == steps && o.leaf == last.leaf) return lt;
    return h.leaf(o.leaf);
  };
  for (std::uint32_t j = 0; j < m; ++j) {
    const Digest d = h.challenge(proof.root, digest, j);
    if (d != proof.challenges[j]) return false;
    const std::uint64_t c = challenge_index(d, steps);
    const Opening& a = proof.openings[2 + 2 * j];
    const Opening& b = proof.openings[3 + 2 * j];
    if (a.index != c || b.index != c + 1) return false;
    if (c == 0 && a.leaf != first.leaf) return false;
    if (c + 1 == steps && b.leaf != last.leaf) return false;
    if (!check_path(h, a, leaf_hash(a), sizes, cache)) return false;
    if (!check_path(h, b, leaf_hash(b), sizes, cache)) return false;
    const MachineState s = MachineState::deserialize(a.leaf, M.ram_bytes());
    if (s.halted()) return false;
    if (step(s, M, w.input).serialize() != b.leaf) return false;
  }
  return true;
}

}  // namespace

Bytes Statement::serialize() const {
  Bytes out;
  const Bytes code = machine.encode();
  put_varint(out, code.size());
  out.insert(out.end(), code.begin(), code.end());
  put_varint(out, input.size());
  out.insert(out.end(), input.begin(), input.end());
  put_u64(out, time_bound);
  return out;
}

Bytes CsProof::serialize() const {
  Bytes out;
  out.push_back(kProofVersion);
  put_u64(out, steps);
  out.insert(out.end(), root.begin(), root.end());
  put_u16(out, static_cast<std::uint16_t>(challenges.size()));
  for (const Digest& d : challenges) out.insert(out.end(), d.begin(), d.end());
  for (const Opening& o : openings) {
    put_u64(out, o.index);
    put_u32(out, static_cast<std::uint32_t>(o.leaf.size()));
    out.insert(out.end(), o.leaf.begin(), o.leaf.end());
    put_u16(out, static_cast<std::uint16_t>(o.path.size()));
    for (const Digest& d : o.path) out.insert(out.end(), d.begin(), d.end());
  }
  return out;
}

CsProof CsProof::deserialize(ByteView bytes) {
  Reader r(bytes);
  if (r.u8() != kProofVersion) fail(ErrorCode::kMalformed, "unknown proof version");
  CsProof p;
  p.steps = r.u64();
  auto root = r.take(32);
  std::copy(root.begin(), root.end(), p.root.begin());
  p.challenges.resize(r.u16());
  for (Digest& d : p.challenges) {
    auto v = r.take(32);
    std::copy(v.begin(), v.end(), d.begin());
  }
  while (!r.done()) {
    Opening o;
    o.index = r.u64();
    o.leaf = r.bytes(r.u32());
    const std::uint16_t n = r.u16();
    o.path.resize(n);
    for (Digest& d : o.path) {
      auto v = r.take(32);
      std::copy(v.begin(), v.end(), d.begin());
    }
    p.openings.push_back(std::move(o));
  }
  return p;
}

std::uint64_t probe_count(std::uint64_t k) { return kProbeBase + (k + 63) / 64; }

std::uint64_t bumped_parameter(std::uint64_t k, const Statement& w) {
  return k + 8 * w.serialize().size();
}

CsProof prove(std::uint64_t k, const Statement& w, const OracleHandle& oracle) {
  RunResult res = run(w.machine, w.input, w.time_bound);
  if (res.verdict != Verdict::kAccept) {
    fail(ErrorCode::kInvalidArgument, "statement does not hold: machine does not accept in time");
  }
  Trace trace = [&](const std::function<void(std::uint64_t, const Bytes&)>& emit) {
    std::uint64_t i = 0;
    Bytes buf;
    run_visit(w.machine, w.input, res.steps, [&](const MachineState& s) {
      buf.clear();
      s.serialize_into(buf);
      emit(i++, buf);
    });
  };
  return commit_and_open(k, w, res.steps, trace, oracle, [] {});
}

CsProof prove_truncated(std::uint64_t k, const Statement& w, std::uint64_t steps,
                        const OracleHandle& oracle) {
  if (steps == 0) fail(ErrorCode::kInvalidArgument, "truncated trace needs at least one step");
  std::vector<Bytes> prefix;
  RunResult res = run_visit(w.machine, w.input, steps - 1,
                            [&](const MachineState& s) { prefix.push_back(s.serialize()); });
  if (prefix.size() != steps || res.verdict != Verdict::kTimeout) {
    fail(ErrorCode::kInvalidArgument, "machine halts before the truncation point");
  }
  MachineState fake = MachineState::deserialize(prefix.back(), w.machine.ram_bytes());
  fake.status = Status::kAccept;
  const Bytes fake_bytes = fake.serialize();
  Trace trace = [&](const std::function<void(std::uint64_t, const Bytes&)>& emit) {
    for (std::uint64_t i = 0; i < steps; ++i) emit(i, prefix[i]);
    emit(steps, fake_bytes);
  };
  return commit_and_open(k, w, steps, trace, oracle, [] {});
}

namespace {

std::atomic<std::uint64_t> g_plain_calls{0};
std::atomic<std::uint64_t> g_bumped_calls{0};

bool verify_checked(std::uint64_t k, const Statement& w, const CsProof& proof,
                    const OracleHandle& oracle) {
  try {
    return verify_impl(k, w, proof, oracle);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kBudget) throw;
    return false;
  }
}

}  // namespace

bool verify(std::uint64_t k, const Statement& w, const CsProof& proof,
            const OracleHandle& oracle) {
  ++g_plain_calls;
  return verify_checked(k, w, proof, oracle);
}

bool verify_bytes(std::uint64_t k, const Statement& w, ByteView proof,
                  const OracleHandle& oracle) {
  CsProof p;
  try {
    p = CsProof::deserialize(proof);
  } catch (const Error&) {
    return false;
  }
  return verify(k, w, p, oracle);
}

CsProof prove_bumped(std::uint64_t k, const Statement& w, const OracleHandle& oracle) {
  return prove(bumped_parameter(k, w), w, oracle);
}

bool verify_bumped(std::uint64_t k, const Statement& w, const CsProof& proof,
                   const OracleHandle& oracle) {
  ++g_bumped_calls;
  return verify_checked(bumped_parameter(k, w), w, proof, oracle);
}

LoggedVerdict verify_logged(std::uint64_t k, const Statement& w, const CsProof& proof,
                            const OracleHandle& oracle) {
  LoggedVerdict v;
  v.accept = verify_bumped(k, w, proof, oracle.logged(&v.log));
  return v;
}

VerifyCalls verify_calls() { return {g_plain_calls.load(), g_bumped_calls.load()}; }

}  // namespace romlab
