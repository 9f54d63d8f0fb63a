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

#include "romlab/ensembles.hpp"

#include <sstream>

#include "embed.hpp"
#include "romlab/coding.hpp"
#include "romlab/error.hpp"
#include "romlab/universal.hpp"

namespace romlab {

namespace {

constexpr std::uint32_t kViewSeedCap = 64;
constexpr std::uint32_t kProductSeedCap = 256;

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > UINT64_MAX - b ? UINT64_MAX : a + b; }

// Bound for a guest run through embed(): every guest step costs at most 17
// wrapper steps, plus per-copy setup linear in the input and guest RAM.
StepBound embedded_bound(const StepBound& b, std::uint64_t copies, std::uint32_t guest_ram) {
  std::uint64_t pow3 = 1;
  for (unsigned i = 0; i < b.degree; ++i) pow3 *= 3;
  StepBound out;
  out.degree = std::max(1u, b.degree);
  out.coef = sat_mul(copies, sat_add(sat_mul(17, sat_mul(b.coef, pow3)), 32));
  out.constant = sat_mul(copies, sat_add(sat_mul(17, b.constant), 8ull * guest_ram + 512));
  return out;
}

Bytes adjust_bytes(Bytes raw, std::size_t n) {
  raw.resize(n, 0);
  return raw;
}

class EnsembleBackend final : public OracleBackend {
 public:
  EnsembleBackend(std::shared_ptr<const Registry> r, EnsembleId id, Bytes seed)
      : registry_(std::move(r)), id_(id), seed_(std::move(seed)) {
    if (!registry_->contains(id_)) fail(ErrorCode::kInvalidArgument, "unknown ensemble index");
    bits_ = registry_->out_bits(id_, seed_.size());
  }
  std::uint64_t out_bits() const override { return bits_; }
  Bits answer(ByteView x) override { return registry_->eval(id_, seed_, x); }
  std::string describe() const override {
    return "ensemble(" + registry_->spec(id_).name + ",k=" + std::to_string(8 * seed_.size()) + ")";
  }

 private:
  std::shared_ptr<const Registry> registry_;
  EnsembleId id_;
  Bytes seed_;
  std::uint64_t bits_ = 0;
};

}  // namespace

std::uint64_t StepBound::operator()(std::uint64_t n) const {
  std::uint64_t p = 1;
  for (unsigned i = 0; i < degree; ++i) p = sat_mul(p, n + 1);
  return sat_add(sat_mul(coef, p), constant);
}

Bytes eval_input(ByteView seed, ByteView x) {
  Bytes in;
  in.reserve(seed.size() + x.size() + 10);
  put_varint(in, seed.size());
  in.insert(in.end(), seed.begin(), seed.end());
  in.insert(in.end(), x.begin(), x.end());
  return in;
}

Bytes eval_raw(const EnsembleSpec& spec, ByteView seed, ByteView x, EvalRoute route) {
  if (seed.empty()) fail(ErrorCode::kInvalidArgument, "seed must be at least one byte");
  const bool native =
      route == EvalRoute::kNative || (route == EvalRoute::kAuto && static_cast<bool>(spec.native));
  if (native) {
    if (!spec.native) fail(ErrorCode::kInvalidArgument, spec.name + ": no native evaluator");
    return spec.native(seed, x);
  }
  if (spec.native_only) fail(ErrorCode::kInvalidArgument, spec.name + ": no Eval program");
  const Bytes in = eval_input(seed, x);
  const std::uint64_t cap = spec.steps(in.size());
  RunResult r = run(spec.program, in, std::max<std::uint64_t>(cap, 1));
  if (r.verdict == Verdict::kTimeout) {
    fail(ErrorCode::kEvalFailure, spec.name + ": Eval exceeded its declared step bound");
  }
  if (r.verdict == Verdict::kReject) fail(ErrorCode::kEvalFailure, spec.name + ": Eval rejected");
  return std::move(r.output);
}

EnsembleId Registry::add(EnsembleSpec spec) {
  if (finalized_) fail(ErrorCode::kState, "registry is finalized");
  if (spec.name.empty()) fail(ErrorCode::kInvalidArgument, "ensemble needs a name");
  if (find(spec.name)) fail(ErrorCode::kInvalidArgument, "duplicate ensemble name: " + spec.name);
  if (!spec.native_only && !spec.program.all_well_formed()) {
    fail(ErrorCode::kInvalidArgument, spec.name + ": program has malformed records");
  }
  if (spec.native_only && !spec.native) {
    fail(ErrorCode::kInvalidArgument, spec.name + ": native-only ensemble without evaluator");
  }
  specs_.push_back(std::move(spec));
  return EnsembleId{specs_.size()};
}

void Registry::finalize() {
  if (finalized_) return;
  universal_ = build_universal(*this);
  finalized_ = true;
}

std::vector<EnsembleId> Registry::ids() const {
  std::vector<EnsembleId> v;
  for (std::uint64_t i = 1; i <= specs_.size(); ++i) v.push_back(EnsembleId{i});
  return v;
}

const EnsembleSpec& Registry::spec(EnsembleId id) const {
  if (!contains(id)) fail(ErrorCode::kInvalidArgument, "unknown ensemble index " + std::to_string(id.value));
  return specs_[id.value - 1];
}

std::optional<EnsembleId> Registry::find(std::string_view name) const {
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    if (specs_[i].name == name) return EnsembleId{i + 1};
  }
  return std::nullopt;
}

std::uint64_t Registry::out_bits(EnsembleId id, std::size_t seed_bytes) const {
  const std::uint64_t k = 8 * seed_bytes;
  auto v = spec(id).out_len.try_eval(k);
  if (!v || *v == 0) {
    fail(ErrorCode::kInvalidArgument, spec(id).name + ": l_out undefined at k=" + std::to_string(k));
  }
  return *v;
}

Bytes Registry::eval_raw(EnsembleId id, ByteView seed, ByteView x, EvalRoute route) const {
  return romlab::eval_raw(spec(id), seed, x, route);
}

Bits Registry::eval(EnsembleId id, ByteView seed, ByteView x, EvalRoute route) const {
  const std::uint64_t bits = out_bits(id, seed.size());
  return Bits::from_bytes(eval_raw(id, seed, x, route)).resized(bits);
}

std::string Registry::manifest() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    const EnsembleSpec& s = specs_[i];
    os << (i + 1) << ' ' << s.name << ' ' << (s.in_len ? s.in_len->describe() : "-") << ' '
       << s.out_len.describe() << ' ' << (s.native_only ? "native" : s.program.digest_hex())
       << '\n';
  }
  return os.str();
}

const Program& Registry::universal() const {
  if (!finalized_) fail(ErrorCode::kState, "registry is not finalized");
  return universal_;
}

Bytes encode_pair(std::uint64_t i, ByteView seed) {
  Bytes out;
  put_varint(out, i);
  out.insert(out.end(), seed.begin(), seed.end());
  return out;
}

std::optional<std::pair<std::uint64_t, Bytes>> decode_pair(ByteView code) {
  auto v = get_varint(code);
  if (!v) return std::nullopt;
  return std::make_pair(v->first, Bytes(code.begin() + v->second, code.end()));
}

OracleHandle ensemble_oracle(std::shared_ptr<const Registry> registry, EnsembleId id, Bytes seed) {
  return OracleHandle(std::make_shared<EnsembleBackend>(std::move(registry), id, std::move(seed)));
}

std::string view_name(std::string_view base, Tag tag) {
  return std::string(base) + std::string(static_cast<std::size_t>(tag), '\'');
}

EnsembleSpec tagged_view(const EnsembleSpec& base, Tag tag) {
  if (tag == Tag::kRaw) fail(ErrorCode::kInvalidArgument, "tagged view needs a tag");
  if (base.native_only) fail(ErrorCode::kInvalidArgument, "tagged view of a native-only ensemble");
  auto b = std::make_shared<const EnsembleSpec>(base);
  EnsembleSpec v;
  v.name = view_name(base.name, tag);
  EmbedPlan plan;
  plan.tag = static_cast<std::uint8_t>(tag);
  plan.seed_cap = kViewSeedCap;
  v.program = embed(base.program, plan);
  v.out_len = base.out_len;
  v.in_len = base.in_len;
  v.steps = embedded_bound(base.steps, 1, base.program.ram_bytes());
  const auto t = static_cast<std::uint8_t>(tag);
  v.native = [b, t](ByteView seed, ByteView x) {
    if (seed.size() > kViewSeedCap) fail(ErrorCode::kEvalFailure, "view seed longer than 64 bytes");
    Bytes q;
    q.reserve(x.size() + 1);
    q.push_back(t);
    q.insert(q.end(), x.begin(), x.end());
    return romlab::eval_raw(*b, seed, q);
  };
  return v;
}

EnsembleId direct_product(Registry& registry, EnsembleId base_id, std::uint64_t m) {
  if (m == 0) fail(ErrorCode::kInvalidArgument, "direct product with m = 0");
  const EnsembleSpec& base = registry.spec(base_id);
  if (!base.in_len) fail(ErrorCode::kInvalidArgument, base.name + " declares no input length");
  if (base.native_only) fail(ErrorCode::kInvalidArgument, "direct product of a native-only ensemble");
  auto b = std::make_shared<const EnsembleSpec>(base);
  EnsembleSpec p;
  p.name = base.name + "^" + std::to_string(m);
  EmbedPlan plan;
  plan.copies = m;
  plan.in_len = *base.in_len;
  plan.out_len = base.out_len;
  plan.seed_cap = kProductSeedCap;
  if (m == 1) {
    p.program = base.program;
    p.steps = base.steps;
  } else {
    p.program = embed(base.program, plan);
    p.steps = embedded_bound(base.steps, m, base.program.ram_bytes());
  }
  p.out_len = LengthFunction::scaled(base.out_len, m);
  p.in_len = LengthFunction::scaled(*base.in_len, m);
  p.native = [b, m](ByteView seed, ByteView x) {
    if (m == 1) return romlab::eval_raw(*b, seed, x);
    if (seed.size() % m != 0 || seed.size() > kProductSeedCap) {
      fail(ErrorCode::kEvalFailure, "product seed does not split into equal blocks");
    }
    const std::size_t len = seed.size() / m;
    const auto lin = b->in_len->try_eval(8 * len);
    const auto lout = b->out_len.try_eval(8 * len);
    if (!lin || !lout || *lin % 8 || *lout % 8) {
      fail(ErrorCode::kEvalFailure, "product block lengths are not byte aligned");
    }
    const std::size_t xb = *lin / 8, ob = *lout / 8;
    Bytes out;
    for (std::uint64_t j = 0; j < m; ++j) {
      const std::size_t lo = std::min(x.size(), j * xb), hi = std::min(x.size(), (j + 1) * xb);
      Bytes block = romlab::eval_raw(*b, seed.subspan(j * len, len), x.subspan(lo, hi - lo));
      block = adjust_bytes(std::move(block), ob);
      out.insert(out.end(), block.begin(), block.end());
    }
    return out;
  };
  return registry.add(std::move(p));
}

EnsembleId nissim_build(Registry& registry, std::string name, NissimPredicate in_relation,
                        const LengthFunction& in_len, const LengthFunction& out_len,
                        std::uint64_t t_blocks) {
  if (t_blocks == 0) fail(ErrorCode::kInvalidArgument, "nissim: t_blocks must be positive");
  if (!in_relation) fail(ErrorCode::kInvalidArgument, "nissim: missing relation");
  EnsembleSpec s;
  s.name = std::move(name);
  s.program = Program({Instr::make(Op::kHaltReject)}, 8);
  s.native_only = true;
  s.in_len = in_len;
  s.out_len = out_len;
  s.native = [in_relation, in_len, out_len, t_blocks](ByteView seed, ByteView x) {
    const std::uint64_t k = 8 * seed.size();
    const auto lo = out_len.try_eval(k);
    const auto li = in_len.try_eval(k);
    if (!lo || !li || k % t_blocks != 0 || k / t_blocks != *lo) {
      fail(ErrorCode::kEvalFailure, "nissim: seed is not t_blocks blocks of l_out bits");
    }
    const Bits sb = Bits::from_bytes(seed);
    const Bits xb = Bits::from_bytes(x).resized(*li);
    Bits block;
    for (std::uint64_t i = 0; i < t_blocks; ++i) {
      block = Bits::zeros(*lo);
      for (std::uint64_t j = 0; j < *lo; ++j) block.set_bit(j, sb.bit(i * *lo + j));
      if (!in_relation(xb, block)) break;
    }
    return block.bytes();
  };
  return registry.add(std::move(s));
}

Registry builtin_registry() {
  Registry r;
  const EnsembleSpec base[] = {constant_spec(), table_spec(), keyed_hash_spec(),
                               keyed_hash_trunc_spec()};
  for (const EnsembleSpec& s : base) r.add(s);
  for (const EnsembleSpec& s : base) r.add(tagged_view(s, Tag::kPrime));
  return r;
}

std::shared_ptr<const Registry> default_registry() {
  static const std::shared_ptr<const Registry> shared = [] {
    auto r = std::make_shared<Registry>(builtin_registry());
    r->finalize();
    return std::shared_ptr<const Registry>(std::move(r));
  }();
  return shared;
}

std::shared_ptr<const Registry> closed_registry() {
  static const std::shared_ptr<const Registry> shared = [] {
    auto r = std::make_shared<Registry>(builtin_registry());
    const std::size_t n = r->size();
    for (std::uint64_t i = n / 2 + 1; i <= n; ++i) {
      r->add(tagged_view(r->spec(EnsembleId{i}), Tag::kPrime));
    }
    r->finalize();
    return std::shared_ptr<const Registry>(std::move(r));
  }();
  return shared;
}

std::optional<EnsembleId> prime_view_of(const Registry& reg, EnsembleId id) {
  return reg.find(view_name(reg.spec(id).name, Tag::kPrime));
}

}  // namespace romlab
