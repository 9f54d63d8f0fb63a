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

#define OPENSSL_SUPPRESS_DEPRECATED
#include "romlab/oracle.hpp"

#include <openssl/sha.h>

#include <algorithm>

#include "romlab/coding.hpp"
#include "romlab/error.hpp"

namespace romlab {

const char* tag_name(Tag t) {
  switch (t) {
    case Tag::kRaw:
      return "raw";
    case Tag::kPrime:
      return "prime";
    case Tag::kDoublePrime:
      return "double_prime";
    case Tag::kTriplePrime:
      return "triple_prime";
  }
  return "?";
}

RandomOracle::RandomOracle(std::uint64_t k, const LengthFunction& ell,
                           std::uint64_t sampling_seed)
    : k_(k), seed_(sampling_seed) {
  if (k == 0) fail(ErrorCode::kInvalidArgument, "security parameter must be positive");
  out_bits_ = ell(k);
  if (out_bits_ == 0) fail(ErrorCode::kInvalidArgument, "oracle output length l(k) is zero");
  if (out_bits_ > polynomial_cap(k)) {
    fail(ErrorCode::kInvalidArgument, "oracle output length exceeds the polynomial cap");
  }
}

// H0 = SHA256(0x52 || seed || x); longer outputs chain SHA256(0x45 || H0 || j).
Bits RandomOracle::sample(ByteView x) const {
  std::uint8_t head[9];
  head[0] = 0x52;
  for (int i = 0; i < 8; ++i) head[1 + i] = static_cast<std::uint8_t>(seed_ >> (56 - 8 * i));
  std::uint8_t h0[SHA256_DIGEST_LENGTH];
  SHA256_CTX ctx;
  SHA256_Init(&ctx);
  SHA256_Update(&ctx, head, sizeof head);
  SHA256_Update(&ctx, x.data(), x.size());
  SHA256_Final(h0, &ctx);

  const std::size_t nbytes = (out_bits_ + 7) / 8;
  Bytes out;
  out.reserve(nbytes);
  if (nbytes <= SHA256_DIGEST_LENGTH) {
    out.assign(h0, h0 + nbytes);
  } else {
    std::uint8_t block[1 + SHA256_DIGEST_LENGTH + 4];
    block[0] = 0x45;
    std::copy(h0, h0 + SHA256_DIGEST_LENGTH, block + 1);
    std::uint8_t d[SHA256_DIGEST_LENGTH];
    for (std::uint32_t j = 0; out.size() < nbytes; ++j) {
      for (int i = 0; i < 4; ++i) block[33 + i] = static_cast<std::uint8_t>(j >> (24 - 8 * i));
      SHA256(block, sizeof block, d);
      const std::size_t take = std::min<std::size_t>(SHA256_DIGEST_LENGTH, nbytes - out.size());
      out.insert(out.end(), d, d + take);
    }
  }
  return Bits(std::move(out), out_bits_);
}

Bits RandomOracle::query(ByteView x) {
  ++queries_;
  if (!memoize_ || x.size() > kMemoMaxQuery) return sample(x);
  std::string key(reinterpret_cast<const char*>(x.data()), x.size());
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  Bits a = sample(x);
  if (memo_.size() < kMemoEntries) memo_.emplace(std::move(key), a);
  return a;
}

namespace {

class RandomBackend final : public OracleBackend {
 public:
  explicit RandomBackend(std::shared_ptr<RandomOracle> ro) : ro_(std::move(ro)) {}
  std::uint64_t out_bits() const override { return ro_->out_bits(); }
  Bits answer(ByteView x) override { return ro_->query(x); }
  std::string describe() const override {
    return "random(k=" + std::to_string(ro_->k()) + ",seed=" +
           std::to_string(ro_->sampling_seed()) + ")";
  }

 private:
  std::shared_ptr<RandomOracle> ro_;
};

}  // namespace

std::shared_ptr<OracleBackend> random_backend(std::shared_ptr<RandomOracle> ro) {
  return std::make_shared<RandomBackend>(std::move(ro));
}

struct OracleHandle::Root {
  std::shared_ptr<OracleBackend> backend;
  ViewCounters counters;
};

struct OracleHandle::Node {
  enum class Kind { kRoot, kTagged, kResized, kBudget, kLogger };
  Kind kind = Kind::kRoot;
  std::shared_ptr<Root> root;
  std::shared_ptr<const Node> parent;
  Tag tag = Tag::kRaw;
  bool transformed = false;
  std::uint64_t bits = 0;
  std::uint64_t budget = 0;
  Log* sink = nullptr;
  mutable std::uint64_t count = 0;

  std::uint64_t out_bits() const {
    if (kind == Kind::kRoot) return root->backend->out_bits();
    if (kind == Kind::kResized) return bits;
    return parent->out_bits();
  }

  Bits query(ByteView x) const {
    ++count;
    switch (kind) {
      case Kind::kRoot:
        ++root->counters.root;
        return root->backend->answer(x);
      case Kind::kTagged: {
        ++root->counters.by_tag[static_cast<int>(tag)];
        // Short queries dominate keygen; keep them off the heap.
        std::array<std::uint8_t, 64> small;
        if (x.size() < small.size()) {
          small[0] = static_cast<std::uint8_t>(tag);
          std::copy(x.begin(), x.end(), small.begin() + 1);
          return parent->query(ByteView(small.data(), x.size() + 1));
        }
        Bytes q;
        q.reserve(x.size() + 1);
        q.push_back(static_cast<std::uint8_t>(tag));
        q.insert(q.end(), x.begin(), x.end());
        return parent->query(q);
      }
      case Kind::kResized: {
        const std::uint64_t p = parent->out_bits();
        if (bits <= p) return parent->query(x).resized(bits);
        Bits acc;
        Bytes q;
        q.reserve(x.size() + 1);
        q.push_back(0);
        q.insert(q.end(), x.begin(), x.end());
        for (unsigned ctr = 0; acc.size() < bits; ++ctr) {
          if (ctr > 0xFF) fail(ErrorCode::kInvalidArgument, "resize beyond 256 sub-queries");
          q[0] = static_cast<std::uint8_t>(ctr);
          acc.append(parent->query(q));
        }
        return acc.resized(bits);
      }
      case Kind::kBudget:
        if (count > budget) {
          --count;
          fail(ErrorCode::kBudget, "adversary query budget exceeded");
        }
        return parent->query(x);
      case Kind::kLogger: {
        Bits a = parent->query(x);
        sink->emplace_back(Bytes(x.begin(), x.end()), a);
        return a;
      }
    }
    fail(ErrorCode::kInternal, "bad oracle node");
  }
};

OracleHandle::OracleHandle(std::shared_ptr<OracleBackend> backend) {
  if (!backend) fail(ErrorCode::kInvalidArgument, "null oracle backend");
  auto n = std::make_shared<Node>();
  n->root = std::make_shared<Root>();
  n->root->backend = std::move(backend);
  node_ = std::move(n);
}

OracleHandle OracleHandle::random(std::uint64_t k, const LengthFunction& ell,
                                  std::uint64_t sampling_seed) {
  return OracleHandle(random_backend(std::make_shared<RandomOracle>(k, ell, sampling_seed)));
}

Bits OracleHandle::query(ByteView x) const {
  if (!node_) fail(ErrorCode::kState, "query on an empty oracle handle");
  return node_->query(x);
}

std::uint64_t OracleHandle::out_bits() const { return node_->out_bits(); }
Tag OracleHandle::tag() const { return node_->tag; }
bool OracleHandle::splittable() const {
  return node_ && node_->tag == Tag::kRaw && !node_->transformed;
}

OracleHandle::Split OracleHandle::split() const {
  if (!splittable()) fail(ErrorCode::kState, "only a raw, unresized handle can be split");
  auto make = [&](Tag t) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::kTagged;
    n->root = node_->root;
    n->parent = node_;
    n->tag = t;
    return OracleHandle(std::shared_ptr<const Node>(std::move(n)));
  };
  return Split{make(Tag::kPrime), make(Tag::kDoublePrime), make(Tag::kTriplePrime)};
}

OracleHandle OracleHandle::resized(std::uint64_t bits) const {
  if (bits == 0) fail(ErrorCode::kInvalidArgument, "resize to zero bits");
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::kResized;
  n->root = node_->root;
  n->parent = node_;
  n->tag = node_->tag;
  n->transformed = true;
  n->bits = bits;
  return OracleHandle(std::shared_ptr<const Node>(std::move(n)));
}

OracleHandle OracleHandle::budgeted(std::uint64_t budget) const {
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::kBudget;
  n->root = node_->root;
  n->parent = node_;
  n->tag = node_->tag;
  n->transformed = node_->transformed;
  n->budget = budget;
  return OracleHandle(std::shared_ptr<const Node>(std::move(n)));
}

OracleHandle OracleHandle::logged(Log* sink) const {
  if (sink == nullptr) fail(ErrorCode::kInvalidArgument, "null log sink");
  auto n = std::make_shared<Node>();
  n->kind = Node::Kind::kLogger;
  n->root = node_->root;
  n->parent = node_;
  n->tag = node_->tag;
  n->transformed = node_->transformed;
  n->sink = sink;
  return OracleHandle(std::shared_ptr<const Node>(std::move(n)));
}

std::uint64_t OracleHandle::query_count() const { return node_->count; }
const ViewCounters& OracleHandle::counters() const { return node_->root->counters; }

std::string OracleHandle::describe() const {
  std::string s = node_->root->backend->describe();
  if (node_->tag != Tag::kRaw) s += "/" + std::string(tag_name(node_->tag));
  return s;
}

}  // namespace romlab
