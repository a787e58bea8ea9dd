#include "lsf/pair_set.hpp"

#include <algorithm>
#include <tuple>
#include <utility>

namespace lsf {
namespace {

bool earlier(const SimilarPair& a, const SimilarPair& b) {
  return std::tie(a.iteration, a.repetition) < std::tie(b.iteration, b.repetition);
}

}  // namespace

void PairSet::add(std::vector<SimilarPair> batch) {
  if (batch.empty()) return;
  for (auto& p : batch) {
    if (p.u > p.v) std::swap(p.u, p.v);
  }
  std::sort(batch.begin(), batch.end(), [](const SimilarPair& a, const SimilarPair& b) {
    return a.key() != b.key() ? a.key() < b.key() : earlier(a, b);
  });
  batch.erase(std::unique(batch.begin(), batch.end(),
                          [](const SimilarPair& a, const SimilarPair& b) { return a.key() == b.key(); }),
              batch.end());

  std::vector<SimilarPair> merged;
  merged.reserve(pairs_.size() + batch.size());
  auto a = pairs_.begin();
  auto b = batch.begin();
  while (a != pairs_.end() || b != batch.end()) {
    if (b == batch.end() || (a != pairs_.end() && a->key() < b->key())) {
      merged.push_back(*a++);
    } else if (a == pairs_.end() || b->key() < a->key()) {
      merged.push_back(*b++);
    } else {
      merged.push_back(earlier(*b, *a) ? *b : *a);
      ++a;
      ++b;
    }
  }
  pairs_ = std::move(merged);
}

void PairSet::merge(const PairSet& other) {
  add(std::vector<SimilarPair>(other.pairs_.begin(), other.pairs_.end()));
}

const SimilarPair* PairSet::find(NodeId u, NodeId v) const {
  if (u > v) std::swap(u, v);
  const std::uint64_t key = (std::uint64_t{u} << 32) | v;
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), key,
                             [](const SimilarPair& p, std::uint64_t k) { return p.key() < k; });
  return it != pairs_.end() && it->key() == key ? &*it : nullptr;
}

}  // namespace lsf
