#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lsf/graph.hpp"

namespace lsf {

struct SimilarPair {
  NodeId u;  // u < v
  NodeId v;
  double cosine;
  std::uint32_t iteration;   // provenance of first discovery
  std::uint32_t repetition;

  std::uint64_t key() const noexcept { return (std::uint64_t{u} << 32) | v; }
};

/// Deduplicated similar pairs keyed on (u, v), sorted by key. Adding a pair
/// that is already present keeps the earlier provenance.
class PairSet {
 public:
  PairSet() = default;

  /// Adds an arbitrary batch (unsorted, may contain duplicates).
  void add(std::vector<SimilarPair> batch);
  void add(const SimilarPair& p) { add(std::vector<SimilarPair>{p}); }
  void merge(const PairSet& other);

  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }
  bool contains(NodeId u, NodeId v) const { return find(u, v) != nullptr; }
  /// Order of u, v does not matter.
  const SimilarPair* find(NodeId u, NodeId v) const;

  std::span<const SimilarPair> pairs() const noexcept { return pairs_; }
  auto begin() const noexcept { return pairs_.begin(); }
  auto end() const noexcept { return pairs_.end(); }

 private:
  std::vector<SimilarPair> pairs_;
};

}  // namespace lsf
