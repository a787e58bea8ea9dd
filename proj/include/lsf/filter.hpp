#pragma once

// Locality sensitive filtering: per-node survival sets I_v = {i : A^v i + b^v = 0}.
//
// Every neighbour w of v contributes rows that depend only on (seed,
// iteration, w, slot), so two nodes sharing w see identical rows and the pair
// survives a repetition with probability alpha^|Γ(u) ∪ Γ(v)|.

#include <cstdint>
#include <span>
#include <vector>

#include "lsf/gf2.hpp"
#include "lsf/graph.hpp"
#include "lsf/threshold.hpp"

namespace lsf {

struct FilterParams {
  double alpha = 0.5;       // survival probability per dimension, (0, 1)
  std::uint64_t k = 1024;   // repetitions, a power of two <= 2^32
  Threshold tau = Threshold::parse("0.5");
  std::uint32_t beta = 1;   // independent iterations
  std::uint64_t seed = 0;   // master seed

  /// Throws DomainError on any violated invariant.
  void validate() const;
  /// log2(k).
  unsigned index_bits() const;
};

/// alpha = (target/k)^(1/((2 - tau)·d_bar)): a pair at similarity exactly tau
/// with average degree d_bar co-survives `target_collisions` repetitions in
/// expectation.
double solve_alpha(double tau, double d_bar, std::uint64_t k, double target_collisions = 2.0);

struct DerivedRow {
  gf2::Row row;
  bool rhs;

  bool operator==(const DerivedRow&) const = default;
};

/// Shared randomness of one iteration. All processors holding the same
/// (master seed, iteration) derive the same rows and priorities.
class RowSource {
 public:
  RowSource(std::uint64_t master_seed, std::uint32_t iteration, unsigned index_bits);

  DerivedRow row(DimId u, std::uint32_t slot) const;
  /// Global subsampling priority of (u, slot); smaller is kept first.
  std::uint64_t priority(DimId u, std::uint32_t slot) const;
  std::uint64_t key() const noexcept { return key_; }
  unsigned index_bits() const noexcept { return bits_; }

 private:
  std::uint64_t key_;
  unsigned bits_;
};

DerivedRow derive_row(std::uint64_t master_seed, std::uint32_t iteration, DimId u,
                      std::uint32_t slot, unsigned index_bits);

/// Row budget d* for a node of degree d: d·log2(1/alpha) rounded to an
/// adjacent integer by a draw keyed on (key, v), so that E[d*] equals the
/// target exactly. Targets within 1e-9 of an integer are taken as that integer.
std::uint32_t effective_rows(std::uint32_t d, double alpha, std::uint64_t key, NodeId v);

/// A^v and b^v. A neighbour contributes floor(d*/d) full slots; the remaining
/// d* mod d rows come from the next slot of the neighbours with the smallest
/// global priority.
gf2::AffineSystem build_system(const BipartiteGraph& g, NodeId v, const FilterParams& params,
                               std::uint32_t iteration);
gf2::AffineSystem build_system(std::span<const DimId> neighbors, NodeId v, double alpha,
                               const RowSource& rows);

/// I_v, ascending.
std::vector<std::uint32_t> fast_filter(const BipartiteGraph& g, NodeId v, const FilterParams& params,
                                       std::uint32_t iteration);

/// Survival sets in both orientations: per node (I_v) and per repetition
/// (S_i). Only non-empty repetitions are listed.
class SurvivalOutcome {
 public:
  SurvivalOutcome() = default;

  /// `nodes[j]` survives the repetitions node_indices[node_offsets[j] ..
  /// node_offsets[j+1]), each list ascending.
  SurvivalOutcome(std::uint64_t k, std::vector<NodeId> nodes, std::vector<std::uint64_t> node_offsets,
                  std::vector<std::uint32_t> node_indices);

  std::uint64_t k() const noexcept { return k_; }

  std::size_t node_count() const noexcept { return nodes_.size(); }
  NodeId node(std::size_t j) const { return nodes_[j]; }
  std::span<const std::uint32_t> indices_of(std::size_t j) const {
    return {node_indices_.data() + node_offsets_[j], node_indices_.data() + node_offsets_[j + 1]};
  }

  std::size_t bucket_count() const noexcept { return bucket_ids_.size(); }
  std::uint32_t bucket_id(std::size_t b) const { return bucket_ids_[b]; }
  /// Members of the b-th non-empty bucket, ascending node ids.
  std::span<const NodeId> bucket(std::size_t b) const {
    return {members_.data() + bucket_offsets_[b], members_.data() + bucket_offsets_[b + 1]};
  }
  /// Members of repetition i (empty if none survive).
  std::span<const NodeId> survivors(std::uint32_t i) const;

  /// Σ_i |S_i|.
  std::uint64_t total_survivors() const noexcept { return members_.size(); }

 private:
  std::uint64_t k_ = 0;
  std::vector<NodeId> nodes_;
  std::vector<std::uint64_t> node_offsets_{0};
  std::vector<std::uint32_t> node_indices_;
  std::vector<std::uint32_t> bucket_ids_;
  std::vector<std::uint64_t> bucket_offsets_{0};
  std::vector<NodeId> members_;
};

/// Fast-Filter over `nodes` (all nodes of positive degree when empty) with an
/// explicit alpha.
SurvivalOutcome fast_filter_all(const BipartiteGraph& g, std::span<const NodeId> nodes, double alpha,
                                std::uint64_t k, std::uint64_t seed, std::uint32_t iteration,
                                unsigned threads = 1);

/// Reference scheme: each repetition samples U_i with per-dimension
/// probability alpha and keeps {v : Γ(v) ⊆ U_i}. O(k·M) time.
SurvivalOutcome naive_filter(const BipartiteGraph& g, const FilterParams& params, std::uint32_t iteration);

}  // namespace lsf
