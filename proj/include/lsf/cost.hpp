#pragma once

// Cost model of a one-round shared-nothing cluster.
//
// Communication and load are counted in words: a node shipped to a processor
// costs 1 word for its id plus 1 word per adjacency entry. Work is counted as
// pair comparisons times the largest degree among the compared lists.

#include <cstdint>
#include <span>
#include <vector>

#include "lsf/filter.hpp"
#include "lsf/graph.hpp"

namespace lsf {

enum class Strategy { lsf, hash_join, combined };

/// Placement used by the exhaustive hash-join baseline.
///   grid:       √p×√p cells; a node goes to one random row and one random
///               column, 2√p-1 copies.
///   projective: nodes pick a random line of the projective plane of order
///               q = √p-1, whose q²+q+1 points are processors; √p copies.
///               Needs q to be a prime power.
///   automatic:  projective when available, grid otherwise.
enum class HashJoinLayout { automatic, grid, projective };

struct ClusterConfig {
  std::uint32_t p = 1;
  std::uint64_t assignment_seed = 0;
  Strategy strategy = Strategy::lsf;
  double c = 0.5;  // combined strategy: k = p^c repetitions
  HashJoinLayout layout = HashJoinLayout::automatic;

  void validate() const;
};

class CostReport {
 public:
  explicit CostReport(std::uint32_t processors = 1);

  std::uint32_t processors() const noexcept { return static_cast<std::uint32_t>(load_.size()); }

  /// One survival set handled by `proc`: every member is received with its
  /// adjacency list, and all pairs are compared at the bucket's max degree.
  void add_bucket(std::uint32_t proc, std::span<const NodeId> members, const BipartiteGraph& g);
  /// One node copy received by `proc`.
  void add_copy(std::uint32_t proc, NodeId v, const BipartiteGraph& g);
  void add_work(std::uint32_t proc, std::uint64_t units) { work_[proc] += units; }
  void merge(const CostReport& other);

  std::span<const std::uint64_t> load() const noexcept { return load_; }
  std::span<const std::uint64_t> work() const noexcept { return work_; }

  std::uint64_t total_communication() const;
  std::uint64_t total_work() const;
  std::uint64_t max_load() const;
  double mean_load() const;
  /// Wall-model work: the busiest processor.
  std::uint64_t max_work() const;
  double mean_work() const;

  std::uint64_t buckets = 0;    // non-empty survival sets processed
  std::uint64_t survivors = 0;  // node copies shipped (Σ |S_i| for LSF)

 private:
  std::vector<std::uint64_t> load_;
  std::vector<std::uint64_t> work_;
};

/// Random hash H : [k] → [p], one independent function per iteration.
class BucketAssigner {
 public:
  BucketAssigner(std::uint64_t seed, std::uint32_t p);
  std::uint32_t operator()(std::uint32_t iteration, std::uint64_t bucket) const;
  std::uint32_t processors() const noexcept { return p_; }

 private:
  std::uint64_t seed_;
  std::uint32_t p_;
};

/// Materialized assignment of iteration 0.
std::vector<std::uint32_t> partition_buckets(std::uint64_t k, std::uint32_t p, std::uint64_t seed);

/// Exact tallies for every non-empty bucket of `outcome`; `assignment` is
/// indexed by repetition id.
CostReport account_costs(const SurvivalOutcome& outcome, std::span<const std::uint32_t> assignment,
                         std::uint32_t p, const BipartiteGraph& g);

}  // namespace lsf
