#pragma once

// LSF-Join driver: beta independent iterations, each filtering every node
// into k repetitions, shipping every survival set S_i to one processor and
// comparing all pairs inside it.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lsf/cost.hpp"
#include "lsf/filter.hpp"
#include "lsf/graph.hpp"
#include "lsf/pair_set.hpp"
#include "lsf/threshold.hpp"

namespace lsf {

/// Optional restriction of verification to pairs with at least one endpoint
/// in a probe set. Survival sets and costs are unaffected; the pairs emitted
/// are exactly those a full run would emit that touch the probe set.
class ProbeSet {
 public:
  ProbeSet() = default;
  ProbeSet(std::uint32_t num_nodes, std::span<const NodeId> nodes);

  bool active() const noexcept { return !mask_.empty(); }
  bool contains(NodeId v) const { return mask_.empty() || mask_[v] != 0; }

 private:
  std::vector<std::uint8_t> mask_;
};

/// (min, max) of a and b with its cosine if the pair is accepted by `tau`.
std::optional<SimilarPair> verify_pair(const BipartiteGraph& g, NodeId a, NodeId b, const Threshold& tau);

/// All pairs in `members` accepted by `tau`, compared by sorted-list merge.
/// Provenance fields are left zero. `comparisons`, when given, is increased
/// by the number of merges performed.
std::vector<SimilarPair> verify_bucket(const BipartiteGraph& g, std::span<const NodeId> members,
                                       const Threshold& tau, const ProbeSet& probe = {},
                                       std::uint64_t* comparisons = nullptr);

struct JoinConfig {
  Threshold tau = Threshold::parse("0.5");
  std::optional<double> alpha;  // nullopt: solve per degree bucket
  double target_collisions = 2.0;
  std::uint64_t k = 1024;
  std::uint32_t beta = 1;
  std::uint64_t seed = 0;
  ClusterConfig cluster;
  bool single_bucket = false;  // skip degree-bucket orchestration
  unsigned threads = 1;
  std::vector<NodeId> probe;   // empty: verify every pair
  bool verify = true;          // false: account costs only
  std::uint32_t first_iteration = 0;
};

struct IterationStats {
  std::uint32_t iteration = 0;
  std::uint32_t degree_lo = 0;
  std::uint32_t degree_hi = 0;
  std::uint32_t nodes = 0;
  double alpha = 0.0;
  std::uint64_t survivors = 0;    // Σ |S_i|
  std::uint64_t buckets = 0;      // non-empty S_i
  std::uint64_t comparisons = 0;  // merges actually performed
  std::uint64_t new_pairs = 0;    // pairs not seen in earlier iterations
};

struct JoinResult {
  PairSet pairs;
  CostReport cost;
  std::vector<IterationStats> log;
};

/// Alpha used for a group of nodes: the explicit value, or solve_alpha at
/// `degree` with the configured target.
double resolve_alpha(const JoinConfig& config, double degree);

/// Nodes filtered together with one alpha.
struct NodeGroup {
  std::uint32_t lo = 0;  // degree range [lo, hi)
  std::uint32_t hi = 0;
  double alpha = 0.0;
  std::vector<NodeId> nodes;  // ascending
};

/// Degree-bucket groups of `active` (all nodes when empty), or a single group
/// solved at the average degree when single_bucket is set. Zero-degree nodes
/// are dropped.
std::vector<NodeGroup> plan_node_groups(const BipartiteGraph& g, const JoinConfig& config,
                                        std::span<const NodeId> active);

/// Runs the LSF strategy over `active` (all nodes when empty). Unless
/// single_bucket is set, nodes are grouped into doubling degree ranges and
/// each range is filtered with alpha solved at its maximum degree; pairs
/// across ranges are not compared.
JoinResult lsf_join(const BipartiteGraph& g, const JoinConfig& config,
                    std::span<const NodeId> active = {});

struct RoundLog {
  std::uint32_t round = 0;
  std::uint32_t iterations = 0;
  std::uint32_t active_before = 0;
  std::uint64_t found = 0;
  std::uint32_t active_after = 0;
};

struct MatchingResult {
  PairSet pairs;
  CostReport cost;
  std::vector<RoundLog> rounds;
};

/// Iterations for a round with `remaining` rounds to go:
/// max(2, ceil(scale · log^(remaining)(n) / ln 2)), iterated natural log.
std::uint32_t matching_iterations(std::uint64_t n, std::uint32_t remaining, double scale = 1.0);

/// Multi-round join for similarity graphs that are matchings: each round runs
/// lsf_join on the still-unmatched nodes, then drops both endpoints of every
/// found pair.
MatchingResult matching_join(const BipartiteGraph& g, const JoinConfig& config, std::uint32_t rounds,
                             double schedule_scale = 1.0);

}  // namespace lsf
