#pragma once

// Exhaustive hash-join baseline, the combined strategy (LSF buckets handed to
// hash-joins over processor groups), and strategy dispatch.

#include <cstdint>
#include <span>

#include "lsf/cost.hpp"
#include "lsf/join.hpp"

namespace lsf {

/// True if p = (q+1)² for q = 0, 1 or a prime power q <= 256.
bool projective_layout_available(std::uint32_t p);

/// Concrete layout for `p` processors. Throws DomainError if the request
/// cannot be realized (grid needs a perfect square).
HashJoinLayout resolve_layout(std::uint32_t p, HashJoinLayout requested);

/// Copies of every node: 1 for p = 1, otherwise 2√p-1 (grid) or √p (projective).
std::uint32_t hash_join_copies(std::uint32_t p, HashJoinLayout layout);

/// Every pair of `nodes` (all nodes when empty) is compared exactly once on
/// one of cluster.p processors. Uses config.tau, config.cluster, config.probe
/// and config.verify; filter parameters are ignored.
JoinResult hash_join(const BipartiteGraph& g, const JoinConfig& config, std::span<const NodeId> nodes = {});

/// Repetitions used by the combined strategy: 2^round(c·log2 p).
std::uint64_t combined_repetitions(std::uint32_t p, double c);

/// Fast-Filter with k = combined_repetitions(p, c); repetition i is
/// hash-joined on processors [i·p/k, (i+1)·p/k). With k = 1 nothing is
/// filtered and the whole node set is hash-joined once.
JoinResult combined_join(const BipartiteGraph& g, const JoinConfig& config);

/// Dispatch on config.cluster.strategy.
JoinResult run_join(const BipartiteGraph& g, const JoinConfig& config);

}  // namespace lsf
