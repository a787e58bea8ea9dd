#pragma once

// Single-row CountMin compression of neighbour sets and the dimension hashing
// used to raise survival probabilities.

#include <cstdint>
#include <span>
#include <vector>

#include "lsf/filter.hpp"
#include "lsf/graph.hpp"

namespace lsf {

/// How dimensions are placed into buckets.
///   hashed:   bucket = PRF(seed, u) mod s.
///   identity: bucket = u; requires u < s, so nothing collides.
enum class Placement { hashed, identity };

/// s = ceil(d·z/tau), at least 1.
std::uint32_t sketch_dimension(std::uint32_t d, double z, double tau);

/// Bucket of dimension u among s buckets.
std::uint32_t sketch_bucket(DimId u, std::uint32_t s, std::uint64_t seed, Placement placement = Placement::hashed);

/// Occupied buckets of γ_v, ascending. A bucket hit by several neighbours
/// holds a single 1.
std::vector<std::uint32_t> countmin_compress(std::span<const DimId> neighbors, std::uint32_t s,
                                             std::uint64_t seed, Placement placement = Placement::hashed);

/// ⟨γ_u, γ_v⟩ for compressed vectors.
inline std::uint32_t sketch_dot(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  return intersection_size(a, b);
}

/// |a ∪ b| for ascending lists.
std::uint32_t union_size(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

/// Expected occupied bins after t balls land uniformly in d/C bins:
/// (d/C)·(1 - (1 - C/d)^t).
double expected_union_after_hash(std::uint64_t t, double d, double C);

/// Same graph with every dimension replaced by its bucket among `s`.
BipartiteGraph hash_dimensions(const BipartiteGraph& g, std::uint32_t s, std::uint64_t seed,
                               Placement placement = Placement::hashed);

/// Buckets used for compression factor C at degree d: max(1, floor(d/C)).
std::uint32_t recall_hash_buckets(std::uint32_t d, double C);

/// Fast-Filter on the compressed graph: dimensions are hashed into
/// recall_hash_buckets(max degree, C) buckets and every node survives by its
/// occupied-bucket set. `hash_seed` keys the placement.
SurvivalOutcome recall_hash_filter(const BipartiteGraph& g, const FilterParams& params, double C,
                                   std::uint32_t iteration, std::uint64_t hash_seed,
                                   Placement placement = Placement::hashed, unsigned threads = 1);

}  // namespace lsf
