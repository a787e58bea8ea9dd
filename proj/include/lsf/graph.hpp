#pragma once

// Bipartite graph G = (U, V, E): U are the dimensions (left), V the nodes
// (right). Each node is identified with its sorted neighbour set Γ(v) ⊆ U.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lsf/threshold.hpp"

namespace lsf {

using NodeId = std::uint32_t;
using DimId = std::uint32_t;

class BipartiteGraph {
 public:
  BipartiteGraph() : offsets_{0} {}

  /// CSR form. Every adjacency list must be strictly ascending with entries
  /// in [0, num_dims). Name vectors are either empty (ids print as decimal
  /// numbers) or sized num_dims / num_nodes.
  BipartiteGraph(std::uint32_t num_dims, std::vector<std::uint64_t> offsets,
                 std::vector<DimId> dims, std::vector<std::string> dim_names = {},
                 std::vector<std::string> node_names = {});

  /// Convenience for tests and generators; lists are sorted and deduplicated.
  static BipartiteGraph from_lists(std::uint32_t num_dims,
                                   std::vector<std::vector<DimId>> lists);

  std::uint32_t num_dims() const noexcept { return num_dims_; }
  std::uint32_t num_nodes() const noexcept {
    return static_cast<std::uint32_t>(offsets_.size() - 1);
  }
  std::uint64_t num_edges() const noexcept { return dims_.size(); }

  std::span<const DimId> neighbors(NodeId v) const {
    return {dims_.data() + offsets_[v], dims_.data() + offsets_[v + 1]};
  }
  std::uint32_t degree(NodeId v) const {
    return static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
  }
  std::uint32_t max_degree() const;
  double average_degree() const;

  std::string node_name(NodeId v) const;
  std::string dim_name(DimId u) const;
  bool has_names() const noexcept { return !node_names_.empty(); }

  /// Linear scan over names; build a map for bulk lookups.
  std::optional<NodeId> find_node(std::string_view name) const;

  std::span<const std::uint64_t> offsets() const noexcept { return offsets_; }
  std::span<const DimId> dims() const noexcept { return dims_; }
  std::span<const std::string> node_names() const noexcept { return node_names_; }
  std::span<const std::string> dim_names() const noexcept { return dim_names_; }

  /// Left degree of every dimension.
  std::vector<std::uint64_t> dim_degrees() const;

 private:
  std::uint32_t num_dims_ = 0;
  std::vector<std::uint64_t> offsets_;
  std::vector<DimId> dims_;
  std::vector<std::string> dim_names_;
  std::vector<std::string> node_names_;
};

/// Reads "left_id<TAB>right_id" lines (any whitespace separates the two
/// fields). Blank lines and lines starting with '#' are skipped. Dense ids
/// are assigned in order of first appearance; duplicate edges collapse.
BipartiteGraph load_edge_list(std::istream& in);
BipartiteGraph load_edge_list_file(const std::filesystem::path& path);

/// One "left<TAB>right" line per edge, nodes in id order.
void write_edge_list(const BipartiteGraph& g, std::ostream& out);
void write_edge_list_file(const BipartiteGraph& g, const std::filesystem::path& path);

/// Versioned binary cache ("LSFG" magic, format version 1, little endian).
void save_binary(const BipartiteGraph& g, const std::filesystem::path& path);
BipartiteGraph load_binary(const std::filesystem::path& path);

/// |A ∩ B| for strictly ascending lists, by merging.
std::uint32_t intersection_size(std::span<const DimId> a, std::span<const DimId> b);

/// Cosine of the characteristic vectors. Throws DomainError on a zero-degree node.
double cosine(const BipartiteGraph& g, NodeId u, NodeId v);

struct DegreeBucket {
  std::uint32_t lo;  // inclusive
  std::uint32_t hi;  // exclusive
  std::vector<NodeId> nodes;
};

/// Doubling ranges [2^j, 2^(j+1)) over the occurring degrees, empty ranges
/// omitted. Zero-degree nodes have no defined similarity and are left out.
std::vector<DegreeBucket> degree_buckets(const BipartiteGraph& g);
std::vector<DegreeBucket> degree_buckets(const BipartiteGraph& g, std::span<const NodeId> nodes);

struct SkewedParams {
  std::uint32_t n = 0;
  std::uint32_t d = 0;     // even
  double gamma = 0.0;      // hot set size |H| = gamma * d
  double cold_degree = 10; // target average left degree of cold dimensions
  std::uint64_t seed = 0;
};

/// Every node picks d/2 distinct dimensions from the hot set H = [0, |H|) and
/// d/2 distinct ones from the cold pool [|H|, M). The cold pool has
/// max(d/2, ceil(n·(d/2)/cold_degree)) dimensions.
BipartiteGraph gen_skewed(const SkewedParams& params);

struct PlantedMatching {
  BipartiteGraph graph;
  std::vector<std::pair<NodeId, NodeId>> pairs;  // (u, v) with u < v
};

/// n/2 disjoint pairs; each pair shares exactly ceil(tau·d) dimensions and all
/// remaining dimensions come from pair-private pools, so cross-pair cosine is
/// 0. Node ids are shuffled by the seed.
PlantedMatching gen_matching(std::uint32_t n, std::uint32_t d, const Threshold& tau,
                             std::uint64_t seed);

/// d distinct dimensions per node, uniformly from [0, m).
BipartiteGraph gen_uniform(std::uint32_t n, std::uint32_t d, std::uint32_t m, std::uint64_t seed);

}  // namespace lsf
