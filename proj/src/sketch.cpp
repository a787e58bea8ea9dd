#include "lsf/sketch.hpp"

#include <algorithm>
#include <cmath>

#include "lsf/error.hpp"
#include "lsf/prf.hpp"

namespace lsf {

std::uint32_t sketch_dimension(std::uint32_t d, double z, double tau) {
  if (!(z > 0.0)) throw DomainError("sketch: z must be positive");
  if (!(tau > 0.0 && tau <= 1.0)) throw DomainError("sketch: tau must lie in (0, 1]");
  const double s = std::ceil(static_cast<double>(d) * z / tau - 1e-9);
  if (s > 4294967295.0) throw DomainError("sketch: dimension too large");
  return std::max<std::uint32_t>(1, static_cast<std::uint32_t>(s));
}

std::uint32_t sketch_bucket(DimId u, std::uint32_t s, std::uint64_t seed, Placement placement) {
  if (s == 0) throw DomainError("sketch: s must be at least 1");
  if (placement == Placement::identity) {
    if (u >= s) throw DomainError("sketch: identity placement needs s above every dimension id");
    return u;
  }
  return static_cast<std::uint32_t>(to_range(prf(seed, Domain::sketch, u), s));
}

std::vector<std::uint32_t> countmin_compress(std::span<const DimId> neighbors, std::uint32_t s,
                                             std::uint64_t seed, Placement placement) {
  std::vector<std::uint32_t> out;
  out.reserve(neighbors.size());
  for (DimId u : neighbors) out.push_back(sketch_bucket(u, s, seed, placement));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint32_t union_size(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  return static_cast<std::uint32_t>(a.size() + b.size()) - intersection_size(a, b);
}

double expected_union_after_hash(std::uint64_t t, double d, double C) {
  if (!(C >= 1.0)) throw DomainError("expected_union_after_hash: C must be at least 1");
  const double bins = d / C;
  if (!(bins >= 1.0)) throw DomainError("expected_union_after_hash: need d/C >= 1");
  return bins * -std::expm1(static_cast<double>(t) * std::log1p(-1.0 / bins));
}

BipartiteGraph hash_dimensions(const BipartiteGraph& g, std::uint32_t s, std::uint64_t seed,
                               Placement placement) {
  std::vector<std::uint64_t> offsets{0};
  offsets.reserve(g.num_nodes() + 1);
  std::vector<DimId> dims;
  dims.reserve(g.num_edges());
  std::vector<std::uint32_t> bucket(g.num_dims());
  for (DimId u = 0; u < g.num_dims(); ++u) bucket[u] = sketch_bucket(u, s, seed, placement);
  std::vector<std::uint32_t> row;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    row.clear();
    for (DimId u : g.neighbors(v)) row.push_back(bucket[u]);
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    dims.insert(dims.end(), row.begin(), row.end());
    offsets.push_back(dims.size());
  }
  return BipartiteGraph(s, std::move(offsets), std::move(dims), {},
                        std::vector<std::string>(g.node_names().begin(), g.node_names().end()));
}

std::uint32_t recall_hash_buckets(std::uint32_t d, double C) {
  if (!(C >= 1.0)) throw DomainError("recall hashing: C must be at least 1");
  return std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::floor(d / C + 1e-9)));
}

SurvivalOutcome recall_hash_filter(const BipartiteGraph& g, const FilterParams& params, double C,
                                   std::uint32_t iteration, std::uint64_t hash_seed, Placement placement,
                                   unsigned threads) {
  params.validate();
  if (!(C >= 1.0)) throw DomainError("recall hashing: C must be at least 1");
  const std::uint32_t s = placement == Placement::identity ? std::max<std::uint32_t>(g.num_dims(), 1)
                                                           : recall_hash_buckets(g.max_degree(), C);
  const BipartiteGraph h = hash_dimensions(g, s, hash_seed, placement);
  return fast_filter_all(h, {}, params.alpha, params.k, params.seed, iteration, threads);
}

}  // namespace lsf
