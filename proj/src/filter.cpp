#include "lsf/filter.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "lsf/error.hpp"
#include "lsf/parallel.hpp"
#include "lsf/prf.hpp"

namespace lsf {

void FilterParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in (0, 1); alpha >= 1 means no filtering is possible");
  }
  if (k == 0 || !std::has_single_bit(k) || k > (std::uint64_t{1} << 32)) {
    throw DomainError("k must be a power of two no larger than 2^32");
  }
  if (beta == 0) throw DomainError("beta must be at least 1");
}

unsigned FilterParams::index_bits() const {
  return static_cast<unsigned>(std::countr_zero(k));
}

double solve_alpha(double tau, double d_bar, std::uint64_t k, double target_collisions) {
  if (!(tau > 0.0 && tau < 1.0)) throw DomainError("solve_alpha: tau must lie in (0, 1)");
  if (!(d_bar > 0.0)) throw DomainError("solve_alpha: average degree must be positive");
  if (k < 2) throw DomainError("solve_alpha: k must be at least 2");
  if (!(target_collisions > 0.0)) throw DomainError("solve_alpha: target must be positive");
  return std::pow(target_collisions / static_cast<double>(k), 1.0 / ((2.0 - tau) * d_bar));
}

RowSource::RowSource(std::uint64_t master_seed, std::uint32_t iteration, unsigned index_bits)
    : key_(prf(master_seed, Domain::iteration, iteration)), bits_(index_bits) {
  if (index_bits > gf2::kMaxCols) throw DomainError("RowSource: at most 32 index bits");
}

DerivedRow RowSource::row(DimId u, std::uint32_t slot) const {
  const std::uint64_t h = prf(key_, Domain::row, u, slot);
  return {static_cast<gf2::Row>(h) & gf2::column_mask(bits_), ((h >> 63) & 1U) != 0};
}

std::uint64_t RowSource::priority(DimId u, std::uint32_t slot) const {
  return prf(key_, Domain::priority, u, slot);
}

DerivedRow derive_row(std::uint64_t master_seed, std::uint32_t iteration, DimId u,
                      std::uint32_t slot, unsigned index_bits) {
  return RowSource(master_seed, iteration, index_bits).row(u, slot);
}

std::uint32_t effective_rows(std::uint32_t d, double alpha, std::uint64_t key, NodeId v) {
  const double target = d * -std::log2(alpha);
  const double whole = std::round(target);
  if (std::abs(target - whole) < 1e-9) return static_cast<std::uint32_t>(whole);
  const double lo = std::floor(target);
  const double frac = target - lo;
  const bool up = to_unit(prf(key, Domain::dither, v)) < frac;
  return static_cast<std::uint32_t>(lo) + (up ? 1U : 0U);
}

gf2::AffineSystem build_system(std::span<const DimId> neighbors, NodeId v, double alpha,
                               const RowSource& rows) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in (0, 1); alpha >= 1 means no filtering is possible");
  }
  if (neighbors.empty()) throw DomainError("build_system: node has no neighbours");
  const auto d = static_cast<std::uint32_t>(neighbors.size());
  const std::uint32_t d_star = effective_rows(d, alpha, rows.key(), v);
  const std::uint32_t full = d_star / d;
  const std::uint32_t extra = d_star % d;

  gf2::AffineSystem sys(rows.index_bits());
  sys.a.reserve(d_star);
  sys.b.reserve(d_star);
  for (std::uint32_t slot = 0; slot < full; ++slot) {
    for (DimId w : neighbors) {
      const auto r = rows.row(w, slot);
      sys.push(r.row, r.rhs);
    }
  }
  if (extra > 0) {
    std::vector<std::pair<std::uint64_t, DimId>> ranked;
    ranked.reserve(d);
    for (DimId w : neighbors) ranked.emplace_back(rows.priority(w, full), w);
    std::nth_element(ranked.begin(), ranked.begin() + extra, ranked.end());
    ranked.resize(extra);
    std::sort(ranked.begin(), ranked.end(),
              [](const auto& x, const auto& y) { return x.second < y.second; });
    for (const auto& [prio, w] : ranked) {
      const auto r = rows.row(w, full);
      sys.push(r.row, r.rhs);
    }
  }
  return sys;
}

gf2::AffineSystem build_system(const BipartiteGraph& g, NodeId v, const FilterParams& params,
                               std::uint32_t iteration) {
  params.validate();
  return build_system(g.neighbors(v), v, params.alpha,
                      RowSource(params.seed, iteration, params.index_bits()));
}

std::vector<std::uint32_t> fast_filter(const BipartiteGraph& g, NodeId v, const FilterParams& params,
                                       std::uint32_t iteration) {
  return gf2::enumerate_solutions(gf2::eliminate(build_system(g, v, params, iteration)));
}

// ---------------------------------------------------------------------------

SurvivalOutcome::SurvivalOutcome(std::uint64_t k, std::vector<NodeId> nodes,
                                 std::vector<std::uint64_t> node_offsets,
                                 std::vector<std::uint32_t> node_indices)
    : k_(k),
      nodes_(std::move(nodes)),
      node_offsets_(std::move(node_offsets)),
      node_indices_(std::move(node_indices)) {
  if (node_offsets_.size() != nodes_.size() + 1 || node_offsets_.back() != node_indices_.size()) {
    throw DomainError("SurvivalOutcome: offsets do not match index lists");
  }
  // Invert into per-repetition buckets. Nodes are visited in input order, so
  // members come out ascending whenever `nodes` is ascending.
  std::vector<std::pair<std::uint32_t, NodeId>> order;
  if (k_ <= (std::uint64_t{1} << 24)) {
    std::vector<std::uint64_t> count(k_ + 1, 0);
    for (auto i : node_indices_) ++count[i + 1];
    std::uint64_t nonempty = 0;
    for (std::uint64_t i = 1; i <= k_; ++i) nonempty += count[i] != 0;
    bucket_ids_.reserve(nonempty);
    bucket_offsets_.reserve(nonempty + 1);
    for (std::uint64_t i = 0; i < k_; ++i) {
      if (count[i + 1] != 0) {
        bucket_ids_.push_back(static_cast<std::uint32_t>(i));
        bucket_offsets_.push_back(bucket_offsets_.back() + count[i + 1]);
      }
      count[i + 1] += count[i];
    }
    members_.resize(node_indices_.size());
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
      for (auto i : indices_of(j)) members_[count[i]++] = nodes_[j];
    }
  } else {
    order.reserve(node_indices_.size());
    for (std::size_t j = 0; j < nodes_.size(); ++j) {
      for (auto i : indices_of(j)) order.emplace_back(i, nodes_[j]);
    }
    std::sort(order.begin(), order.end());
    members_.reserve(order.size());
    for (std::size_t t = 0; t < order.size(); ++t) {
      if (t == 0 || order[t].first != order[t - 1].first) {
        if (t != 0) bucket_offsets_.push_back(members_.size());
        bucket_ids_.push_back(order[t].first);
      }
      members_.push_back(order[t].second);
    }
    if (!order.empty()) bucket_offsets_.push_back(members_.size());
  }
}

std::span<const NodeId> SurvivalOutcome::survivors(std::uint32_t i) const {
  auto it = std::lower_bound(bucket_ids_.begin(), bucket_ids_.end(), i);
  if (it == bucket_ids_.end() || *it != i) return {};
  return bucket(static_cast<std::size_t>(it - bucket_ids_.begin()));
}

SurvivalOutcome fast_filter_all(const BipartiteGraph& g, std::span<const NodeId> nodes, double alpha,
                                std::uint64_t k, std::uint64_t seed, std::uint32_t iteration,
                                unsigned threads) {
  std::vector<NodeId> list(nodes.begin(), nodes.end());
  if (nodes.empty()) {
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      if (g.degree(v) > 0) list.push_back(v);
    }
  }
  if (k == 0 || !std::has_single_bit(k) || k > (std::uint64_t{1} << 32)) {
    throw DomainError("k must be a power of two no larger than 2^32");
  }
  const RowSource rows(seed, iteration, static_cast<unsigned>(std::countr_zero(k)));

  // Chunks are filtered independently and concatenated in node order.
  constexpr std::size_t kChunk = 1024;
  const std::size_t nchunks = (list.size() + kChunk - 1) / kChunk;
  std::vector<std::vector<std::uint32_t>> chunk_indices(nchunks);
  std::vector<std::vector<std::uint64_t>> chunk_counts(nchunks);
  parallel_for(nchunks, threads, 1, [&](std::size_t cb, std::size_t ce, unsigned) {
    for (std::size_t c = cb; c < ce; ++c) {
      auto& out = chunk_indices[c];
      auto& counts = chunk_counts[c];
      const std::size_t end = std::min(list.size(), (c + 1) * kChunk);
      for (std::size_t j = c * kChunk; j < end; ++j) {
        const NodeId v = list[j];
        const std::size_t before = out.size();
        gf2::enumerate_solutions(gf2::eliminate(build_system(g.neighbors(v), v, alpha, rows)), out);
        counts.push_back(out.size() - before);
      }
    }
  });

  std::uint64_t total = 0;
  for (const auto& c : chunk_indices) total += c.size();
  std::vector<std::uint64_t> offsets;
  offsets.reserve(list.size() + 1);
  offsets.push_back(0);
  std::vector<std::uint32_t> indices;
  indices.reserve(total);
  for (std::size_t c = 0; c < nchunks; ++c) {
    for (auto n : chunk_counts[c]) offsets.push_back(offsets.back() + n);
    indices.insert(indices.end(), chunk_indices[c].begin(), chunk_indices[c].end());
    std::vector<std::uint32_t>().swap(chunk_indices[c]);
  }
  return SurvivalOutcome(k, std::move(list), std::move(offsets), std::move(indices));
}

SurvivalOutcome naive_filter(const BipartiteGraph& g, const FilterParams& params, std::uint32_t iteration) {
  if (!(params.alpha >= 0.0 && params.alpha <= 1.0)) throw DomainError("naive_filter: alpha must lie in [0, 1]");
  if (params.k == 0 || params.k > (std::uint64_t{1} << 32)) throw DomainError("naive_filter: bad k");
  const std::uint64_t key = prf(params.seed, Domain::iteration, iteration);
  const std::uint32_t n = g.num_nodes();
  std::vector<std::vector<std::uint32_t>> per_node(n);
  std::vector<std::uint8_t> in_sample(g.num_dims());
  for (std::uint64_t i = 0; i < params.k; ++i) {
    for (DimId u = 0; u < g.num_dims(); ++u) {
      in_sample[u] = to_unit(prf(key, Domain::naive, i, u)) < params.alpha;
    }
    for (NodeId v = 0; v < n; ++v) {
      const auto nb = g.neighbors(v);
      if (std::all_of(nb.begin(), nb.end(), [&](DimId u) { return in_sample[u] != 0; })) {
        per_node[v].push_back(static_cast<std::uint32_t>(i));
      }
    }
  }
  std::vector<NodeId> nodes(n);
  std::iota(nodes.begin(), nodes.end(), NodeId{0});
  std::vector<std::uint64_t> offsets{0};
  std::vector<std::uint32_t> indices;
  for (const auto& l : per_node) {
    indices.insert(indices.end(), l.begin(), l.end());
    offsets.push_back(indices.size());
  }
  return SurvivalOutcome(params.k, std::move(nodes), std::move(offsets), std::move(indices));
}

}  // namespace lsf
