#include "lsf/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "lsf/error.hpp"
#include "lsf/projective_plane.hpp"
#include "lsf/prf.hpp"

namespace lsf {

namespace {

std::optional<std::uint32_t> exact_sqrt(std::uint32_t p) {
  auto s = static_cast<std::uint32_t>(std::llround(std::sqrt(static_cast<double>(p))));
  while (static_cast<std::uint64_t>(s) * s > p) --s;
  while (static_cast<std::uint64_t>(s + 1) * (s + 1) <= p) ++s;
  if (static_cast<std::uint64_t>(s) * s != p) return std::nullopt;
  return s;
}

const ProjectivePlane& plane_of_order(std::uint32_t q) {
  // Planes are small; cache the few orders a run touches.
  thread_local std::vector<std::optional<ProjectivePlane>> cache;
  if (cache.size() <= q) cache.resize(q + 1);
  if (!cache[q]) {
    auto plane = ProjectivePlane::of_order(q);
    if (!plane) throw DomainError("no projective plane of order " + std::to_string(q));
    cache[q] = std::move(plane);
  }
  return *cache[q];
}

// One exhaustive hash-join of `nodes` on processors [offset, offset + p).
struct HashJoinTask {
  const BipartiteGraph& g;
  const Threshold& tau;
  const ProbeSet& probe;
  bool verify;
  std::uint64_t key;
  std::uint32_t offset;
  std::uint32_t iteration;
  std::uint32_t repetition;
  CostReport& cost;
  std::vector<SimilarPair>& out;

  void emit(NodeId a, NodeId b) {
    if (!verify) return;
    if (probe.active() && !probe.contains(a) && !probe.contains(b)) return;
    if (auto pair = verify_pair(g, a, b, tau)) {
      pair->iteration = iteration;
      pair->repetition = repetition;
      out.push_back(*pair);
    }
  }

  void single(std::span<const NodeId> nodes) {
    std::uint32_t max_deg = 0;
    for (NodeId v : nodes) {
      cost.add_copy(offset, v, g);
      max_deg = std::max(max_deg, g.degree(v));
    }
    const std::uint64_t n = nodes.size();
    cost.add_work(offset, n * (n - (n > 0 ? 1 : 0)) / 2 * max_deg);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (std::size_t j = i + 1; j < nodes.size(); ++j) emit(nodes[i], nodes[j]);
    }
  }

  // Cell (r(x), c(y)) handles x < y; it holds row r(x) and column c(y).
  void grid(std::span<const NodeId> nodes, std::uint32_t s) {
    const std::size_t n = nodes.size();
    std::vector<std::uint32_t> row(n);
    std::vector<std::uint32_t> col(n);
    std::vector<std::uint32_t> max_deg(static_cast<std::size_t>(s) * s, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const NodeId v = nodes[i];
      row[i] = static_cast<std::uint32_t>(to_range(prf(key, Domain::hash_join, 0, v), s));
      col[i] = static_cast<std::uint32_t>(to_range(prf(key, Domain::hash_join, 1, v), s));
      const auto d = g.degree(v);
      for (std::uint32_t j = 0; j < s; ++j) {
        const std::uint32_t cell = row[i] * s + j;
        cost.add_copy(offset + cell, v, g);
        max_deg[cell] = std::max(max_deg[cell], d);
      }
      for (std::uint32_t r = 0; r < s; ++r) {
        if (r == row[i]) continue;
        const std::uint32_t cell = r * s + col[i];
        cost.add_copy(offset + cell, v, g);
        max_deg[cell] = std::max(max_deg[cell], d);
      }
    }
    // nodes ascending: earlier entries are the smaller endpoint.
    std::vector<std::uint64_t> pairs(static_cast<std::size_t>(s) * s, 0);
    std::vector<std::uint64_t> rows_seen(s, 0);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::uint32_t r = 0; r < s; ++r) pairs[r * s + col[j]] += rows_seen[r];
      ++rows_seen[row[j]];
    }
    for (std::size_t cell = 0; cell < pairs.size(); ++cell) {
      cost.add_work(offset + static_cast<std::uint32_t>(cell), pairs[cell] * max_deg[cell]);
    }
    if (!verify) return;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) emit(nodes[i], nodes[j]);
    }
  }

  // Each node takes a random line; a pair is handled where its lines meet,
  // or at a pair-hashed point of the shared line.
  void projective(std::span<const NodeId> nodes, const ProjectivePlane& plane) {
    const std::uint32_t lines = plane.size();
    const std::uint32_t per_line = plane.order() + 1;
    std::vector<std::vector<NodeId>> on_line(lines);
    std::vector<std::uint32_t> max_deg(lines, 0);
    for (NodeId v : nodes) {
      const auto l = static_cast<std::uint32_t>(to_range(prf(key, Domain::hash_join, 2, v), lines));
      on_line[l].push_back(v);
      for (std::uint32_t pt : plane.points_on(l)) {
        cost.add_copy(offset + pt, v, g);
        max_deg[pt] = std::max(max_deg[pt], g.degree(v));
      }
    }
    std::vector<std::uint32_t> used;
    for (std::uint32_t l = 0; l < lines; ++l) {
      if (!on_line[l].empty()) used.push_back(l);
    }
    std::vector<std::uint64_t> pairs(lines, 0);
    for (std::size_t a = 0; a < used.size(); ++a) {
      const auto& xs = on_line[used[a]];
      const auto pts = plane.points_on(used[a]);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
          const std::uint64_t pk = (std::uint64_t{xs[i]} << 32) | xs[j];
          ++pairs[pts[to_range(prf(key, Domain::hash_join, 3, pk), per_line)]];
          emit(xs[i], xs[j]);
        }
      }
      for (std::size_t b = a + 1; b < used.size(); ++b) {
        const auto& ys = on_line[used[b]];
        pairs[plane.meet(used[a], used[b])] += static_cast<std::uint64_t>(xs.size()) * ys.size();
        if (!verify) continue;
        for (NodeId x : xs) {
          for (NodeId y : ys) emit(x, y);
        }
      }
    }
    for (std::uint32_t pt = 0; pt < lines; ++pt) cost.add_work(offset + pt, pairs[pt] * max_deg[pt]);
  }

  void run(std::span<const NodeId> nodes, std::uint32_t p, HashJoinLayout layout) {
    if (p == 1) {
      single(nodes);
    } else if (layout == HashJoinLayout::grid) {
      grid(nodes, *exact_sqrt(p));
    } else {
      projective(nodes, plane_of_order(*exact_sqrt(p) - 1));
    }
  }
};

std::vector<NodeId> positive_degree(const BipartiteGraph& g, std::span<const NodeId> nodes) {
  std::vector<NodeId> out;
  if (nodes.empty()) {
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      if (g.degree(v) > 0) out.push_back(v);
    }
  } else {
    for (NodeId v : nodes) {
      if (v >= g.num_nodes()) throw DomainError("hash_join: node out of range");
      if (g.degree(v) > 0) out.push_back(v);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return out;
}

}  // namespace

bool projective_layout_available(std::uint32_t p) {
  const auto s = exact_sqrt(p);
  if (!s) return false;
  if (*s <= 2) return true;
  return GaloisField::of_order(*s - 1).has_value();
}

HashJoinLayout resolve_layout(std::uint32_t p, HashJoinLayout requested) {
  if (p == 0) throw DomainError("hash join: p must be at least 1");
  switch (requested) {
    case HashJoinLayout::grid:
      if (!exact_sqrt(p)) throw DomainError("hash join: grid layout needs a perfect square p");
      return HashJoinLayout::grid;
    case HashJoinLayout::projective:
      if (!projective_layout_available(p)) {
        throw DomainError("hash join: projective layout needs p = (q+1)^2 with q a prime power");
      }
      return HashJoinLayout::projective;
    case HashJoinLayout::automatic:
      if (projective_layout_available(p)) return HashJoinLayout::projective;
      if (exact_sqrt(p)) return HashJoinLayout::grid;
      throw DomainError("hash join: p must be a perfect square");
  }
  throw DomainError("hash join: unknown layout");
}

std::uint32_t hash_join_copies(std::uint32_t p, HashJoinLayout layout) {
  const HashJoinLayout l = resolve_layout(p, layout);
  if (p == 1) return 1;
  const std::uint32_t s = *exact_sqrt(p);
  return l == HashJoinLayout::grid ? 2 * s - 1 : s;
}

JoinResult hash_join(const BipartiteGraph& g, const JoinConfig& config, std::span<const NodeId> nodes) {
  const std::uint32_t p = config.cluster.p;
  const HashJoinLayout layout = resolve_layout(p, config.cluster.layout);
  JoinResult result{PairSet{}, CostReport(p), {}};
  const auto members = positive_degree(g, nodes);
  const ProbeSet probe = config.probe.empty() ? ProbeSet{} : ProbeSet(g.num_nodes(), config.probe);
  std::vector<SimilarPair> found;
  HashJoinTask task{g,     config.tau, probe, config.verify, subseed(config.cluster.assignment_seed, 1),
                    0,     0,          0,     result.cost,   found};
  task.run(members, p, layout);
  result.cost.buckets = 1;
  result.pairs.add(std::move(found));
  IterationStats stats;
  stats.nodes = static_cast<std::uint32_t>(members.size());
  stats.survivors = members.size();
  stats.buckets = 1;
  stats.new_pairs = result.pairs.size();
  result.log.push_back(stats);
  return result;
}

std::uint64_t combined_repetitions(std::uint32_t p, double c) {
  if (p == 0) throw DomainError("combined: p must be at least 1");
  if (!(c > 0.0 && c < 1.0)) throw DomainError("combined: c must lie in (0, 1)");
  const double e = std::round(c * std::log2(static_cast<double>(p)));
  return std::uint64_t{1} << static_cast<unsigned>(std::max(e, 0.0));
}

JoinResult combined_join(const BipartiteGraph& g, const JoinConfig& config) {
  config.cluster.validate();
  const std::uint32_t p = config.cluster.p;
  const std::uint64_t k = combined_repetitions(p, config.cluster.c);
  if (k > p || p % k != 0) throw DomainError("combined: p^c must divide p");
  const auto group = static_cast<std::uint32_t>(p / k);
  const HashJoinLayout layout = resolve_layout(group, config.cluster.layout);

  if (k == 1) {
    JoinConfig flat = config;
    flat.cluster.strategy = Strategy::hash_join;
    return hash_join(g, flat);
  }
  if (config.beta == 0) throw DomainError("beta must be at least 1");

  JoinConfig cfg = config;
  cfg.k = k;
  const auto groups = plan_node_groups(g, cfg, {});
  const ProbeSet probe = config.probe.empty() ? ProbeSet{} : ProbeSet(g.num_nodes(), config.probe);
  JoinResult result{PairSet{}, CostReport(p), {}};

  for (std::uint32_t r = 0; r < config.beta; ++r) {
    const std::uint32_t it = config.first_iteration + r;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      const NodeGroup& grp = groups[gi];
      if (!(grp.alpha > 0.0 && grp.alpha < 1.0)) {
        throw DomainError("alpha must lie in (0, 1); alpha >= 1 means no filtering is possible");
      }
      const SurvivalOutcome outcome =
          fast_filter_all(g, grp.nodes, grp.alpha, k, config.seed, it, std::max(1U, config.threads));
      IterationStats stats;
      stats.iteration = it;
      stats.degree_lo = grp.lo;
      stats.degree_hi = grp.hi;
      stats.nodes = static_cast<std::uint32_t>(grp.nodes.size());
      stats.alpha = grp.alpha;
      stats.survivors = outcome.total_survivors();
      stats.buckets = outcome.bucket_count();

      std::vector<SimilarPair> found;
      for (std::size_t b = 0; b < outcome.bucket_count(); ++b) {
        const std::uint32_t id = outcome.bucket_id(b);
        const std::uint64_t key =
            prf(config.cluster.assignment_seed, Domain::hash_join, it, (std::uint64_t{gi} << 32) | id);
        HashJoinTask task{g, config.tau, probe, config.verify, key, id * group, it, id, result.cost, found};
        task.run(outcome.bucket(b), group, layout);
        ++result.cost.buckets;
      }
      const std::size_t before = result.pairs.size();
      result.pairs.add(std::move(found));
      stats.new_pairs = result.pairs.size() - before;
      result.log.push_back(stats);
    }
  }
  return result;
}

JoinResult run_join(const BipartiteGraph& g, const JoinConfig& config) {
  switch (config.cluster.strategy) {
    case Strategy::lsf:
      return lsf_join(g, config);
    case Strategy::hash_join:
      return hash_join(g, config);
    case Strategy::combined:
      return combined_join(g, config);
  }
  throw DomainError("unknown strategy");
}

}  // namespace lsf
