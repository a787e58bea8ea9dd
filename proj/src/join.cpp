#include "lsf/join.hpp"

#include <algorithm>
#include <cmath>

#include "lsf/error.hpp"
#include "lsf/parallel.hpp"

namespace lsf {

ProbeSet::ProbeSet(std::uint32_t num_nodes, std::span<const NodeId> nodes) : mask_(num_nodes, 0) {
  for (NodeId v : nodes) {
    if (v >= num_nodes) throw DomainError("probe node out of range");
    mask_[v] = 1;
  }
}

std::optional<SimilarPair> verify_pair(const BipartiteGraph& g, NodeId a, NodeId b, const Threshold& tau) {
  const auto na = g.neighbors(a);
  const auto nb = g.neighbors(b);
  const std::uint32_t inter = intersection_size(na, nb);
  if (inter == 0 || !tau.accepts(inter, na.size(), nb.size())) return std::nullopt;
  const double cos = inter / std::sqrt(static_cast<double>(na.size()) * static_cast<double>(nb.size()));
  return SimilarPair{std::min(a, b), std::max(a, b), cos, 0, 0};
}

namespace {

inline void compare(const BipartiteGraph& g, NodeId a, NodeId b, const Threshold& tau,
                    std::vector<SimilarPair>& out) {
  if (auto p = verify_pair(g, a, b, tau)) out.push_back(*p);
}

}  // namespace

std::vector<SimilarPair> verify_bucket(const BipartiteGraph& g, std::span<const NodeId> members,
                                       const Threshold& tau, const ProbeSet& probe,
                                       std::uint64_t* comparisons) {
  std::vector<SimilarPair> out;
  const std::size_t n = members.size();
  std::uint64_t merges = 0;
  if (!probe.active()) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) compare(g, members[i], members[j], tau, out);
    }
    merges = n * (n - (n > 0 ? 1 : 0)) / 2;
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const NodeId a = members[i];
      if (!probe.contains(a)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const NodeId b = members[j];
        if (b == a || (probe.contains(b) && b < a)) continue;
        compare(g, a, b, tau, out);
        ++merges;
      }
    }
  }
  if (comparisons != nullptr) *comparisons += merges;
  return out;
}

double resolve_alpha(const JoinConfig& config, double degree) {
  if (config.alpha) return *config.alpha;
  return solve_alpha(config.tau.value(), degree, config.k, config.target_collisions);
}

std::vector<NodeGroup> plan_node_groups(const BipartiteGraph& g, const JoinConfig& config,
                                   std::span<const NodeId> active) {
  std::vector<NodeGroup> groups;
  if (config.single_bucket) {
    NodeGroup all;
    std::uint64_t edges = 0;
    std::uint32_t lo = UINT32_MAX;
    std::uint32_t hi = 0;
    auto take = [&](NodeId v) {
      const auto d = g.degree(v);
      if (d == 0) return;
      all.nodes.push_back(v);
      edges += d;
      lo = std::min(lo, d);
      hi = std::max(hi, d + 1);
    };
    if (active.empty()) {
      for (NodeId v = 0; v < g.num_nodes(); ++v) take(v);
    } else {
      for (NodeId v : active) take(v);
    }
    if (all.nodes.empty()) return groups;
    std::sort(all.nodes.begin(), all.nodes.end());
    all.lo = lo;
    all.hi = hi;
    all.alpha = resolve_alpha(config, static_cast<double>(edges) / static_cast<double>(all.nodes.size()));
    groups.push_back(std::move(all));
    return groups;
  }
  auto buckets = active.empty() ? degree_buckets(g) : degree_buckets(g, active);
  for (auto& b : buckets) {
    std::uint32_t max_deg = 0;
    for (NodeId v : b.nodes) max_deg = std::max(max_deg, g.degree(v));
    NodeGroup grp;
    grp.lo = b.lo;
    grp.hi = b.hi;
    grp.alpha = resolve_alpha(config, max_deg);
    grp.nodes = std::move(b.nodes);
    std::sort(grp.nodes.begin(), grp.nodes.end());
    groups.push_back(std::move(grp));
  }
  return groups;
}

JoinResult lsf_join(const BipartiteGraph& g, const JoinConfig& config, std::span<const NodeId> active) {
  config.cluster.validate();
  FilterParams check;
  check.k = config.k;
  check.beta = config.beta;
  check.tau = config.tau;
  check.seed = config.seed;
  if (config.alpha) check.alpha = *config.alpha;
  check.validate();

  JoinResult result{PairSet{}, CostReport(config.cluster.p), {}};
  const auto groups = plan_node_groups(g, config, active);
  const ProbeSet probe = config.probe.empty() ? ProbeSet{} : ProbeSet(g.num_nodes(), config.probe);
  const BucketAssigner assign(config.cluster.assignment_seed, config.cluster.p);
  const unsigned threads = std::max(1U, config.threads);

  for (std::uint32_t r = 0; r < config.beta; ++r) {
    const std::uint32_t it = config.first_iteration + r;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      const NodeGroup& grp = groups[gi];
      if (!(grp.alpha > 0.0 && grp.alpha < 1.0)) {
        throw DomainError("alpha must lie in (0, 1); alpha >= 1 means no filtering is possible");
      }
      const SurvivalOutcome outcome =
          fast_filter_all(g, grp.nodes, grp.alpha, config.k, config.seed, it, threads);

      IterationStats stats;
      stats.iteration = it;
      stats.degree_lo = grp.lo;
      stats.degree_hi = grp.hi;
      stats.nodes = static_cast<std::uint32_t>(grp.nodes.size());
      stats.alpha = grp.alpha;
      stats.survivors = outcome.total_survivors();
      stats.buckets = outcome.bucket_count();

      for (std::size_t b = 0; b < outcome.bucket_count(); ++b) {
        const std::uint64_t tag = (static_cast<std::uint64_t>(gi) << 32) | outcome.bucket_id(b);
        result.cost.add_bucket(assign(it, tag), outcome.bucket(b), g);
      }

      if (config.verify) {
        std::vector<std::vector<SimilarPair>> found(threads);
        std::vector<std::uint64_t> merges(threads, 0);
        parallel_for(outcome.bucket_count(), threads, 64, [&](std::size_t lo, std::size_t hi, unsigned w) {
          for (std::size_t b = lo; b < hi; ++b) {
            auto pairs = verify_bucket(g, outcome.bucket(b), config.tau, probe, &merges[w]);
            for (auto& p : pairs) {
              p.iteration = it;
              p.repetition = outcome.bucket_id(b);
            }
            found[w].insert(found[w].end(), pairs.begin(), pairs.end());
          }
        });
        std::vector<SimilarPair> batch;
        for (auto& f : found) {
          batch.insert(batch.end(), f.begin(), f.end());
          f.clear();
          f.shrink_to_fit();
        }
        for (auto m : merges) stats.comparisons += m;
        const std::size_t before = result.pairs.size();
        result.pairs.add(std::move(batch));
        stats.new_pairs = result.pairs.size() - before;
      }
      result.log.push_back(stats);
    }
  }
  return result;
}

std::uint32_t matching_iterations(std::uint64_t n, std::uint32_t remaining, double scale) {
  if (remaining == 0) throw DomainError("matching_iterations: need at least one remaining round");
  if (!(scale > 0.0)) throw DomainError("matching_iterations: scale must be positive");
  double x = static_cast<double>(n);
  for (std::uint32_t i = 0; i < remaining; ++i) {
    if (x <= 1.0) {
      x = 0.0;
      break;
    }
    x = std::log(x);
  }
  const double t = std::ceil(scale * x / std::log(2.0));
  return std::max<std::uint32_t>(2, static_cast<std::uint32_t>(std::max(t, 0.0)));
}

MatchingResult matching_join(const BipartiteGraph& g, const JoinConfig& config, std::uint32_t rounds,
                             double schedule_scale) {
  if (rounds < 1) throw DomainError("matching_join: need at least one round");
  MatchingResult result{PairSet{}, CostReport(config.cluster.p), {}};

  std::vector<NodeId> active;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (g.degree(v) > 0) active.push_back(v);
  }
  std::vector<std::uint8_t> matched(g.num_nodes(), 0);
  std::uint32_t next_iteration = config.first_iteration;

  for (std::uint32_t t = 1; t <= rounds; ++t) {
    RoundLog log;
    log.round = t;
    log.iterations = matching_iterations(g.num_nodes(), rounds - t + 1, schedule_scale);
    log.active_before = static_cast<std::uint32_t>(active.size());
    if (!active.empty()) {
      JoinConfig round_cfg = config;
      round_cfg.beta = log.iterations;
      round_cfg.first_iteration = next_iteration;
      auto round = lsf_join(g, round_cfg, active);
      const std::size_t before = result.pairs.size();
      result.pairs.merge(round.pairs);
      log.found = result.pairs.size() - before;
      result.cost.merge(round.cost);
      for (const auto& p : round.pairs) {
        matched[p.u] = 1;
        matched[p.v] = 1;
      }
      std::erase_if(active, [&](NodeId v) { return matched[v] != 0; });
    }
    next_iteration += log.iterations;
    log.active_after = static_cast<std::uint32_t>(active.size());
    result.rounds.push_back(log);
  }
  return result;
}

}  // namespace lsf
