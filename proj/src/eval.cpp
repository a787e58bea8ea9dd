#include "lsf/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>

#include "lsf/error.hpp"
#include "lsf/join.hpp"
#include "lsf/parallel.hpp"
#include "lsf/prf.hpp"
#include "lsf/sampling.hpp"

namespace lsf {

std::vector<NodeId> sample_nodes(std::uint32_t num_nodes, std::uint32_t m, std::uint64_t seed) {
  if (m > num_nodes) throw DomainError("sample size exceeds node count");
  PrfStream rng(seed, Domain::sample);
  return sample_without_replacement<NodeId>(num_nodes, m, rng);
}

bool GroundTruth::in_sample(NodeId v) const { return std::binary_search(sample.begin(), sample.end(), v); }

namespace {

// Visits each unordered pair with an endpoint in `sample` once (u from the
// sample, v anywhere), skipping zero-degree nodes.
template <typename Visit>
void scan_sample(const BipartiteGraph& g, std::span<const NodeId> sample, unsigned threads, Visit&& visit) {
  std::vector<std::uint8_t> mark(g.num_nodes(), 0);
  for (NodeId u : sample) mark[u] = 1;
  parallel_for(sample.size(), threads, 4, [&](std::size_t b, std::size_t e, unsigned w) {
    for (std::size_t i = b; i < e; ++i) {
      const NodeId u = sample[i];
      if (g.degree(u) == 0) continue;
      for (NodeId v = 0; v < g.num_nodes(); ++v) {
        if (v == u || g.degree(v) == 0 || (mark[v] != 0 && v < u)) continue;
        visit(u, v, w);
      }
    }
  });
}

}  // namespace

GroundTruth ground_truth(const BipartiteGraph& g, const Threshold& tau, std::vector<NodeId> sample,
                         unsigned threads) {
  std::sort(sample.begin(), sample.end());
  sample.erase(std::unique(sample.begin(), sample.end()), sample.end());
  for (NodeId v : sample) {
    if (v >= g.num_nodes()) throw DomainError("ground truth: sample node out of range");
  }
  threads = std::max(1U, threads);
  std::vector<std::vector<SimilarPair>> found(threads);
  scan_sample(g, sample, threads, [&](NodeId u, NodeId v, unsigned w) {
    if (auto p = verify_pair(g, u, v, tau)) found[w].push_back(*p);
  });
  std::vector<SimilarPair> all;
  for (auto& f : found) all.insert(all.end(), f.begin(), f.end());
  GroundTruth truth{std::move(sample), PairSet{}, tau};
  truth.pairs.add(std::move(all));
  return truth;
}

GroundTruth ground_truth(const BipartiteGraph& g, const Threshold& tau, std::uint32_t sample_size,
                         std::uint64_t seed, unsigned threads) {
  return ground_truth(g, tau, sample_nodes(g.num_nodes(), sample_size, seed), threads);
}

PairSet brute_force_join(const BipartiteGraph& g, const Threshold& tau) {
  std::vector<SimilarPair> all;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    if (g.degree(u) == 0) continue;
    for (NodeId v = u + 1; v < g.num_nodes(); ++v) {
      if (g.degree(v) == 0) continue;
      if (auto p = verify_pair(g, u, v, tau)) all.push_back(*p);
    }
  }
  PairSet out;
  out.add(std::move(all));
  return out;
}

double recall(const PairSet& found, const GroundTruth& truth) {
  if (truth.pairs.empty()) throw DomainError("recall undefined");
  std::uint64_t hit = 0;
  for (const auto& p : truth.pairs) hit += found.contains(p.u, p.v) ? 1 : 0;
  return static_cast<double>(hit) / static_cast<double>(truth.pairs.size());
}

std::vector<double> recall_by_iteration(const PairSet& found, const GroundTruth& truth,
                                        std::uint32_t first_iteration, std::uint32_t iterations) {
  if (truth.pairs.empty()) throw DomainError("recall undefined");
  std::vector<std::uint64_t> first_seen(iterations, 0);
  for (const auto& p : truth.pairs) {
    const SimilarPair* f = found.find(p.u, p.v);
    if (f == nullptr || f->iteration < first_iteration) continue;
    const std::uint64_t rel = f->iteration - first_iteration;
    if (rel < iterations) ++first_seen[rel];
  }
  std::vector<double> out(iterations);
  std::uint64_t hit = 0;
  for (std::uint32_t b = 0; b < iterations; ++b) {
    hit += first_seen[b];
    out[b] = static_cast<double>(hit) / static_cast<double>(truth.pairs.size());
  }
  return out;
}

double profile_phi_exact(const BipartiteGraph& g, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("profile: alpha must lie in (0, 1]");
  const double la = std::log(alpha);
  double singles = 0.0;
  double pairs = 0.0;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    const auto du = g.degree(u);
    singles += std::exp(la * du);
    for (NodeId v = u + 1; v < g.num_nodes(); ++v) {
      const std::uint32_t uni = du + g.degree(v) - intersection_size(g.neighbors(u), g.neighbors(v));
      pairs += std::exp(la * uni);
    }
  }
  return singles + 2.0 * pairs;
}

PhiEstimate profile_phi(const BipartiteGraph& g, double alpha, std::uint64_t samples, std::uint64_t seed,
                        std::uint32_t exact_limit) {
  PhiEstimate est;
  const std::uint64_t n = g.num_nodes();
  if (n <= exact_limit || n < 2) {
    est.value = profile_phi_exact(g, alpha);
    return est;
  }
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("profile: alpha must lie in (0, 1]");
  if (samples == 0) throw DomainError("profile: need at least one sample");
  const double la = std::log(alpha);
  double singles = 0.0;
  for (NodeId u = 0; u < n; ++u) singles += std::exp(la * g.degree(u));
  PrfStream rng(seed, Domain::sample, 1);
  double mean = 0.0;
  double m2 = 0.0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const auto u = static_cast<NodeId>(rng.below(n));
    auto v = static_cast<NodeId>(rng.below(n - 1));
    if (v >= u) ++v;
    const std::uint32_t uni =
        g.degree(u) + g.degree(v) - intersection_size(g.neighbors(u), g.neighbors(v));
    const double x = std::exp(la * uni);
    const double delta = x - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (x - mean);
  }
  const double ordered = static_cast<double>(n) * static_cast<double>(n - 1);
  const double var = samples > 1 ? m2 / static_cast<double>(samples - 1) : 0.0;
  est.value = singles + ordered * mean;
  est.std_error = ordered * std::sqrt(var / static_cast<double>(samples));
  est.exact = false;
  est.samples = samples;
  return est;
}

ExponentPoint comm_work_exponents(double tau, double c) {
  if (!(tau > 0.0 && tau < 1.0)) throw DomainError("exponents: tau must lie in (0, 1)");
  if (!(c >= 0.0 && c <= 2.0)) throw DomainError("exponents: c must lie in [0, 2]");
  const double comm = c <= 1.0 ? 1.5 - c * tau / (2.0 * (2.0 - tau)) : 1.0 + c * (1.0 - tau) / (2.0 - tau);
  return {c, comm, 1.0 - c * tau / (2.0 - tau)};
}

std::vector<ExponentPoint> exponent_curve(double tau, double c_lo, double c_hi, double step) {
  if (!(step > 0.0)) throw DomainError("exponents: step must be positive");
  if (c_hi < c_lo) throw DomainError("exponents: empty range");
  std::vector<ExponentPoint> out;
  const auto n = static_cast<std::uint64_t>(std::floor((c_hi - c_lo) / step + 1e-9));
  for (std::uint64_t i = 0; i <= n; ++i) {
    out.push_back(comm_work_exponents(tau, c_lo + static_cast<double>(i) * step));
  }
  return out;
}

void write_exponent_csv(std::span<const ExponentPoint> curve, std::ostream& out) {
  out << "c,strategy,comm_exponent,work_exponent\n";
  const auto old = out.precision(10);
  for (const auto& p : curve) {
    out << p.c << ',' << (p.c < 1.0 ? "combined" : "lsf") << ',' << p.comm << ',' << p.work << '\n';
  }
  out.precision(old);
}

SimilarityHistogram similarity_histogram(const BipartiteGraph& g, std::vector<double> edges,
                                         std::uint32_t sample_size, std::uint64_t seed, unsigned threads) {
  if (edges.empty()) throw DomainError("histogram: need at least one bin edge");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i - 1] < edges[i])) throw DomainError("histogram: bin edges must be strictly ascending");
  }
  // Exact comparisons against each edge; edges outside (0, 1] are constant.
  std::vector<std::optional<Threshold>> cut(edges.size());
  std::vector<int> fixed(edges.size(), 0);  // 1: always >=, -1: never
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i] <= 0.0) {
      fixed[i] = 1;
    } else if (edges[i] > 1.0) {
      fixed[i] = -1;
    } else {
      cut[i] = Threshold::from_double(edges[i]);
    }
  }
  threads = std::max(1U, threads);
  const std::size_t bins = edges.size();
  std::vector<std::vector<std::uint64_t>> counts(threads, std::vector<std::uint64_t>(bins + 1, 0));
  const auto sample = sample_nodes(g.num_nodes(), sample_size, seed);
  scan_sample(g, sample, threads, [&](NodeId u, NodeId v, unsigned w) {
    const auto nu = g.neighbors(u);
    const auto nv = g.neighbors(v);
    const std::uint32_t inter = intersection_size(nu, nv);
    std::size_t above = 0;
    for (std::size_t i = 0; i < bins; ++i) {
      const bool ge = fixed[i] != 0 ? fixed[i] > 0 : inter > 0 && cut[i]->accepts(inter, nu.size(), nv.size());
      if (!ge) break;
      ++above;
    }
    ++counts[w][above];
  });
  SimilarityHistogram h;
  h.edges = std::move(edges);
  h.counts.assign(bins, 0);
  for (const auto& c : counts) {
    h.underflow += c[0];
    for (std::size_t i = 0; i < bins; ++i) h.counts[i] += c[i + 1];
  }
  h.pairs = h.underflow;
  for (auto c : h.counts) h.pairs += c;
  return h;
}

void write_histogram_csv(const SimilarityHistogram& h, std::ostream& out) {
  out << "bin_lo,bin_hi,count\n";
  out << "-inf," << h.edges.front() << ',' << h.underflow << '\n';
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    out << h.edges[i] << ',';
    if (i + 1 < h.edges.size()) {
      out << h.edges[i + 1];
    } else {
      out << "inf";
    }
    out << ',' << h.counts[i] << '\n';
  }
}

}  // namespace lsf
