#pragma once

// Exact oracles, recall, the profile Φ, similarity histograms and the
// analytic exponent curves of the cost model.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "lsf/graph.hpp"
#include "lsf/pair_set.hpp"
#include "lsf/threshold.hpp"

namespace lsf {

/// m distinct node ids drawn uniformly, ascending. Throws DomainError if
/// m exceeds the node count.
std::vector<NodeId> sample_nodes(std::uint32_t num_nodes, std::uint32_t m, std::uint64_t seed);

/// Every pair with at least one endpoint in `sample` and cosine >= tau.
struct GroundTruth {
  std::vector<NodeId> sample;  // ascending
  PairSet pairs;
  Threshold tau = Threshold::parse("1");

  bool in_sample(NodeId v) const;
  /// True if the pair has an endpoint in the sample.
  bool covers(NodeId u, NodeId v) const { return in_sample(u) || in_sample(v); }
};

/// Exhaustive scan of sample × V.
GroundTruth ground_truth(const BipartiteGraph& g, const Threshold& tau, std::vector<NodeId> sample,
                         unsigned threads = 1);
GroundTruth ground_truth(const BipartiteGraph& g, const Threshold& tau, std::uint32_t sample_size,
                         std::uint64_t seed, unsigned threads = 1);

/// Double loop over all pairs.
PairSet brute_force_join(const BipartiteGraph& g, const Threshold& tau);

/// |found ∩ truth| / |truth|, counting only found pairs the truth covers.
/// Throws DomainError("recall undefined") on an empty truth set.
double recall(const PairSet& found, const GroundTruth& truth);

/// Recall after each prefix of iterations: entry b counts found pairs whose
/// first discovery happened in an iteration < first_iteration + b + 1.
std::vector<double> recall_by_iteration(const PairSet& found, const GroundTruth& truth,
                                        std::uint32_t first_iteration, std::uint32_t iterations);

struct PhiEstimate {
  double value = 0.0;
  double std_error = 0.0;   // 0 in exact mode
  bool exact = true;
  std::uint64_t samples = 0;  // ordered pairs drawn in sampled mode
};

/// Φ = Σ_v alpha^|Γ(v)| + Σ over ordered pairs u != v of alpha^|Γ(u) ∪ Γ(v)|.
double profile_phi_exact(const BipartiteGraph& g, double alpha);
/// Exact when N <= exact_limit; otherwise the pair sum is estimated from
/// `samples` uniformly drawn ordered pairs.
PhiEstimate profile_phi(const BipartiteGraph& g, double alpha, std::uint64_t samples = 1'000'000,
                        std::uint64_t seed = 0, std::uint32_t exact_limit = 10'000);

/// Exponents of N in total communication and per-processor work at p = N
/// with k = N^c repetitions. c <= 1 is the combined strategy (p/k processors
/// per repetition), c >= 1 plain LSF; the two agree at c = 1.
struct ExponentPoint {
  double c;
  double comm;
  double work;
};

ExponentPoint comm_work_exponents(double tau, double c);
/// Points at c_lo, c_lo + step, ... up to c_hi inclusive.
std::vector<ExponentPoint> exponent_curve(double tau, double c_lo, double c_hi, double step);
void write_exponent_csv(std::span<const ExponentPoint> curve, std::ostream& out);

/// Bin j counts pairs with edges[j] <= cosine < edges[j+1]; the last bin is
/// open above. Pairs below edges[0] go to `underflow`.
struct SimilarityHistogram {
  std::vector<double> edges;
  std::vector<std::uint64_t> counts;
  std::uint64_t underflow = 0;
  std::uint64_t pairs = 0;
};

/// All pairs with an endpoint among `sample_size` sampled nodes. Edges must be
/// strictly ascending.
SimilarityHistogram similarity_histogram(const BipartiteGraph& g, std::vector<double> edges,
                                         std::uint32_t sample_size, std::uint64_t seed,
                                         unsigned threads = 1);
void write_histogram_csv(const SimilarityHistogram& h, std::ostream& out);

}  // namespace lsf
