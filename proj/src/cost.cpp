#include "lsf/cost.hpp"

#include <algorithm>
#include <numeric>

#include "lsf/error.hpp"
#include "lsf/prf.hpp"

namespace lsf {

void ClusterConfig::validate() const {
  if (p == 0) throw DomainError("cluster: p must be at least 1");
  if (strategy == Strategy::combined && !(c > 0.0 && c < 1.0)) {
    throw DomainError("cluster: combined strategy needs 0 < c < 1");
  }
}

CostReport::CostReport(std::uint32_t processors) : load_(processors, 0), work_(processors, 0) {
  if (processors == 0) throw DomainError("CostReport: need at least one processor");
}

void CostReport::add_bucket(std::uint32_t proc, std::span<const NodeId> members, const BipartiteGraph& g) {
  std::uint64_t words = 0;
  std::uint32_t max_deg = 0;
  for (NodeId v : members) {
    const auto d = g.degree(v);
    words += 1 + d;
    max_deg = std::max(max_deg, d);
  }
  const std::uint64_t n = members.size();
  load_[proc] += words;
  work_[proc] += n * (n - (n > 0 ? 1 : 0)) / 2 * max_deg;
  survivors += n;
  buckets += n > 0 ? 1 : 0;
}

void CostReport::add_copy(std::uint32_t proc, NodeId v, const BipartiteGraph& g) {
  load_[proc] += 1 + g.degree(v);
  ++survivors;
}

void CostReport::merge(const CostReport& other) {
  if (other.processors() > processors()) {
    load_.resize(other.processors(), 0);
    work_.resize(other.processors(), 0);
  }
  for (std::size_t i = 0; i < other.load_.size(); ++i) {
    load_[i] += other.load_[i];
    work_[i] += other.work_[i];
  }
  buckets += other.buckets;
  survivors += other.survivors;
}

std::uint64_t CostReport::total_communication() const {
  return std::accumulate(load_.begin(), load_.end(), std::uint64_t{0});
}

std::uint64_t CostReport::total_work() const {
  return std::accumulate(work_.begin(), work_.end(), std::uint64_t{0});
}

std::uint64_t CostReport::max_load() const { return *std::max_element(load_.begin(), load_.end()); }

double CostReport::mean_load() const {
  return static_cast<double>(total_communication()) / static_cast<double>(load_.size());
}

std::uint64_t CostReport::max_work() const { return *std::max_element(work_.begin(), work_.end()); }

double CostReport::mean_work() const {
  return static_cast<double>(total_work()) / static_cast<double>(work_.size());
}

BucketAssigner::BucketAssigner(std::uint64_t seed, std::uint32_t p) : seed_(seed), p_(p) {
  if (p == 0) throw DomainError("BucketAssigner: p must be at least 1");
}

std::uint32_t BucketAssigner::operator()(std::uint32_t iteration, std::uint64_t bucket) const {
  if (p_ == 1) return 0;
  return static_cast<std::uint32_t>(to_range(prf(seed_, Domain::assignment, iteration, bucket), p_));
}

std::vector<std::uint32_t> partition_buckets(std::uint64_t k, std::uint32_t p, std::uint64_t seed) {
  if (k == 0) throw DomainError("partition_buckets: k must be at least 1");
  const BucketAssigner h(seed, p);
  std::vector<std::uint32_t> out(k);
  for (std::uint64_t i = 0; i < k; ++i) out[i] = h(0, i);
  return out;
}

CostReport account_costs(const SurvivalOutcome& outcome, std::span<const std::uint32_t> assignment,
                         std::uint32_t p, const BipartiteGraph& g) {
  CostReport report(p);
  for (std::size_t b = 0; b < outcome.bucket_count(); ++b) {
    const auto id = outcome.bucket_id(b);
    if (id >= assignment.size()) throw DomainError("account_costs: assignment does not cover all buckets");
    const auto proc = assignment[id];
    if (proc >= p) throw DomainError("account_costs: processor id out of range");
    report.add_bucket(proc, outcome.bucket(b), g);
  }
  return report;
}

}  // namespace lsf
