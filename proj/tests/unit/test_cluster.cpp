#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "lsf/cluster.hpp"
#include "lsf/error.hpp"
#include "lsf/eval.hpp"
#include "lsf/projective_plane.hpp"
#include "support.hpp"

using namespace lsf;

namespace {

std::set<std::pair<NodeId, NodeId>> keys(const PairSet& s) {
  std::set<std::pair<NodeId, NodeId>> out;
  for (const auto& p : s) out.insert({p.u, p.v});
  return out;
}

std::uint64_t record_words(const BipartiteGraph& g) {
  std::uint64_t w = 0;
  for (NodeId v = 0; v < g.num_nodes(); ++v) w += 1 + g.degree(v);
  return w;
}

BipartiteGraph mixed(std::uint32_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<DimId>> lists;
  const auto base = testing::random_set(rng, 30, 6);
  for (std::uint32_t v = 0; v < n; ++v) {
    if (rng() % 3 == 0) {
      auto s = base;
      s[rng() % s.size()] = 30 + static_cast<DimId>(rng() % 10);
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      lists.push_back(s);
    } else {
      lists.push_back(testing::random_set(rng, 40, 2 + static_cast<std::uint32_t>(rng() % 6)));
    }
  }
  return BipartiteGraph::from_lists(40, lists);
}

}  // namespace

TEST_CASE("bucket partition") {
  const auto one = partition_buckets(100, 1, 5);
  CHECK(std::all_of(one.begin(), one.end(), [](auto p) { return p == 0; }));
  CHECK(partition_buckets(64, 8, 3) == partition_buckets(64, 8, 3));
  CHECK(partition_buckets(64, 8, 3) != partition_buckets(64, 8, 4));
  // k = p: processor 0 receives one bucket on average
  const int seeds = 4000;
  double sum = 0;
  double sq = 0;
  for (int s = 0; s < seeds; ++s) {
    const auto a = partition_buckets(16, 16, static_cast<std::uint64_t>(s));
    const double c = static_cast<double>(std::count(a.begin(), a.end(), 0u));
    sum += c;
    sq += c * c;
  }
  const double mean = sum / seeds;
  CHECK(testing::within_se(mean, 1.0, std::sqrt((sq / seeds - mean * mean) / seeds)));
  CHECK_THROWS_AS(partition_buckets(0, 4, 1), DomainError);
}

TEST_CASE("cost accounting examples") {
  const auto g = BipartiteGraph::from_lists(6, {{0, 1, 2}, {1, 2, 3}, {5}});
  const SurvivalOutcome none(4, {0, 1, 2}, {0, 0, 0, 0}, {});
  const std::vector<std::uint32_t> assign = {0, 1, 0, 1};
  const auto zero = account_costs(none, assign, 2, g);
  CHECK(zero.total_communication() == 0);
  CHECK(zero.total_work() == 0);

  const SurvivalOutcome pair(4, {0, 1}, {0, 1, 2}, {3, 3});
  const auto c = account_costs(pair, assign, 2, g);
  CHECK(c.total_communication() == 8);
  CHECK(c.total_work() == 3);
  CHECK(c.load()[1] == 8);
  CHECK(c.max_load() == 8);
  CHECK(c.mean_load() == 4.0);
  CHECK(c.buckets == 1);
  CHECK(c.survivors == 2);
  const std::vector<std::uint32_t> short_assign = {0};
  CHECK_THROWS_AS(account_costs(pair, short_assign, 2, g), DomainError);
  const std::vector<std::uint32_t> bad = {0, 0, 0, 5};
  CHECK_THROWS_AS(account_costs(pair, bad, 2, g), DomainError);
}

TEST_CASE("work is conserved across assignments") {
  const auto g = gen_uniform(400, 4, 24, 1);
  const auto out = fast_filter_all(g, {}, 0.5, 128, 7, 0);
  std::uint64_t want = 0;
  for (std::size_t b = 0; b < out.bucket_count(); ++b) {
    const std::uint64_t n = out.bucket(b).size();
    want += n * (n - 1) / 2 * 4;
  }
  for (std::uint32_t p : {1u, 3u, 16u}) {
    for (std::uint64_t seed : {1u, 2u}) {
      const auto c = account_costs(out, partition_buckets(128, p, seed), p, g);
      CHECK(c.total_work() == want);
      std::uint64_t sum = 0;
      for (auto l : c.load()) sum += l;
      CHECK(sum == c.total_communication());
    }
  }
}

TEST_CASE("finite fields") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u}) {
    const auto f = GaloisField::of_order(q);
    REQUIRE(f.has_value());
    for (std::uint32_t a = 0; a < q; ++a) {
      CHECK(f->add(a, 0) == a);
      CHECK(f->mul(a, 1) == a);
      bool inverse = a == 0;
      for (std::uint32_t b = 0; b < q; ++b) {
        CHECK(f->add(a, b) == f->add(b, a));
        CHECK(f->mul(a, b) == f->mul(b, a));
        inverse = inverse || f->mul(a, b) == 1;
        for (std::uint32_t c = 0; c < q; c += 3) {
          CHECK(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
          CHECK(f->mul(a, f->mul(b, c)) == f->mul(f->mul(a, b), c));
        }
      }
      CHECK(inverse);
    }
  }
  CHECK_FALSE(GaloisField::of_order(6).has_value());
  CHECK_FALSE(GaloisField::of_order(1).has_value());
  CHECK_FALSE(GaloisField::of_order(12).has_value());
}

TEST_CASE("projective planes") {
  for (std::uint32_t q : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    const auto plane = ProjectivePlane::of_order(q);
    REQUIRE(plane.has_value());
    const std::uint32_t n = plane->size();
    CHECK(n == q * q + q + 1);
    std::vector<std::vector<std::uint32_t>> through(n);
    for (std::uint32_t l = 0; l < n; ++l) {
      const auto pts = plane->points_on(l);
      CHECK(pts.size() == q + 1);
      CHECK(std::is_sorted(pts.begin(), pts.end()));
      for (auto p : pts) through[p].push_back(l);
      for (std::uint32_t m = l + 1; m < n; ++m) {
        const auto other = plane->points_on(m);
        std::vector<std::uint32_t> common;
        std::set_intersection(pts.begin(), pts.end(), other.begin(), other.end(), std::back_inserter(common));
        REQUIRE(common.size() == 1);
        CHECK(plane->meet(l, m) == common[0]);
      }
    }
    for (const auto& t : through) CHECK(t.size() == q + 1);
  }
  CHECK_FALSE(ProjectivePlane::of_order(6).has_value());
}

TEST_CASE("layout selection") {
  CHECK(projective_layout_available(1));
  CHECK(projective_layout_available(4));
  CHECK(projective_layout_available(16));
  CHECK(projective_layout_available(100));
  CHECK_FALSE(projective_layout_available(49));
  CHECK_FALSE(projective_layout_available(8));
  CHECK(resolve_layout(49, HashJoinLayout::automatic) == HashJoinLayout::grid);
  CHECK(resolve_layout(16, HashJoinLayout::automatic) == HashJoinLayout::projective);
  CHECK_THROWS_AS(resolve_layout(49, HashJoinLayout::projective), DomainError);
  CHECK_THROWS_AS(resolve_layout(8, HashJoinLayout::automatic), DomainError);
  CHECK_THROWS_AS(resolve_layout(8, HashJoinLayout::grid), DomainError);
  CHECK(hash_join_copies(16, HashJoinLayout::grid) == 7);
  CHECK(hash_join_copies(16, HashJoinLayout::projective) == 4);
  CHECK(hash_join_copies(1, HashJoinLayout::automatic) == 1);
}

TEST_CASE("hash join is exhaustive on every layout") {
  const auto g = mixed(220, 3);
  const auto tau = Threshold::parse("0.5");
  const auto truth = keys(brute_force_join(g, tau));
  REQUIRE(truth.size() > 100);
  struct Case {
    std::uint32_t p;
    HashJoinLayout layout;
  };
  for (const Case c : {Case{1, HashJoinLayout::automatic}, Case{4, HashJoinLayout::grid},
                       Case{4, HashJoinLayout::projective}, Case{9, HashJoinLayout::projective},
                       Case{16, HashJoinLayout::grid}, Case{16, HashJoinLayout::projective},
                       Case{49, HashJoinLayout::automatic}, Case{100, HashJoinLayout::projective}}) {
    JoinConfig cfg;
    cfg.tau = tau;
    cfg.cluster.p = c.p;
    cfg.cluster.layout = c.layout;
    cfg.cluster.assignment_seed = 17;
    const auto r = hash_join(g, cfg);
    CHECK(keys(r.pairs) == truth);
    CHECK(r.cost.total_communication() == hash_join_copies(c.p, c.layout) * record_words(g));
    CHECK(r.cost.processors() == c.p);
  }
}

TEST_CASE("hash join compares each pair once") {
  const auto g = gen_uniform(150, 5, 60, 2);
  for (auto layout : {HashJoinLayout::grid, HashJoinLayout::projective}) {
    JoinConfig cfg;
    cfg.cluster.p = 16;
    cfg.cluster.layout = layout;
    const auto r = hash_join(g, cfg);
    CHECK(r.cost.total_work() == 150u * 149u / 2u * 5u);
  }
  JoinConfig cfg;
  cfg.cluster.p = 1;
  const auto one = hash_join(g, cfg);
  CHECK(one.cost.total_communication() == 150u * 6u);
  CHECK(one.cost.total_work() == 150u * 149u / 2u * 5u);
  cfg.cluster.p = 8;
  CHECK_THROWS_AS(hash_join(g, cfg), DomainError);
}

TEST_CASE("hash join probe mode and subsets") {
  const auto g = mixed(120, 8);
  JoinConfig cfg;
  cfg.tau = Threshold::parse("0.4");
  cfg.cluster.p = 16;
  const auto full = hash_join(g, cfg);
  cfg.probe = {4, 9, 100};
  const auto part = hash_join(g, cfg);
  const ProbeSet probe(120, cfg.probe);
  std::set<std::pair<NodeId, NodeId>> want;
  for (const auto& p : full.pairs) {
    if (probe.contains(p.u) || probe.contains(p.v)) want.insert({p.u, p.v});
  }
  CHECK(keys(part.pairs) == want);

  cfg.probe.clear();
  std::vector<NodeId> sub;
  for (NodeId v = 0; v < 120; v += 2) sub.push_back(v);
  const auto r = hash_join(g, cfg, sub);
  for (const auto& p : r.pairs) CHECK((p.u % 2 == 0 && p.v % 2 == 0));
}

TEST_CASE("lsf load is balanced when k is much larger than p") {
  const auto g = gen_uniform(2000, 6, 200, 4);
  int good = 0;
  const int seeds = 20;
  for (int s = 0; s < seeds; ++s) {
    JoinConfig cfg;
    cfg.tau = Threshold::parse("0.5");
    cfg.alpha = 0.5;
    cfg.k = 4096;
    cfg.verify = false;
    cfg.seed = static_cast<std::uint64_t>(s);
    cfg.cluster.p = 16;
    cfg.cluster.assignment_seed = static_cast<std::uint64_t>(s) * 31 + 1;
    const auto r = lsf_join(g, cfg);
    good += static_cast<double>(r.cost.max_load()) <= 2.0 * r.cost.mean_load();
  }
  CHECK(good >= 0.9 * seeds);
}

TEST_CASE("combined strategy degenerate ends") {
  const auto g = mixed(200, 6);
  JoinConfig cfg;
  cfg.tau = Threshold::parse("0.5");
  cfg.seed = 9;
  cfg.beta = 2;
  cfg.cluster.p = 16;
  cfg.cluster.strategy = Strategy::combined;

  // one processor per repetition: plain LSF with k = p
  cfg.cluster.c = 0.9;
  CHECK(combined_repetitions(16, 0.9) == 16);
  const auto comb = combined_join(g, cfg);
  JoinConfig plain = cfg;
  plain.cluster.strategy = Strategy::lsf;
  plain.k = 16;
  const auto lsf = lsf_join(g, plain);
  CHECK(keys(comb.pairs) == keys(lsf.pairs));
  CHECK(comb.cost.total_communication() == lsf.cost.total_communication());
  CHECK(comb.cost.total_work() == lsf.cost.total_work());

  // k = 1: the whole node set is hash-joined
  cfg.cluster.c = 0.1;
  CHECK(combined_repetitions(16, 0.1) == 1);
  const auto flat = combined_join(g, cfg);
  CHECK(keys(flat.pairs) == keys(brute_force_join(g, cfg.tau)));
  JoinConfig hj = cfg;
  hj.cluster.strategy = Strategy::hash_join;
  CHECK(flat.cost.total_communication() == hash_join(g, hj).cost.total_communication());

  cfg.cluster.c = 1.0;
  CHECK_THROWS_AS(combined_join(g, cfg), DomainError);
  cfg.cluster.p = 64;
  cfg.cluster.c = 0.5;  // k = 8, groups of 8
  CHECK_THROWS_AS(combined_join(g, cfg), DomainError);
  cfg.cluster.c = 1.0 / 3.0;  // k = 4, groups of 16
  const auto mid = combined_join(g, cfg);
  const auto truth = keys(brute_force_join(g, cfg.tau));
  for (const auto& p : mid.pairs) CHECK(truth.count({p.u, p.v}) == 1);
  CHECK(mid.cost.processors() == 64);
}

TEST_CASE("combined communication exponent at p = N") {
  // comm = N^(1 + c(1-tau)/(2-tau)) * p^((1-c)/2), here with p = N
  const double tau = 0.5;
  const double c = 0.5;
  std::vector<double> logn;
  std::vector<double> logc;
  for (std::uint32_t e : {12u, 16u}) {
    const std::uint32_t n = 1u << e;
    const auto g = gen_uniform(n, 8, 1u << 24, e);
    JoinConfig cfg;
    cfg.tau = Threshold::parse("0.5");
    cfg.verify = false;
    cfg.seed = 1;
    cfg.cluster.p = n;
    cfg.cluster.c = c;
    cfg.cluster.layout = HashJoinLayout::grid;
    cfg.cluster.strategy = Strategy::combined;
    const auto r = combined_join(g, cfg);
    logn.push_back(std::log(static_cast<double>(n)));
    logc.push_back(std::log(static_cast<double>(r.cost.total_communication())));
  }
  const double slope = (logc[1] - logc[0]) / (logn[1] - logn[0]);
  const double want = 1.0 + c * (1.0 - tau) / (2.0 - tau) + (1.0 - c) / 2.0;
  CHECK(slope == doctest::Approx(want).epsilon(0.10));
}

TEST_CASE("strategy dispatch") {
  const auto g = mixed(80, 1);
  JoinConfig cfg;
  cfg.tau = Threshold::parse("0.6");
  cfg.cluster.p = 4;
  cfg.cluster.strategy = Strategy::hash_join;
  CHECK(keys(run_join(g, cfg).pairs) == keys(brute_force_join(g, cfg.tau)));
  cfg.cluster.strategy = Strategy::lsf;
  cfg.k = 64;
  CHECK(run_join(g, cfg).cost.buckets > 0);
  cfg.cluster.p = 0;
  CHECK_THROWS_AS(run_join(g, cfg), DomainError);
}
