#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "lsf/error.hpp"
#include "lsf/eval.hpp"
#include "lsf/filter.hpp"
#include "support.hpp"

using namespace lsf;

namespace {

SimilarPair sp(NodeId u, NodeId v, std::uint32_t it = 0) { return {u, v, 1.0, it, 0}; }

BipartiteGraph random_graph(std::uint32_t n, std::uint32_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<DimId>> lists;
  for (std::uint32_t v = 0; v < n; ++v) lists.push_back(testing::random_set(rng, m, 1 + static_cast<std::uint32_t>(rng() % 6)));
  return BipartiteGraph::from_lists(m, lists);
}

}  // namespace

TEST_CASE("node sampling") {
  const auto s = sample_nodes(1000, 50, 3);
  CHECK(s.size() == 50);
  CHECK(std::is_sorted(s.begin(), s.end()));
  CHECK(std::adjacent_find(s.begin(), s.end()) == s.end());
  CHECK(s.back() < 1000);
  CHECK(s == sample_nodes(1000, 50, 3));
  CHECK(s != sample_nodes(1000, 50, 4));
  CHECK(sample_nodes(7, 7, 1) == std::vector<NodeId>{0, 1, 2, 3, 4, 5, 6});
  CHECK(sample_nodes(7, 0, 1).empty());
  CHECK_THROWS_AS(sample_nodes(7, 8, 1), DomainError);

  const int seeds = 20000;
  std::vector<int> hits(10, 0);
  for (int seed = 0; seed < seeds; ++seed) {
    for (auto v : sample_nodes(10, 3, static_cast<std::uint64_t>(seed))) ++hits[v];
  }
  for (int h : hits) CHECK(testing::within_se(h / double(seeds), 0.3, testing::binom_se(0.3, seeds), 4.0));
}

TEST_CASE("ground truth against a direct scan") {
  const auto g = random_graph(150, 12, 7);
  const auto tau = Threshold::parse("0.4");
  const std::vector<NodeId> sample = {3, 9, 40, 41, 149};
  const auto truth = ground_truth(g, tau, sample, 3);
  std::set<std::pair<NodeId, NodeId>> want;
  for (NodeId u : sample) {
    const std::vector<DimId> a(g.neighbors(u).begin(), g.neighbors(u).end());
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      if (v == u) continue;
      const std::vector<DimId> b(g.neighbors(v).begin(), g.neighbors(v).end());
      if (testing::similar_at_least(testing::set_overlap(a, b), a.size(), b.size(), 4, 10)) {
        want.insert({std::min(u, v), std::max(u, v)});
      }
    }
  }
  std::set<std::pair<NodeId, NodeId>> got;
  for (const auto& p : truth.pairs) {
    got.insert({p.u, p.v});
    CHECK(p.cosine == doctest::Approx(cosine(g, p.u, p.v)));
  }
  CHECK(got == want);
  CHECK(truth.in_sample(40));
  CHECK_FALSE(truth.in_sample(42));
  CHECK(truth.covers(0, 149));
  CHECK_FALSE(truth.covers(0, 1));

  const auto all = ground_truth(g, tau, std::vector<NodeId>(sample_nodes(150, 150, 0)));
  const auto brute = brute_force_join(g, tau);
  CHECK(all.pairs.size() == brute.size());
  CHECK_THROWS_AS(ground_truth(g, tau, std::vector<NodeId>{150}), DomainError);
}

TEST_CASE("threshold one keeps only identical neighbour sets") {
  const auto g = BipartiteGraph::from_lists(6, {{0, 1}, {2, 3}, {4}, {5}, {0, 1, 2}});
  const auto truth = ground_truth(g, Threshold::parse("1"), 5, 0);
  CHECK(truth.pairs.empty());
  const auto g2 = BipartiteGraph::from_lists(6, {{0, 1}, {0, 1}, {4}});
  CHECK(ground_truth(g2, Threshold::parse("1"), 3, 0).pairs.size() == 1);
}

TEST_CASE("recall") {
  GroundTruth truth;
  truth.sample = {0, 2};
  truth.pairs.add({sp(0, 1), sp(2, 3)});
  PairSet found;
  found.add({sp(0, 1, 2), sp(4, 5)});
  CHECK(recall(found, truth) == 0.5);
  found.add(sp(3, 2, 0));
  CHECK(recall(found, truth) == 1.0);
  CHECK(recall(PairSet{}, truth) == 0.0);

  const auto by_it = recall_by_iteration(found, truth, 0, 3);
  CHECK(by_it == std::vector<double>{0.5, 0.5, 1.0});
  CHECK(recall_by_iteration(found, truth, 2, 1) == std::vector<double>{0.5});

  GroundTruth empty;
  CHECK_THROWS_WITH_AS(recall(found, empty), "recall undefined", DomainError);
  CHECK_THROWS_AS(recall_by_iteration(found, empty, 0, 2), DomainError);
}

TEST_CASE("profile examples") {
  const auto same = BipartiteGraph::from_lists(2, {{0}, {0}});
  CHECK(profile_phi_exact(same, 0.5) == doctest::Approx(2.0));
  const auto apart = BipartiteGraph::from_lists(2, {{0}, {1}});
  CHECK(profile_phi_exact(apart, 0.5) == doctest::Approx(1.5));
  CHECK(profile_phi_exact(apart, 1.0) == doctest::Approx(4.0));
  CHECK_THROWS_AS(profile_phi_exact(apart, 0.0), DomainError);

  const auto g = random_graph(40, 10, 3);
  std::vector<std::vector<DimId>> relabeled(40);
  for (NodeId v = 0; v < 40; ++v) {
    for (DimId u : g.neighbors(v)) relabeled[39 - v].push_back(9 - u);
  }
  const auto h = BipartiteGraph::from_lists(10, relabeled);
  CHECK(profile_phi_exact(h, 0.7) == doctest::Approx(profile_phi_exact(g, 0.7)).epsilon(1e-12));

  const auto est = profile_phi(g, 0.7);
  CHECK(est.exact);
  CHECK(est.value == profile_phi_exact(g, 0.7));
}

TEST_CASE("second moment of a survival set equals the profile at alpha one half") {
  const auto g = random_graph(30, 8, 5);
  const double phi = profile_phi_exact(g, 0.5);
  const std::uint64_t k = 64;
  const int iterations = 600;
  double sum = 0;
  double sq = 0;
  for (int it = 0; it < iterations; ++it) {
    const auto out = fast_filter_all(g, {}, 0.5, k, 12, static_cast<std::uint32_t>(it));
    double m2 = 0;
    for (std::size_t b = 0; b < out.bucket_count(); ++b) {
      const double n = static_cast<double>(out.bucket(b).size());
      m2 += n * n;
    }
    m2 /= static_cast<double>(k);
    sum += m2;
    sq += m2 * m2;
  }
  const double mean = sum / iterations;
  const double se = std::sqrt((sq / iterations - mean * mean) / iterations);
  CHECK(mean <= phi + 3 * se);
  CHECK(testing::within_se(mean, phi, se));
}

TEST_CASE("sampled profile") {
  const auto g = random_graph(400, 12, 9);
  const double exact = profile_phi_exact(g, 0.6);
  const auto est = profile_phi(g, 0.6, 200000, 4, 100);
  CHECK_FALSE(est.exact);
  CHECK(est.samples == 200000);
  CHECK(est.std_error > 0);
  CHECK(testing::within_se(est.value, exact, est.std_error));
  CHECK_THROWS_AS(profile_phi(g, 0.6, 0, 4, 100), DomainError);
}

TEST_CASE("exponent curves") {
  const auto at1 = comm_work_exponents(0.5, 1.0);
  CHECK(at1.comm == doctest::Approx(4.0 / 3.0));
  CHECK(at1.work == doctest::Approx(2.0 / 3.0));
  const auto at0 = comm_work_exponents(0.5, 0.0);
  CHECK(at0.comm == doctest::Approx(1.5));
  CHECK(at0.work == doctest::Approx(1.0));
  const auto at2 = comm_work_exponents(0.1, 2.0);
  CHECK(at2.comm == doctest::Approx(1.0 + 2.0 * 0.9 / 1.9));
  CHECK(at2.work == doctest::Approx(1.0 - 0.2 / 1.9));
  CHECK(comm_work_exponents(0.1, 1.0).comm == doctest::Approx(1.473684211));
  CHECK_THROWS_AS(comm_work_exponents(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(comm_work_exponents(0.5, 2.5), DomainError);
  CHECK_THROWS_AS(comm_work_exponents(0.5, -0.1), DomainError);

  for (double tau : {0.1, 0.3, 0.5, 0.9}) {
    const double left = comm_work_exponents(tau, 1.0 - 1e-9).comm;
    const double right = comm_work_exponents(tau, 1.0 + 1e-9).comm;
    CHECK(left == doctest::Approx(right).epsilon(1e-6));
    const auto curve = exponent_curve(tau, 0.0, 2.0, 0.01);
    CHECK(curve.size() == 201);
    for (std::size_t i = 1; i < curve.size(); ++i) {
      CHECK(curve[i].work < curve[i - 1].work);
      if (curve[i].c <= 1.0 + 1e-9) {
        CHECK(curve[i].comm < curve[i - 1].comm);
      } else {
        CHECK(curve[i].comm > curve[i - 1].comm);
      }
    }
    // no other c beats c = 1 on communication, and the hash join (c = 0) has the most work
    for (const auto& p : curve) {
      CHECK(p.comm >= comm_work_exponents(tau, 1.0).comm - 1e-12);
      CHECK(p.work <= 1.0 + 1e-12);
    }
  }
  std::ostringstream out;
  const auto small = exponent_curve(0.5, 0.5, 1.5, 0.5);
  write_exponent_csv(small, out);
  CHECK(out.str() ==
        "c,strategy,comm_exponent,work_exponent\n"
        "0.5,combined,1.416666667,0.8333333333\n"
        "1,lsf,1.333333333,0.6666666667\n"
        "1.5,lsf,1.5,0.5\n");
  CHECK_THROWS_AS(exponent_curve(0.5, 1, 0, 0.1), DomainError);
  CHECK_THROWS_AS(exponent_curve(0.5, 0, 1, 0), DomainError);
}

TEST_CASE("similarity histogram") {
  const auto same = BipartiteGraph::from_lists(3, std::vector<std::vector<DimId>>(6, {0, 1, 2}));
  const auto hs = similarity_histogram(same, {0.0, 0.5, 1.0}, 2, 1);
  CHECK(hs.pairs == 15 - 6);
  CHECK(hs.counts == std::vector<std::uint64_t>{0, 0, 9});
  CHECK(hs.underflow == 0);

  std::vector<std::vector<DimId>> disjoint;
  for (DimId v = 0; v < 6; ++v) disjoint.push_back({v});
  const auto dg = BipartiteGraph::from_lists(6, disjoint);
  const auto hd = similarity_histogram(dg, {0.0, 0.5}, 6, 1);
  CHECK(hd.counts == std::vector<std::uint64_t>{15, 0});
  const auto hu = similarity_histogram(dg, {0.1, 0.5}, 6, 1);
  CHECK(hu.underflow == 15);
  CHECK(hu.counts == std::vector<std::uint64_t>{0, 0});

  const auto g = gen_uniform(300, 8, 20, 2);
  std::vector<double> edges;
  for (int j = 0; j < 10; ++j) edges.push_back(0.04 + 0.1 * j);
  const auto h = similarity_histogram(g, edges, 40, 6, 2);
  const auto sample = sample_nodes(300, 40, 6);
  const std::set<NodeId> in(sample.begin(), sample.end());
  std::vector<std::uint64_t> want(10, 0);
  std::uint64_t under = 0;
  std::uint64_t pairs = 0;
  for (NodeId u = 0; u < 300; ++u) {
    for (NodeId v = u + 1; v < 300; ++v) {
      if (!in.count(u) && !in.count(v)) continue;
      ++pairs;
      const double c = cosine(g, u, v);
      if (c < edges[0]) {
        ++under;
        continue;
      }
      std::size_t j = 0;
      while (j + 1 < edges.size() && c >= edges[j + 1]) ++j;
      ++want[j];
    }
  }
  CHECK(h.pairs == pairs);
  CHECK(h.underflow == under);
  CHECK(h.counts == want);
  CHECK(pairs == 300u * 299u / 2u - 260u * 259u / 2u);

  // skewed data: a hot set makes most sampled pairs overlap
  SkewedParams sp;
  sp.n = 2000;
  sp.d = 10;
  sp.gamma = 2;
  sp.seed = 1;
  const auto sk = similarity_histogram(gen_skewed(sp), {0.0, 0.1, 0.3}, 50, 3);
  CHECK(sk.counts[0] < sk.counts[1] + sk.counts[2]);
  CHECK(sk.counts[2] < sk.counts[1]);

  std::ostringstream out;
  write_histogram_csv(hd, out);
  CHECK(out.str() == "bin_lo,bin_hi,count\n-inf,0,0\n0,0.5,15\n0.5,inf,0\n");
  CHECK_THROWS_AS(similarity_histogram(g, {}, 5, 1), DomainError);
  CHECK_THROWS_AS(similarity_histogram(g, {0.5, 0.5}, 5, 1), DomainError);
}
