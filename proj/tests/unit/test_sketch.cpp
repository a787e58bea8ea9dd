#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "lsf/error.hpp"
#include "lsf/sketch.hpp"
#include "support.hpp"

using namespace lsf;

TEST_CASE("sketch dimension") {
  CHECK(sketch_dimension(20, 4, 0.1) == 800);
  CHECK(sketch_dimension(10, 1, 0.5) == 20);
  CHECK(sketch_dimension(3, 1, 0.7) == 5);
  CHECK(sketch_dimension(0, 1, 0.5) == 1);
  CHECK_THROWS_AS(sketch_dimension(10, 0, 0.5), DomainError);
  CHECK_THROWS_AS(sketch_dimension(10, 1, 0), DomainError);
  CHECK_THROWS_AS(sketch_dimension(10, 1, 1.5), DomainError);
}

TEST_CASE("compression basics") {
  const std::vector<DimId> a = {1, 4, 7, 9};
  const std::vector<DimId> b = {2, 4, 9, 11};
  const auto ia = countmin_compress(a, 16, 3, Placement::identity);
  const auto ib = countmin_compress(b, 16, 3, Placement::identity);
  CHECK(ia == std::vector<std::uint32_t>(a.begin(), a.end()));
  CHECK(sketch_dot(ia, ib) == 2);
  CHECK(union_size(ia, ib) == 6);
  CHECK_THROWS_AS(countmin_compress(b, 8, 3, Placement::identity), DomainError);

  CHECK(countmin_compress(a, 1, 5) == std::vector<std::uint32_t>{0});
  const auto h = countmin_compress(a, 64, 5);
  CHECK(std::is_sorted(h.begin(), h.end()));
  CHECK(std::adjacent_find(h.begin(), h.end()) == h.end());
  CHECK(h.size() <= a.size());
  for (auto x : h) CHECK(x < 64);
  CHECK(h == countmin_compress(a, 64, 5));
  CHECK_THROWS_AS(sketch_bucket(1, 0, 0), DomainError);
}

TEST_CASE("dot product is bounded below by buckets of shared dimensions") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto a = testing::random_set(rng, 60, 8);
    const auto b = testing::random_set(rng, 60, 8);
    const std::uint32_t s = 4 + static_cast<std::uint32_t>(rng() % 40);
    const std::uint64_t seed = rng();
    std::vector<std::uint32_t> shared;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(shared));
    std::set<std::uint32_t> shared_buckets;
    for (auto u : shared) shared_buckets.insert(sketch_bucket(u, s, seed));
    const auto ca = countmin_compress(a, s, seed);
    const auto cb = countmin_compress(b, s, seed);
    CHECK(sketch_dot(ca, cb) >= shared_buckets.size());
    CHECK(sketch_dot(ca, cb) <= std::min(ca.size(), cb.size()));
  }
}

TEST_CASE("expected union after hashing") {
  CHECK(expected_union_after_hash(0, 20, 2) == 0.0);
  CHECK(expected_union_after_hash(1, 20, 2) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(expected_union_after_hash(5, 20, 2) == doctest::Approx(4.0951).epsilon(1e-10));
  CHECK(expected_union_after_hash(5, 20, 1) == doctest::Approx(4.52438125).epsilon(1e-10));
  for (std::uint64_t t = 2; t < 40; ++t) {
    const double e = expected_union_after_hash(t, 20, 2);
    CHECK(e < static_cast<double>(t));
    CHECK(e <= 10.0);
    const double direct = 10.0 * (1.0 - std::pow(0.9, static_cast<double>(t)));
    CHECK(e == doctest::Approx(direct).epsilon(1e-12));
  }
  CHECK_THROWS_AS(expected_union_after_hash(3, 20, 0.5), DomainError);
  CHECK_THROWS_AS(expected_union_after_hash(3, 1, 2), DomainError);
}

TEST_CASE("empirical union matches balls in bins") {
  const std::uint32_t t = 12;
  const std::uint32_t bins = 10;
  const int trials = 20000;
  std::vector<DimId> dims(t);
  for (std::uint32_t i = 0; i < t; ++i) dims[i] = 1000 + 37 * i;
  double sum = 0;
  double sq = 0;
  for (int s = 0; s < trials; ++s) {
    const double occ = static_cast<double>(countmin_compress(dims, bins, static_cast<std::uint64_t>(s)).size());
    sum += occ;
    sq += occ * occ;
  }
  const double mean = sum / trials;
  const double se = std::sqrt((sq / trials - mean * mean) / trials);
  CHECK(testing::within_se(mean, expected_union_after_hash(t, 20, 2), se));
}

TEST_CASE("hash_dimensions") {
  const auto g = BipartiteGraph::from_lists(50, {{1, 2, 3}, {10, 20, 30, 40}, {}});
  const auto same = hash_dimensions(g, 50, 0, Placement::identity);
  for (NodeId v = 0; v < 3; ++v) {
    CHECK(std::vector<DimId>(same.neighbors(v).begin(), same.neighbors(v).end()) ==
          std::vector<DimId>(g.neighbors(v).begin(), g.neighbors(v).end()));
  }
  const auto one = hash_dimensions(g, 1, 9);
  CHECK(one.num_dims() == 1);
  CHECK(one.degree(0) == 1);
  CHECK(one.degree(1) == 1);
  CHECK(one.degree(2) == 0);
  const auto h = hash_dimensions(g, 7, 9);
  for (NodeId v = 0; v < 3; ++v) {
    CHECK(std::vector<std::uint32_t>(h.neighbors(v).begin(), h.neighbors(v).end()) ==
          countmin_compress(g.neighbors(v), 7, 9));
  }
}

TEST_CASE("recall hashing") {
  CHECK(recall_hash_buckets(20, 1) == 20);
  CHECK(recall_hash_buckets(20, 2) == 10);
  CHECK(recall_hash_buckets(20, 3) == 6);
  CHECK(recall_hash_buckets(1, 4) == 1);
  CHECK_THROWS_AS(recall_hash_buckets(10, 0.5), DomainError);

  const auto g = gen_uniform(300, 6, 40, 3);
  FilterParams params;
  params.alpha = 0.6;
  params.k = 256;
  params.seed = 4;
  const auto plain = fast_filter_all(g, {}, params.alpha, params.k, params.seed, 2);
  const auto ident = recall_hash_filter(g, params, 1.0, 2, 77, Placement::identity);
  REQUIRE(plain.bucket_count() == ident.bucket_count());
  for (std::size_t b = 0; b < plain.bucket_count(); ++b) {
    CHECK(plain.bucket_id(b) == ident.bucket_id(b));
    CHECK(std::equal(plain.bucket(b).begin(), plain.bucket(b).end(), ident.bucket(b).begin(),
                     ident.bucket(b).end()));
  }
  CHECK_THROWS_AS(recall_hash_filter(g, params, 0.5, 0, 1), DomainError);
}

TEST_CASE("stronger compression does not lose planted pairs") {
  const auto tau = Threshold::parse("0.5");
  const auto planted = gen_matching(2000, 10, tau, 5);
  FilterParams params;
  params.k = 256;
  params.alpha = solve_alpha(0.5, 10, params.k);
  params.seed = 6;
  auto rate = [&](double C) {
    std::uint64_t hit = 0;
    std::uint64_t total = 0;
    for (std::uint32_t it = 0; it < 4; ++it) {
      const auto out = recall_hash_filter(planted.graph, params, C, it, 100 + it);
      std::vector<std::vector<std::uint32_t>> idx(planted.graph.num_nodes());
      for (std::size_t j = 0; j < out.node_count(); ++j) {
        const auto s = out.indices_of(j);
        idx[out.node(j)].assign(s.begin(), s.end());
      }
      for (const auto& [u, v] : planted.pairs) {
        ++total;
        hit += testing::set_overlap(idx[u], idx[v]) > 0;
      }
    }
    return static_cast<double>(hit) / static_cast<double>(total);
  };
  const double r1 = rate(1.0);
  const double r2 = rate(2.0);
  CHECK(r2 >= r1 - 0.05);
}
