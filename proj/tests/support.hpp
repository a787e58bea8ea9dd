#pragma once

// Independent oracles and small helpers shared by the tests.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

namespace testing {

/// |a ∩ b| through the standard library.
inline std::size_t set_overlap(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out.size();
}

/// cosine >= num/den decided in long double with a margin check; exact for
/// the small integers used in tests.
inline bool similar_at_least(std::size_t inter, std::size_t du, std::size_t dv, std::uint64_t num,
                             std::uint64_t den) {
  // inter/sqrt(du dv) >= num/den  <=>  inter^2 den^2 >= num^2 du dv
  const long double lhs = static_cast<long double>(inter) * inter * den * den;
  const long double rhs = static_cast<long double>(num) * num * du * dv;
  return lhs >= rhs;
}

/// Random strictly ascending subset of [0, m) of size d.
inline std::vector<std::uint32_t> random_set(std::mt19937_64& rng, std::uint32_t m, std::uint32_t d) {
  std::vector<std::uint32_t> all(m);
  for (std::uint32_t i = 0; i < m; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(d);
  std::sort(all.begin(), all.end());
  return all;
}

/// |x - mean| <= z·se.
inline bool within_se(double x, double mean, double se, double z = 3.0) {
  return std::abs(x - mean) <= z * se;
}

/// Binomial standard error of a proportion p over n trials.
inline double binom_se(double p, double n) { return std::sqrt(p * (1.0 - p) / n); }

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("lsfjoin_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace testing
