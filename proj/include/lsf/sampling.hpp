#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_set>
#include <vector>

#include "lsf/prf.hpp"

namespace lsf {

/// m distinct values from [0, n), ascending (Floyd's algorithm).
template <typename T = std::uint32_t>
std::vector<T> sample_without_replacement(std::uint64_t n, std::uint64_t m, PrfStream& rng) {
  std::vector<T> out;
  out.reserve(m);
  if (m * 4 >= n) {
    // Dense case: partial Fisher-Yates over the full range.
    std::vector<T> all(n);
    for (std::uint64_t i = 0; i < n; ++i) all[i] = static_cast<T>(i);
    for (std::uint64_t i = 0; i < m; ++i) {
      std::swap(all[i], all[i + rng.below(n - i)]);
    }
    out.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(m));
  } else {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(m * 2);
    for (std::uint64_t j = n - m; j < n; ++j) {
      std::uint64_t t = rng.below(j + 1);
      if (!seen.insert(t).second) {
        seen.insert(j);
        t = j;
      }
      out.push_back(static_cast<T>(t));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lsf
