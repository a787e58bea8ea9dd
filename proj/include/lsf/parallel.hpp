#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace lsf {

/// Runs body(begin, end, worker) over [0, n) in chunks handed out
/// dynamically to `threads` workers. With threads <= 1 everything runs on
/// the calling thread as worker 0. Callers that need deterministic output
/// must merge per-worker results order-independently.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, std::size_t chunk, Body&& body) {
  chunk = std::max<std::size_t>(chunk, 1);
  if (threads <= 1 || n <= chunk) {
    if (n > 0) body(std::size_t{0}, n, 0U);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&](unsigned w) {
    for (;;) {
      const std::size_t b = next.fetch_add(chunk);
      if (b >= n) break;
      body(b, std::min(n, b + chunk), w);
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads - 1);
  for (unsigned w = 1; w < threads; ++w) pool.emplace_back(worker, w);
  worker(0);
}

}  // namespace lsf
