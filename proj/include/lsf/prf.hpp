#pragma once

#include <cstdint>

namespace lsf {

/// Version of the keyed hash below. Survival sets, generated graphs and
/// samples depend on every output bit, so changing the construction requires
/// bumping this value (it is written into run manifests).
inline constexpr std::uint32_t kPrfVersion = 1;

/// Domain separation tags. Each consumer of randomness uses its own tag so
/// that streams never alias.
enum class Domain : std::uint64_t {
  iteration = 1,
  row = 2,
  priority = 3,
  dither = 4,
  naive = 5,
  assignment = 6,
  sample = 7,
  generator = 8,
  sketch = 9,
  hash_join = 10,
  subseed = 11,
};

/// SipHash-2-4 keyed by `key` over the little-endian tuple (domain, a, b, c).
std::uint64_t prf(std::uint64_t key, Domain domain, std::uint64_t a,
                  std::uint64_t b = 0, std::uint64_t c = 0);

/// Uniform double in [0, 1) from the top 53 bits.
inline double to_unit(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

__extension__ using uint128 = unsigned __int128;

/// Uniform integer in [0, n) by multiply-high.
inline std::uint64_t to_range(std::uint64_t h, std::uint64_t n) {
  return static_cast<std::uint64_t>((static_cast<uint128>(h) * n) >> 64);
}

/// Counter-mode stream over prf(). Deterministic and platform independent,
/// unlike the standard distributions.
class PrfStream {
 public:
  PrfStream(std::uint64_t key, Domain domain, std::uint64_t stream = 0)
      : key_(key), domain_(domain), stream_(stream) {}

  std::uint64_t next() { return prf(key_, domain_, stream_, counter_++); }
  std::uint64_t below(std::uint64_t n) { return to_range(next(), n); }
  double unit() { return to_unit(next()); }

 private:
  std::uint64_t key_;
  Domain domain_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

/// Derives an independent sub-seed from a user seed, e.g. for generators or
/// samplers that must not share randomness with the filter.
inline std::uint64_t subseed(std::uint64_t seed, std::uint64_t tag) {
  return prf(seed, Domain::subseed, tag);
}

}  // namespace lsf
