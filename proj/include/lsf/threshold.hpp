#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace lsf {

/// Cosine threshold tau held as an exact decimal fraction num/den.
///
/// accepts() decides |A∩B| / sqrt(|A|·|B|) >= tau with integer arithmetic
/// (|A∩B|² · den² >= num² · |A| · |B|), so pairs sitting exactly on the
/// threshold are classified the same way on every platform.
class Threshold {
 public:
  /// Decimal literal such as "0.1", "1", ".25". At most 9 fractional digits;
  /// the value must lie in (0, 1].
  static Threshold parse(std::string_view text);

  /// Shortest round-trip decimal of `tau`, then parse().
  static Threshold from_double(double tau);

  std::uint64_t numerator() const noexcept { return num_; }
  std::uint64_t denominator() const noexcept { return den_; }
  double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  const std::string& text() const noexcept { return text_; }

  bool accepts(std::uint64_t intersection, std::uint64_t deg_u, std::uint64_t deg_v) const;

  /// Smallest intersection size accepted for the given degrees.
  std::uint64_t min_intersection(std::uint64_t deg_u, std::uint64_t deg_v) const;

  /// ceil(tau · d), exact.
  std::uint64_t ceil_times(std::uint64_t d) const;

 private:
  Threshold(std::uint64_t num, std::uint64_t den, std::string text)
      : num_(num), den_(den), text_(std::move(text)) {}

  std::uint64_t num_;
  std::uint64_t den_;
  std::string text_;
};

}  // namespace lsf
