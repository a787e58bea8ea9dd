#include "lsf/threshold.hpp"

#include <charconv>
#include <cmath>

#include "lsf/error.hpp"

namespace lsf {

__extension__ using u128 = unsigned __int128;

Threshold Threshold::parse(std::string_view text) {
  const std::string original(text);
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  bool seen_dot = false;
  bool seen_digit = false;
  int frac_digits = 0;
  for (char ch : text) {
    if (ch == '.') {
      if (seen_dot) throw DomainError("threshold: malformed decimal '" + original + "'");
      seen_dot = true;
      continue;
    }
    if (ch < '0' || ch > '9') throw DomainError("threshold: malformed decimal '" + original + "'");
    seen_digit = true;
    if (seen_dot) {
      if (++frac_digits > 9) throw DomainError("threshold: more than 9 fractional digits");
      den *= 10;
    }
    num = num * 10 + static_cast<std::uint64_t>(ch - '0');
    if (num > 10'000'000'000ULL) throw DomainError("threshold: value out of range");
  }
  if (!seen_digit) throw DomainError("threshold: malformed decimal '" + original + "'");
  if (num == 0 || num > den) throw DomainError("threshold must lie in (0, 1], got '" + original + "'");
  return Threshold(num, den, original);
}

Threshold Threshold::from_double(double tau) {
  if (!(tau > 0.0) || tau > 1.0) throw DomainError("threshold must lie in (0, 1]");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, tau, std::chars_format::fixed);
  std::string text(buf, res.ptr);
  if (auto dot = text.find('.'); dot != std::string::npos && text.size() - dot - 1 > 9) {
    res = std::to_chars(buf, buf + sizeof buf, tau, std::chars_format::fixed, 9);
    text.assign(buf, res.ptr);
    while (text.back() == '0') text.pop_back();
  }
  return parse(text);
}

bool Threshold::accepts(std::uint64_t intersection, std::uint64_t deg_u, std::uint64_t deg_v) const {
  const u128 lhs = u128{intersection} * intersection * den_ * den_;
  const u128 rhs = u128{num_} * num_ * deg_u * deg_v;
  return lhs >= rhs;
}

std::uint64_t Threshold::min_intersection(std::uint64_t deg_u, std::uint64_t deg_v) const {
  const double guess = std::ceil(value() * std::sqrt(static_cast<double>(deg_u) * deg_v));
  std::uint64_t x = guess > 2.0 ? static_cast<std::uint64_t>(guess) - 2 : 0;
  while (!accepts(x, deg_u, deg_v)) ++x;
  return x;
}

std::uint64_t Threshold::ceil_times(std::uint64_t d) const {
  const u128 p = u128{num_} * d;
  return static_cast<std::uint64_t>((p + den_ - 1) / den_);
}

}  // namespace lsf
