#include "lsf/projective_plane.hpp"

#include <algorithm>
#include <array>

#include "lsf/error.hpp"

namespace lsf {

namespace {

// Smallest prime factor r of q and m with q = r^m, or m = 0 if q is not a
// prime power.
std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint32_t q) {
  if (q < 2) return {0, 0};
  std::uint32_t r = 2;
  while (q % r != 0) ++r;
  std::uint32_t m = 0;
  while (q % r == 0) {
    q /= r;
    ++m;
  }
  return q == 1 ? std::pair{r, m} : std::pair{r, 0U};
}

using Digits = std::array<std::uint32_t, 8>;

Digits to_digits(std::uint32_t x, std::uint32_t r, std::uint32_t m) {
  Digits d{};
  for (std::uint32_t i = 0; i < m; ++i) {
    d[i] = x % r;
    x /= r;
  }
  return d;
}

std::uint32_t from_digits(const Digits& d, std::uint32_t r, std::uint32_t m) {
  std::uint32_t x = 0;
  for (std::uint32_t i = m; i-- > 0;) x = x * r + d[i];
  return x;
}

// a·b modulo the monic polynomial x^m + f[m-1]x^(m-1) + ... + f[0].
std::uint32_t poly_mul(std::uint32_t a, std::uint32_t b, const Digits& f, std::uint32_t r, std::uint32_t m) {
  const Digits da = to_digits(a, r, m);
  const Digits db = to_digits(b, r, m);
  std::array<std::uint32_t, 16> prod{};
  for (std::uint32_t i = 0; i < m; ++i) {
    for (std::uint32_t j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % r;
  }
  for (std::uint32_t deg = 2 * m - 2; deg >= m; --deg) {
    const std::uint32_t c = prod[deg];
    prod[deg] = 0;
    for (std::uint32_t i = 0; i < m && c != 0; ++i) {
      prod[deg - m + i] = (prod[deg - m + i] + r - c * f[i] % r) % r;
    }
  }
  Digits out{};
  for (std::uint32_t i = 0; i < m; ++i) out[i] = prod[i];
  return from_digits(out, r, m);
}

}  // namespace

std::optional<GaloisField> GaloisField::of_order(std::uint32_t q) {
  const auto [r, m] = prime_power(q);
  if (m == 0 || q > 256) return std::nullopt;
  GaloisField f;
  f.q_ = q;
  f.r_ = r;
  f.add_.resize(static_cast<std::size_t>(q) * q);
  f.mul_.resize(static_cast<std::size_t>(q) * q);
  for (std::uint32_t a = 0; a < q; ++a) {
    const Digits da = to_digits(a, r, m);
    for (std::uint32_t b = 0; b < q; ++b) {
      const Digits db = to_digits(b, r, m);
      Digits s{};
      for (std::uint32_t i = 0; i < m; ++i) s[i] = (da[i] + db[i]) % r;
      f.add_[a * q + b] = static_cast<std::uint8_t>(from_digits(s, r, m));
    }
  }
  if (m == 1) {
    for (std::uint32_t a = 0; a < q; ++a) {
      for (std::uint32_t b = 0; b < q; ++b) f.mul_[a * q + b] = static_cast<std::uint8_t>(a * b % q);
    }
    return f;
  }
  // Try monic polynomials until every nonzero element has an inverse.
  for (std::uint32_t cand = 0; cand < q; ++cand) {
    const Digits poly = to_digits(cand, r, m);
    if (poly[0] == 0) continue;
    bool field = true;
    for (std::uint32_t a = 0; a < q && field; ++a) {
      bool has_inverse = a == 0;
      for (std::uint32_t b = 0; b < q; ++b) {
        const std::uint32_t c = poly_mul(a, b, poly, r, m);
        f.mul_[a * q + b] = static_cast<std::uint8_t>(c);
        has_inverse = has_inverse || c == 1;
      }
      field = has_inverse;
    }
    if (field) return f;
  }
  return std::nullopt;
}

std::optional<ProjectivePlane> ProjectivePlane::of_order(std::uint32_t q) {
  ProjectivePlane plane;
  plane.q_ = q;
  if (q == 1) {
    plane.points_ = {0, 1, 1, 2, 0, 2};
    return plane;
  }
  const auto field = GaloisField::of_order(q);
  if (!field) return std::nullopt;
  const GaloisField& F = *field;

  // Normalized homogeneous coordinates: (1,a,b), (0,1,a), (0,0,1).
  std::vector<std::array<std::uint32_t, 3>> pts;
  pts.reserve(plane.size());
  for (std::uint32_t a = 0; a < q; ++a) {
    for (std::uint32_t b = 0; b < q; ++b) pts.push_back({1, a, b});
  }
  for (std::uint32_t a = 0; a < q; ++a) pts.push_back({0, 1, a});
  pts.push_back({0, 0, 1});

  plane.points_.reserve(static_cast<std::size_t>(plane.size()) * (q + 1));
  for (const auto& l : pts) {
    std::size_t found = 0;
    for (std::uint32_t i = 0; i < pts.size(); ++i) {
      const auto& x = pts[i];
      const std::uint32_t dot = F.add(F.add(F.mul(l[0], x[0]), F.mul(l[1], x[1])), F.mul(l[2], x[2]));
      if (dot == 0) {
        plane.points_.push_back(i);
        ++found;
      }
    }
    if (found != q + 1) throw std::logic_error("projective plane: bad incidence count");
  }
  return plane;
}

std::uint32_t ProjectivePlane::meet(std::uint32_t l1, std::uint32_t l2) const {
  if (l1 == l2) throw DomainError("ProjectivePlane::meet: lines must differ");
  const auto a = points_on(l1);
  const auto b = points_on(l2);
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return *i;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  throw std::logic_error("projective plane: lines do not meet");
}

}  // namespace lsf
