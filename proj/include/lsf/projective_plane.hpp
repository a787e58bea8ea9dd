#pragma once

// Finite fields of prime-power order and the projective planes over them.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace lsf {

/// GF(q) for a prime power q <= 256. Elements are 0..q-1, written as base-r
/// digit vectors of polynomials modulo an irreducible polynomial.
class GaloisField {
 public:
  /// nullopt if q is not a prime power or exceeds 256.
  static std::optional<GaloisField> of_order(std::uint32_t q);

  std::uint32_t order() const noexcept { return q_; }
  std::uint32_t characteristic() const noexcept { return r_; }
  std::uint8_t add(std::uint32_t a, std::uint32_t b) const { return add_[a * q_ + b]; }
  std::uint8_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[a * q_ + b]; }

 private:
  GaloisField() = default;
  std::uint32_t q_ = 0;
  std::uint32_t r_ = 0;
  std::vector<std::uint8_t> add_;
  std::vector<std::uint8_t> mul_;
};

/// Projective plane of order q: q²+q+1 points and as many lines, q+1 points
/// per line, every two lines meet in exactly one point. Order 1 is the
/// triangle (3 points, 3 lines of 2 points).
class ProjectivePlane {
 public:
  /// nullopt unless q == 1 or q is a prime power <= 256.
  static std::optional<ProjectivePlane> of_order(std::uint32_t q);

  std::uint32_t order() const noexcept { return q_; }
  std::uint32_t size() const noexcept { return q_ * q_ + q_ + 1; }  // points == lines

  /// Points of line l, ascending.
  std::span<const std::uint32_t> points_on(std::uint32_t l) const {
    return {points_.data() + static_cast<std::size_t>(l) * (q_ + 1), q_ + 1};
  }
  /// The unique common point of two distinct lines.
  std::uint32_t meet(std::uint32_t l1, std::uint32_t l2) const;

 private:
  ProjectivePlane() = default;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> points_;  // size() rows of q+1
};

}  // namespace lsf
