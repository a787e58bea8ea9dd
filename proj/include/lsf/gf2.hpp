#pragma once

// Small affine systems A·i + b = 0 over GF(2), with at most 32 unknowns.
//
// Column j of A multiplies bit j (value 2^j) of the unknown i, so a solution
// is read directly as an integer repetition index in [0, 2^cols).

#include <cstdint>
#include <span>
#include <vector>

namespace lsf::gf2 {

inline constexpr unsigned kMaxCols = 32;

using Row = std::uint32_t;

constexpr Row column_mask(unsigned cols) {
  return cols >= 32 ? ~Row{0} : (Row{1} << cols) - 1;
}

class BitMatrix {
 public:
  explicit BitMatrix(unsigned cols);
  BitMatrix(unsigned cols, std::vector<Row> rows);

  unsigned cols() const noexcept { return cols_; }
  std::size_t rows() const noexcept { return rows_.size(); }
  Row row(std::size_t r) const { return rows_[r]; }
  bool get(std::size_t r, unsigned c) const { return (rows_[r] >> c) & 1U; }
  std::span<const Row> data() const noexcept { return rows_; }

  /// Throws DomainError if `row` has bits at or beyond cols().
  void push_row(Row row);
  void reserve(std::size_t n) { rows_.reserve(n); }

 private:
  unsigned cols_;
  std::vector<Row> rows_;
};

struct AffineSystem {
  AffineSystem(BitMatrix a, std::vector<std::uint8_t> b);
  explicit AffineSystem(unsigned cols) : a(cols) {}

  void push(Row row, bool rhs) {
    a.push_row(row);
    b.push_back(rhs ? 1 : 0);
  }

  BitMatrix a;
  std::vector<std::uint8_t> b;
};

/// Reduced description of {i : A·i + b = 0}.
///
/// The null-space basis holds one vector per free column, ordered by free
/// column; vector j has its highest set bit at free_cols[j] and no other
/// vector touches that bit. The particular solution is zero on all free
/// columns. Together this makes the solution set enumerable in ascending
/// order without sorting.
struct SolutionSpace {
  unsigned cols = 0;
  bool consistent = true;
  unsigned rank = 0;
  std::vector<unsigned> pivot_cols;
  std::vector<unsigned> free_cols;
  Row particular = 0;
  std::vector<Row> null_basis;

  /// 2^(cols - rank) if consistent, else 0.
  std::uint64_t count() const noexcept {
    return consistent ? std::uint64_t{1} << (cols - rank) : 0;
  }
};

SolutionSpace eliminate(const AffineSystem& sys);

/// All solutions, ascending.
std::vector<std::uint32_t> enumerate_solutions(const SolutionSpace& space);

/// Appends all solutions, ascending, to `out`.
void enumerate_solutions(const SolutionSpace& space, std::vector<std::uint32_t>& out);

/// True if A·i + b = 0. Reference check used by tests and debugging.
bool satisfies(const AffineSystem& sys, std::uint32_t i);

}  // namespace lsf::gf2
