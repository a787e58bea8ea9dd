#include "lsf/gf2.hpp"

#include <bit>
#include <utility>

#include "lsf/error.hpp"

namespace lsf::gf2 {

BitMatrix::BitMatrix(unsigned cols) : cols_(cols) {
  if (cols > kMaxCols) throw DomainError("BitMatrix: at most 32 columns supported");
}

BitMatrix::BitMatrix(unsigned cols, std::vector<Row> rows) : BitMatrix(cols) {
  for (Row r : rows) {
    if (r & ~column_mask(cols_)) throw DomainError("BitMatrix: row has bits beyond cols");
  }
  rows_ = std::move(rows);
}

void BitMatrix::push_row(Row row) {
  if (row & ~column_mask(cols_)) throw DomainError("BitMatrix: row has bits beyond cols");
  rows_.push_back(row);
}

AffineSystem::AffineSystem(BitMatrix a_, std::vector<std::uint8_t> b_)
    : a(std::move(a_)), b(std::move(b_)) {
  if (a.rows() != b.size()) throw DomainError("AffineSystem: length(b) != rows(A)");
}

SolutionSpace eliminate(const AffineSystem& sys) {
  const unsigned cols = sys.a.cols();
  SolutionSpace out;
  out.cols = cols;

  // Augmented rows: coefficient bits in the low word, right-hand side at bit 32.
  constexpr std::uint64_t kRhs = std::uint64_t{1} << 32;
  std::vector<std::uint64_t> rows(sys.a.rows());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    rows[r] = sys.a.row(r) | (sys.b[r] ? kRhs : 0);
  }

  // Gauss-Jordan with pivots taken in ascending column order.
  std::size_t rank = 0;
  for (unsigned c = 0; c < cols && rank < rows.size(); ++c) {
    const std::uint64_t bit = std::uint64_t{1} << c;
    std::size_t piv = rank;
    while (piv < rows.size() && !(rows[piv] & bit)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && (rows[r] & bit)) rows[r] ^= rows[rank];
    }
    out.pivot_cols.push_back(c);
    ++rank;
  }
  out.rank = static_cast<unsigned>(rank);

  for (std::size_t r = rank; r < rows.size(); ++r) {
    if (rows[r] & kRhs) {
      out.consistent = false;
      break;
    }
  }

  Row pivot_mask = 0;
  for (unsigned c : out.pivot_cols) pivot_mask |= Row{1} << c;
  for (unsigned c = 0; c < cols; ++c) {
    if (!((pivot_mask >> c) & 1U)) out.free_cols.push_back(c);
  }
  // A·i = b over GF(2) (the "+ b = 0" form is the same equation).
  if (out.consistent) {
    for (std::size_t r = 0; r < rank; ++r) {
      if (rows[r] & kRhs) out.particular |= Row{1} << out.pivot_cols[r];
    }
  }
  out.null_basis.reserve(out.free_cols.size());
  for (unsigned f : out.free_cols) {
    Row v = Row{1} << f;
    for (std::size_t r = 0; r < rank; ++r) {
      if ((rows[r] >> f) & 1U) v |= Row{1} << out.pivot_cols[r];
    }
    out.null_basis.push_back(v);
  }
  return out;
}

void enumerate_solutions(const SolutionSpace& space, std::vector<std::uint32_t>& out) {
  if (!space.consistent) return;
  const std::size_t base = out.size();
  const std::uint64_t n = space.count();
  out.resize(base + n);
  std::uint32_t* sol = out.data() + base;
  sol[0] = space.particular;
  // Counting c upward walks the solutions in ascending order: bit j of c
  // decides the free column free_cols[j], which is the leading bit of
  // null_basis[j].
  for (std::uint64_t c = 1; c < n; ++c) {
    sol[c] = sol[c & (c - 1)] ^ space.null_basis[std::countr_zero(c)];
  }
}

std::vector<std::uint32_t> enumerate_solutions(const SolutionSpace& space) {
  std::vector<std::uint32_t> out;
  enumerate_solutions(space, out);
  return out;
}

bool satisfies(const AffineSystem& sys, std::uint32_t i) {
  for (std::size_t r = 0; r < sys.a.rows(); ++r) {
    const unsigned parity = std::popcount(sys.a.row(r) & i) & 1U;
    if (parity != sys.b[r]) return false;
  }
  return true;
}

}  // namespace lsf::gf2
