#pragma once

#include <vector>

#include "trisign/errors.hpp"
#include "trisign/rational.hpp"

namespace trisign {

// Fraction-free (Bareiss) determinant. Valid over any scalar with exact
// division; every interior division is exact by the Bareiss identity.
template <typename S>
S det_bareiss(Mat<S> a) {
  if (a.rows() != a.cols()) fail(ErrorKind::InvalidInput, "determinant of non-square matrix");
  const Eigen::Index n = a.rows();
  if (n == 0) return S(1);
  S prev(1);
  int sign = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == S(0)) {
      Eigen::Index r = k + 1;
      while (r < n && a(r, k) == S(0)) ++r;
      if (r == n) return S(0);
      a.row(k).swap(a.row(r));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j)
        a(i, j) = (a(k, k) * a(i, j) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  S d = a(n - 1, n - 1);
  return sign < 0 ? S(-d) : d;
}

inline Rational det_exact(const RatMat& m) { return det_bareiss<Rational>(m); }

// Reduced row echelon form in place; returns the pivot column indices.
inline std::vector<Eigen::Index> rref_exact(RatMat& m) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r)
      if (m(r, col) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    m.row(row).swap(m.row(piv));
    m.row(row) /= m(row, col);
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (r != row && m(r, col) != 0) m.row(r) -= m(r, col) * m.row(row);
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline Eigen::Index rank_exact(RatMat m) { return static_cast<Eigen::Index>(rref_exact(m).size()); }

// Basis of the right null space; empty iff full column rank.
inline std::vector<RatVec> kernel_exact(RatMat m) {
  const Eigen::Index cols = m.cols();
  const auto pivots = rref_exact(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<RatVec> basis;
  for (Eigen::Index freec = 0; freec < cols; ++freec) {
    if (is_pivot[freec]) continue;
    RatVec v = RatVec::Zero(cols);
    v(freec) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v(pivots[r]) = -m(r, freec);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Unique solution of a square nonsingular system; nullopt when singular or
// (for rectangular input) inconsistent/underdetermined.
inline std::optional<RatVec> solve_exact(const RatMat& a, const RatVec& b) {
  RatMat aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  const auto pivots = rref_exact(aug);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;  // inconsistent
  if (static_cast<Eigen::Index>(pivots.size()) != a.cols()) return std::nullopt;
  RatVec x = RatVec::Zero(a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x(pivots[r]) = aug(r, a.cols());
  return x;
}

}  // namespace trisign
