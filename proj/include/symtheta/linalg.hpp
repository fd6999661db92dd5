#pragma once

// Small dense exact linear algebra kernel: Gaussian elimination over Q with
// no rounding anywhere.  Pivots are chosen among the nonzero candidates of
// the current column by smallest total bit length (numerator plus
// denominator), which keeps intermediate entries from blowing up on the
// structured matrices this library produces.

#include "symtheta/rational.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace symtheta {

/// Raised when an exactly-solved linear system has no solution.  Kept
/// distinct from std::invalid_argument so callers can tell "you passed
/// mismatched shapes" from "the mathematics refused".
class InconsistentSystem : public std::domain_error {
public:
  explicit InconsistentSystem(const std::string& what) : std::domain_error(what) {}
};

class Mat {
public:
  Mat() : rows_(0), cols_(0) {}
  Mat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Mat identity(size_t n) {
    Mat m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Rational& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Rational& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  bool operator==(const Mat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  Mat transposed() const {
    Mat t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Mat operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Mat: product shape mismatch");
    Mat r(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t k = 0; k < cols_; ++k) {
        const Rational& x = at(i, k);
        if (x.is_zero()) continue;
        for (size_t j = 0; j < o.cols_; ++j) {
          const Rational& y = o.at(k, j);
          if (!y.is_zero()) r.at(i, j) += x * y;
        }
      }
    return r;
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

private:
  size_t rows_, cols_;
  std::vector<Rational> a_;
};

namespace detail {

// In-place forward elimination to reduced row echelon form of [m | rhs]
// (rhs optional).  Returns the pivot column of each pivot row in order.
inline std::vector<size_t> rref(Mat& m, Mat* rhs) {
  if (rhs && rhs->rows() != m.rows())
    throw std::invalid_argument("rref: right-hand side row count mismatch");
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    // Bit-length pivot selection within this column.
    size_t best = m.rows();
    size_t best_bits = 0;
    for (size_t i = row; i < m.rows(); ++i) {
      const Rational& x = m.at(i, col);
      if (x.is_zero()) continue;
      size_t bits = x.bit_length();
      if (best == m.rows() || bits < best_bits) best = i, best_bits = bits;
    }
    if (best == m.rows()) continue;
    if (best != row) {
      for (size_t j = col; j < m.cols(); ++j) std::swap(m.at(row, j), m.at(best, j));
      if (rhs)
        for (size_t j = 0; j < rhs->cols(); ++j) std::swap(rhs->at(row, j), rhs->at(best, j));
    }
    Rational inv = m.at(row, col).inv();
    for (size_t j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
    if (rhs)
      for (size_t j = 0; j < rhs->cols(); ++j) rhs->at(row, j) *= inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == row) continue;
      Rational f = m.at(i, col);
      if (f.is_zero()) continue;
      for (size_t j = col; j < m.cols(); ++j) {
        if (!m.at(row, j).is_zero()) m.at(i, j) -= f * m.at(row, j);
      }
      if (rhs)
        for (size_t j = 0; j < rhs->cols(); ++j)
          if (!rhs->at(row, j).is_zero() || !f.is_zero()) rhs->at(i, j) -= f * rhs->at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

inline size_t rank(Mat m) { return detail::rref(m, nullptr).size(); }

/// Solves A X = B exactly.  Free variables (if any) are set to zero, so the
/// solution is unique exactly when A has full column rank.  Throws
/// InconsistentSystem when B is outside the column space.
inline Mat solve(Mat a, Mat b) {
  if (a.rows() != b.rows())
    throw std::invalid_argument("solve: dimension mismatch between matrix and right-hand side");
  std::vector<size_t> pivots = detail::rref(a, &b);
  // Rows of [A|B] beyond rank(A) must have vanished on the B side too.
  for (size_t i = pivots.size(); i < a.rows(); ++i)
    for (size_t j = 0; j < b.cols(); ++j)
      if (!b.at(i, j).is_zero())
        throw InconsistentSystem("inconsistent system: right-hand side outside column space");
  Mat x(a.cols(), b.cols());
  for (size_t r = 0; r < pivots.size(); ++r)
    for (size_t j = 0; j < b.cols(); ++j) x.at(pivots[r], j) = b.at(r, j);
  return x;
}

/// Columns form a basis of the null space of A.
inline Mat kernel(Mat a) {
  size_t n = a.cols();
  std::vector<size_t> pivots = detail::rref(a, nullptr);
  std::vector<bool> is_pivot(n, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<size_t> free_cols;
  for (size_t c = 0; c < n; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Mat k(n, free_cols.size());
  for (size_t fi = 0; fi < free_cols.size(); ++fi) {
    size_t fc = free_cols[fi];
    k.at(fc, fi) = 1;
    for (size_t r = 0; r < pivots.size(); ++r) k.at(pivots[r], fi) = -a.at(r, fc);
  }
  return k;
}

inline Rational determinant(Mat m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  // Fraction-free enough for our sizes: track row swaps and pivot scaling.
  size_t n = m.rows();
  Rational det = 1;
  for (size_t col = 0; col < n; ++col) {
    size_t best = n;
    size_t best_bits = 0;
    for (size_t i = col; i < n; ++i) {
      if (m.at(i, col).is_zero()) continue;
      size_t bits = m.at(i, col).bit_length();
      if (best == n || bits < best_bits) best = i, best_bits = bits;
    }
    if (best == n) return 0;
    if (best != col) {
      for (size_t j = col; j < n; ++j) std::swap(m.at(col, j), m.at(best, j));
      det = -det;
    }
    const Rational pivot = m.at(col, col);
    det *= pivot;
    for (size_t i = col + 1; i < n; ++i) {
      Rational f = m.at(i, col) / pivot;
      if (f.is_zero()) continue;
      for (size_t j = col; j < n; ++j)
        if (!m.at(col, j).is_zero()) m.at(i, j) -= f * m.at(col, j);
    }
  }
  return det;
}

inline Mat inverse(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
  Mat a = m;
  Mat id = Mat::identity(m.rows());
  std::vector<size_t> pivots = detail::rref(a, &id);
  if (pivots.size() != m.rows()) throw InconsistentSystem("inverse: matrix is singular");
  return id;
}

}  // namespace symtheta
