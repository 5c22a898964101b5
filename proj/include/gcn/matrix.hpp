#pragma once

#include <gcn/rational.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gcn {

/// Row-major dense matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  /// Copy of the listed rows, in order.
  Matrix select_rows(const std::vector<std::size_t>& keep) const {
    Matrix out(keep.size(), cols_);
    for (std::size_t r = 0; r < keep.size(); ++r) {
      for (std::size_t j = 0; j < cols_; ++j) out(r, j) = (*this)(keep[r], j);
    }
    return out;
  }

  Matrix transposed() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

struct RankDet {
  std::size_t rank = 0;
  std::optional<Rational> det;  // square matrices only
};

/// Exact rank (and determinant for square input). Each row is scaled to integers by
/// the lcm of its denominators, then reduced by fraction-free (Bareiss) elimination.
inline RankDet rank_det(const Matrix<Rational>& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  Matrix<Integer> work(rows, cols);
  Integer scale = 1;
  for (std::size_t i = 0; i < rows; ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < cols; ++j) work(i, j) = m(i, j).get_num() * (l / m(i, j).get_den());
    scale *= l;
  }

  std::size_t rank = 0;
  int sign = 1;
  Integer prev = 1;
  Integer tmp;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && sgn(work(pivot, col)) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) {
      work.swap_rows(pivot, rank);
      sign = -sign;
    }
    const Integer& p = work(rank, col);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        tmp = p * work(i, j) - work(i, col) * work(rank, j);
        mpz_divexact(work(i, j).get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      work(i, col) = 0;
    }
    prev = p;
    ++rank;
  }

  RankDet out;
  out.rank = rank;
  if (rows == cols) {
    if (rank < rows) {
      out.det = Rational(0);
    } else if (rows == 0) {
      out.det = Rational(1);
    } else {
      Rational d(work(rows - 1, cols - 1) * sign, scale);
      d.canonicalize();
      out.det = d;
    }
  }
  return out;
}

namespace detail {

// In-place reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref(Matrix<Rational>& m, std::size_t active_cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < active_cols && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, row);
    const Rational inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      const Rational f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

/// Particular solution of A x = b (free variables set to zero), or nullopt if inconsistent.
inline std::optional<std::vector<Rational>> solve_linear(const Matrix<Rational>& a, const std::vector<Rational>& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_linear: size mismatch");
  Matrix<Rational> aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const auto pivots = detail::rref(aug, a.cols());
  for (std::size_t i = pivots.size(); i < aug.rows(); ++i) {
    if (!is_zero(aug(i, a.cols()))) return std::nullopt;
  }
  std::vector<Rational> x(a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, a.cols());
  return x;
}

/// Solves A X = B column-wise for invertible square A; nullopt when A is singular.
inline std::optional<Matrix<Rational>> solve_square(const Matrix<Rational>& a, const Matrix<Rational>& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.rows() != n) throw std::invalid_argument("solve_square: size mismatch");
  Matrix<Rational> aug(n, n + b.cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) aug(i, n + j) = b(i, j);
  }
  if (detail::rref(aug, n).size() != n) return std::nullopt;
  Matrix<Rational> x(n, b.cols());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) = aug(i, n + j);
  }
  return x;
}

/// Basis of {x : A x = 0}; one vector per free column, with that column set to 1.
inline std::vector<std::vector<Rational>> nullspace(const Matrix<Rational>& a) {
  Matrix<Rational> m = a;
  const auto pivots = detail::rref(m, a.cols());
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(a.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace gcn
