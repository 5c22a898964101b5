#include <gcn/constructions.hpp>
#include <gcn/matrix.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace gcn;

namespace {

// Random matrix with a prescribed rank bound: products of r-column and r-row factors.
Matrix<Rational> random_matrix(Rng& rng, std::size_t rows, std::size_t cols, std::size_t rank_bound) {
  Matrix<Rational> a(rows, rank_bound), b(rank_bound, cols), m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < rank_bound; ++k) a(i, k) = rng.rational(4);
  }
  for (std::size_t k = 0; k < rank_bound; ++k) {
    for (std::size_t j = 0; j < cols; ++j) b(k, j) = rng.rational(4);
  }
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      for (std::size_t k = 0; k < rank_bound; ++k) m(i, j) += a(i, k) * b(k, j);
    }
  }
  return m;
}

oracle::Rows rows_of(const Matrix<Rational>& m) {
  oracle::Rows r(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) r[i][j] = m(i, j);
  }
  return r;
}

}  // namespace

TEST(RankDet, AgreesWithGaussianOracle) {
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng.uniform(0, 6);
    const std::size_t cols = 1 + rng.uniform(0, 6);
    const std::size_t bound = 1 + rng.uniform(0, 5);
    const auto m = random_matrix(rng, rows, cols, bound);
    EXPECT_EQ(rank_det(m).rank, oracle::rank(rows_of(m)));
  }
}

TEST(RankDet, DeterminantAgreesWithCofactorExpansion) {
  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.uniform(0, 5);
    const auto m = random_matrix(rng, n, n, trial % 4 == 0 ? n - (n > 1 ? 1 : 0) : n);
    const auto rd = rank_det(m);
    ASSERT_TRUE(rd.det.has_value());
    EXPECT_EQ(*rd.det, oracle::det(rows_of(m)));
  }
}

TEST(RankDet, RowSwapsFlipSign) {
  Matrix<Rational> m(2, 2);
  m(0, 0) = 0;
  m(0, 1) = 1;
  m(1, 0) = 1;
  m(1, 1) = 0;
  EXPECT_EQ(*rank_det(m).det, Rational(-1));
  EXPECT_EQ(rank_det(Matrix<Rational>(0, 0)).rank, 0u);
  EXPECT_EQ(*rank_det(Matrix<Rational>(0, 0)).det, Rational(1));
  EXPECT_FALSE(rank_det(Matrix<Rational>(2, 3)).det.has_value());
}

TEST(Solve, LinearSystemsAndNullspace) {
  Rng rng(4);
  for (int trial = 0; trial < 80; ++trial) {
    const std::size_t rows = 1 + rng.uniform(0, 5);
    const std::size_t cols = 1 + rng.uniform(0, 5);
    const auto a = random_matrix(rng, rows, cols, 1 + rng.uniform(0, 4));
    std::vector<Rational> x(cols);
    for (auto& v : x) v = rng.rational(5);
    std::vector<Rational> b(rows);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) b[i] += a(i, j) * x[j];
    }
    const auto sol = solve_linear(a, b);
    ASSERT_TRUE(sol.has_value());
    for (std::size_t i = 0; i < rows; ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < cols; ++j) s += a(i, j) * (*sol)[j];
      EXPECT_EQ(s, b[i]);
    }
    const auto ns = nullspace(a);
    EXPECT_EQ(ns.size(), cols - oracle::rank(rows_of(a)));
    for (const auto& v : ns) {
      for (std::size_t i = 0; i < rows; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < cols; ++j) s += a(i, j) * v[j];
        EXPECT_EQ(s, 0);
      }
    }
  }
}

TEST(Solve, InconsistentAndSingular) {
  Matrix<Rational> a(2, 1);
  a(0, 0) = 1;
  a(1, 0) = 1;
  EXPECT_FALSE(solve_linear(a, {1, 2}).has_value());
  Matrix<Rational> s(2, 2);
  s(0, 0) = 1;
  s(0, 1) = 2;
  s(1, 0) = 2;
  s(1, 1) = 4;
  EXPECT_FALSE(solve_square(s, s).has_value());
  EXPECT_THROW(solve_linear(a, {1}), std::invalid_argument);
}

TEST(Solve, SquareInverse) {
  Rng rng(6);
  const auto a = random_matrix(rng, 5, 5, 5);
  Matrix<Rational> id(5, 5);
  for (std::size_t i = 0; i < 5; ++i) id(i, i) = 1;
  const auto inv = solve_square(a, id);
  ASSERT_TRUE(inv.has_value());
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < 5; ++k) s += a(i, k) * (*inv)(k, j);
      EXPECT_EQ(s, i == j ? 1 : 0);
    }
  }
  EXPECT_EQ(a.transposed().transposed(), a);
}
