#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spgomp/matrix.hpp"
#include "spgomp/sensing.hpp"

using spgomp::DimensionError;
using spgomp::linalg::DenseMatrix;
using spgomp::linalg::DenseVector;

TEST(DenseMatrix, IndexingIsRowMajor) {
  DenseMatrix a(2, 3);
  a(0, 0) = 1.0;
  a(0, 2) = 2.0;
  a(1, 1) = 3.0;
  EXPECT_EQ(a.data[0], 1.0);
  EXPECT_EQ(a.data[2], 2.0);
  EXPECT_EQ(a.data[4], 3.0);
}

TEST(DenseOps, DotAndNorms) {
  const DenseVector a{1.0, -2.0, 3.0};
  const DenseVector b{4.0, 5.0, -6.0};
  EXPECT_DOUBLE_EQ(spgomp::linalg::dot(a, b), 4.0 - 10.0 - 18.0);
  EXPECT_DOUBLE_EQ(spgomp::linalg::norm2({3.0, 4.0}), 5.0);
  EXPECT_DOUBLE_EQ(spgomp::linalg::norm_inf(a), 3.0);
  EXPECT_THROW(spgomp::linalg::dot(a, {1.0}), DimensionError);
}

TEST(DenseOps, MultiplyMatchesEigen) {
  const DenseMatrix a = spgomp::linalg::gaussian_sensing_matrix(7, 5, 123);
  DenseVector x{0.5, -1.5, 2.0, 0.0, 3.25};
  const DenseVector y = spgomp::linalg::multiply(a, x);
  const Eigen::VectorXd expect = oracles::eig_mat(a) * oracles::eig_vec(x);
  ASSERT_EQ(y.size(), 7u);
  for (std::size_t i = 0; i < y.size(); ++i) EXPECT_NEAR(y[i], expect(i), 1e-14);
}

TEST(DenseOps, TransposeMultiplyMatchesEigen) {
  const DenseMatrix a = spgomp::linalg::gaussian_sensing_matrix(6, 9, 321);
  DenseVector v{1.0, 2.0, -3.0, 4.0, -5.0, 6.0};
  const DenseVector w = spgomp::linalg::transpose_multiply(a, v);
  const Eigen::VectorXd expect = oracles::eig_mat(a).transpose() * oracles::eig_vec(v);
  ASSERT_EQ(w.size(), 9u);
  for (std::size_t i = 0; i < w.size(); ++i) EXPECT_NEAR(w[i], expect(i), 1e-14);
}

TEST(DenseOps, ColumnExtraction) {
  DenseMatrix a(2, 2);
  a(0, 0) = 1.0;
  a(0, 1) = 2.0;
  a(1, 0) = 3.0;
  a(1, 1) = 4.0;
  const DenseVector c = spgomp::linalg::column(a, 1);
  EXPECT_EQ(c, (DenseVector{2.0, 4.0}));
  EXPECT_THROW(spgomp::linalg::column(a, 2), DimensionError);
}

TEST(DenseOps, ShapeMismatchesThrow) {
  const DenseMatrix a(3, 2);
  EXPECT_THROW(spgomp::linalg::multiply(a, {1.0}), DimensionError);
  EXPECT_THROW(spgomp::linalg::transpose_multiply(a, {1.0}), DimensionError);
  DenseVector y{1.0, 2.0};
  EXPECT_THROW(spgomp::linalg::axpy(1.0, {1.0, 2.0, 3.0}, y), DimensionError);
}

TEST(Sensing, ReproducibleAndScaled) {
  const DenseMatrix a = spgomp::linalg::gaussian_sensing_matrix(64, 32, 7);
  const DenseMatrix b = spgomp::linalg::gaussian_sensing_matrix(64, 32, 7);
  EXPECT_EQ(a.data, b.data);
  const DenseMatrix c = spgomp::linalg::gaussian_sensing_matrix(64, 32, 8);
  EXPECT_NE(a.data, c.data);

  // N(0, 1/m) entries give columns unit expected norm.
  double total = 0.0;
  for (std::size_t j = 0; j < a.cols; ++j) {
    const DenseVector col = spgomp::linalg::column(a, j);
    total += spgomp::linalg::dot(col, col);
  }
  EXPECT_NEAR(total / static_cast<double>(a.cols), 1.0, 0.15);
  EXPECT_THROW(spgomp::linalg::gaussian_sensing_matrix(0, 4, 1), DimensionError);
}
