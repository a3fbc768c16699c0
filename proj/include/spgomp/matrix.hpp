#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "spgomp/errors.hpp"

namespace spgomp::linalg {

using DenseVector = std::vector<double>;

// Row-major dense matrix. Storage is a flat vector, a(i,j) = data[i*cols + j].
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

inline double dot(const DenseVector& a, const DenseVector& b) {
  if (a.size() != b.size())
    throw DimensionError("dot: length mismatch " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const DenseVector& v) { return std::sqrt(dot(v, v)); }

inline double norm_inf(const DenseVector& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

// y += alpha * x
inline void axpy(double alpha, const DenseVector& x, DenseVector& y) {
  if (x.size() != y.size()) throw DimensionError("axpy: length mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline DenseVector column(const DenseMatrix& a, std::size_t j) {
  if (j >= a.cols) throw DimensionError("column: index " + std::to_string(j) + " out of range");
  DenseVector c(a.rows);
  for (std::size_t i = 0; i < a.rows; ++i) c[i] = a(i, j);
  return c;
}

// a * x
inline DenseVector multiply(const DenseMatrix& a, const DenseVector& x) {
  if (x.size() != a.cols) throw DimensionError("multiply: got length " + std::to_string(x.size()) +
                                               ", need " + std::to_string(a.cols));
  DenseVector y(a.rows, 0.0);
  for (std::size_t i = 0; i < a.rows; ++i) {
    double s = 0.0;
    const double* row = a.data.data() + i * a.cols;
    for (std::size_t j = 0; j < a.cols; ++j) s += row[j] * x[j];
    y[i] = s;
  }
  return y;
}

// a' * x, without forming the transpose
inline DenseVector transpose_multiply(const DenseMatrix& a, const DenseVector& x) {
  if (x.size() != a.rows)
    throw DimensionError("transpose_multiply: got length " + std::to_string(x.size()) + ", need " +
                         std::to_string(a.rows));
  DenseVector y(a.cols, 0.0);
  for (std::size_t i = 0; i < a.rows; ++i) {
    const double xi = x[i];
    if (xi == 0.0) continue;
    const double* row = a.data.data() + i * a.cols;
    for (std::size_t j = 0; j < a.cols; ++j) y[j] += xi * row[j];
  }
  return y;
}

}  // namespace spgomp::linalg
