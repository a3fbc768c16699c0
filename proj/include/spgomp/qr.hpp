#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "spgomp/errors.hpp"
#include "spgomp/matrix.hpp"

namespace spgomp::linalg {

// Incrementally grown QR factorization of a set of columns picked out of a
// wider source matrix. Appending columns never touches the part already
// computed: the first p columns of Q and the leading p x p block of R in the
// returned state are bit-identical to the input state. That recycling is what
// makes the per-iteration least-squares step cheap inside a recovery loop.
struct QrState {
  std::size_t m = 0;                    // row count, fixed by the first append
  std::size_t p = 0;                    // columns admitted so far
  std::vector<DenseVector> q_cols;      // orthonormal columns, each length m
  DenseMatrix r_tri;                    // p x p, upper triangular, positive diagonal
  std::vector<std::size_t> col_ids;     // source column index behind each factor column
};

// Admits the columns source[:, id] for id in new_ids, in order, via modified
// Gram-Schmidt with one reorthogonalization pass. The second pass keeps
// Q'Q = I near working precision even when the admitted set gets badly
// conditioned; without it late iterations lose orthogonality. Throws
// RankDeficientError when a new column's remainder norm falls below 1e-12,
// leaving no partial update behind.
inline QrState qr_append_columns(const QrState& state, const DenseMatrix& source,
                                 const std::vector<std::size_t>& new_ids) {
  const std::size_t m = state.p == 0 ? source.rows : state.m;
  if (source.rows != m)
    throw DimensionError("qr_append_columns: source has " + std::to_string(source.rows) +
                         " rows, state has " + std::to_string(m));
  if (state.p + new_ids.size() > m)
    throw DimensionError("qr_append_columns: more columns than rows");
  for (std::size_t id : new_ids) {
    if (id >= source.cols)
      throw DimensionError("qr_append_columns: column id " + std::to_string(id) +
                           " out of range");
    if (std::find(state.col_ids.begin(), state.col_ids.end(), id) != state.col_ids.end())
      throw DimensionError("qr_append_columns: column id " + std::to_string(id) +
                           " already admitted");
  }

  QrState next;
  next.m = m;
  next.p = state.p + new_ids.size();
  next.q_cols = state.q_cols;
  next.q_cols.reserve(next.p);
  next.col_ids = state.col_ids;
  next.col_ids.reserve(next.p);
  next.r_tri = DenseMatrix(next.p, next.p);
  for (std::size_t i = 0; i < state.p; ++i)
    for (std::size_t j = i; j < state.p; ++j) next.r_tri(i, j) = state.r_tri(i, j);

  for (std::size_t id : new_ids) {
    DenseVector v = column(source, id);
    const std::size_t j = next.col_ids.size();
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        const double h = dot(next.q_cols[i], v);
        axpy(-h, next.q_cols[i], v);
        next.r_tri(i, j) += h;
      }
    }
    const double rho = norm2(v);
    if (rho < 1e-12)
      throw RankDeficientError("qr_append_columns: column " + std::to_string(id) +
                               " is in the span of the admitted columns");
    for (double& x : v) x /= rho;
    next.r_tri(j, j) = rho;
    next.q_cols.push_back(std::move(v));
    next.col_ids.push_back(id);
  }
  return next;
}

// Least-squares coefficients over the admitted columns: one Q'y product and
// one back-substitution against R. Ordering matches state.col_ids.
inline DenseVector ls_solve(const QrState& state, const DenseVector& y) {
  if (state.p == 0) throw DimensionError("ls_solve: empty factorization");
  if (y.size() != state.m)
    throw DimensionError("ls_solve: y has length " + std::to_string(y.size()) + ", need " +
                         std::to_string(state.m));
  DenseVector z(state.p);
  for (std::size_t i = 0; i < state.p; ++i) z[i] = dot(state.q_cols[i], y);
  for (std::size_t ii = state.p; ii-- > 0;) {
    double s = z[ii];
    for (std::size_t j = ii + 1; j < state.p; ++j) s -= state.r_tri(ii, j) * z[j];
    z[ii] = s / state.r_tri(ii, ii);
  }
  return z;
}

// y minus the coefficients applied to the admitted source columns.
inline DenseVector residual(const DenseMatrix& source, const QrState& state,
                            const DenseVector& coeffs, const DenseVector& y) {
  if (coeffs.size() != state.p)
    throw DimensionError("residual: got " + std::to_string(coeffs.size()) + " coefficients for " +
                         std::to_string(state.p) + " columns");
  if (y.size() != source.rows) throw DimensionError("residual: y length mismatch");
  DenseVector r = y;
  for (std::size_t i = 0; i < state.p; ++i) {
    const double c = coeffs[i];
    const std::size_t id = state.col_ids[i];
    for (std::size_t row = 0; row < source.rows; ++row) r[row] -= c * source(row, id);
  }
  return r;
}

}  // namespace spgomp::linalg
