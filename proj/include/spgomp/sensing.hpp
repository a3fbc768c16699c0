#pragma once

#include <cmath>
#include <cstdint>

#include "spgomp/errors.hpp"
#include "spgomp/matrix.hpp"
#include "spgomp/rng.hpp"

namespace spgomp::linalg {

// m x n matrix with i.i.d. N(0, 1/m) entries, so columns have unit expected
// norm. Entries are drawn in row-major order; that order is part of the
// reproducibility contract.
inline DenseMatrix gaussian_sensing_matrix(std::size_t m, std::size_t n, std::uint64_t seed) {
  if (m == 0 || n == 0) throw DimensionError("gaussian_sensing_matrix: empty shape");
  DenseMatrix phi(m, n);
  Xoshiro256pp rng(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m));
  for (double& entry : phi.data) entry = rng.gaussian() * scale;
  return phi;
}

}  // namespace spgomp::linalg
