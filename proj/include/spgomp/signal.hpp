#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "spgomp/errors.hpp"
#include "spgomp/matrix.hpp"

namespace spgomp::recovery {

// A sparse vector stored as (support, values) pairs. Support indices are
// distinct, in range, and kept sorted ascending; values are nonzero.
struct SparseSignal {
  std::size_t n = 0;
  std::vector<std::size_t> support;
  std::vector<double> values;

  linalg::DenseVector dense() const {
    linalg::DenseVector x(n, 0.0);
    for (std::size_t i = 0; i < support.size(); ++i) x[support[i]] = values[i];
    return x;
  }
};

inline void validate(const SparseSignal& s) {
  if (s.support.empty() || s.support.size() != s.values.size())
    throw DimensionError("SparseSignal: support/value size mismatch or empty support");
  for (std::size_t i = 0; i < s.support.size(); ++i) {
    if (s.support[i] >= s.n)
      throw DimensionError("SparseSignal: index " + std::to_string(s.support[i]) +
                           " out of range");
    if (i > 0 && s.support[i] <= s.support[i - 1])
      throw DimensionError("SparseSignal: support not strictly increasing");
    if (s.values[i] == 0.0) throw DimensionError("SparseSignal: zero value on support");
  }
}

}  // namespace spgomp::recovery
