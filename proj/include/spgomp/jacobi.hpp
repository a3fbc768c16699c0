#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "spgomp/errors.hpp"

namespace spgomp::analysis {

// Eigenvalues of a symmetric k x k matrix by cyclic Jacobi rotations,
// accurate to ~1e-14 relative. Works in place on a row-major buffer the
// caller owns and writes the eigenvalues to eigs ascending; no allocation,
// so it can sit inside a support-enumeration loop. Intended for the small
// Gram blocks that show up in isometry-constant searches (k <= ~24).
inline void jacobi_eigenvalues(double* a, std::size_t k, double* eigs) {
  if (k == 0) throw DimensionError("jacobi_eigenvalues: empty matrix");
  if (k == 1) {
    eigs[0] = a[0];
    return;
  }
  double frob = 0.0;
  for (std::size_t i = 0; i < k * k; ++i) frob += a[i] * a[i];
  frob = std::sqrt(frob);
  const double stop = 1e-15 * std::max(1.0, frob);

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p + 1 < k; ++p)
      for (std::size_t q = p + 1; q < k; ++q) off += a[p * k + q] * a[p * k + q];
    if (std::sqrt(2.0 * off) <= stop) break;

    for (std::size_t p = 0; p + 1 < k; ++p) {
      for (std::size_t q = p + 1; q < k; ++q) {
        const double apq = a[p * k + q];
        if (apq == 0.0) continue;
        const double app = a[p * k + p];
        const double aqq = a[q * k + q];
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        a[p * k + p] = app - t * apq;
        a[q * k + q] = aqq + t * apq;
        a[p * k + q] = 0.0;
        a[q * k + p] = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
          if (i == p || i == q) continue;
          const double aip = a[i * k + p];
          const double aiq = a[i * k + q];
          a[i * k + p] = c * aip - s * aiq;
          a[p * k + i] = a[i * k + p];
          a[i * k + q] = s * aip + c * aiq;
          a[q * k + i] = a[i * k + q];
        }
      }
    }
  }
  for (std::size_t i = 0; i < k; ++i) eigs[i] = a[i * k + i];
  std::sort(eigs, eigs + k);
}

}  // namespace spgomp::analysis
