#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "spgomp/errors.hpp"
#include "spgomp/jacobi.hpp"
#include "spgomp/matrix.hpp"

namespace spgomp::analysis {

struct RipEstimate {
  std::size_t order = 0;
  double delta = 0.0;
  std::vector<std::size_t> argmax_support;  // a support attaining delta
};

namespace detail {

// C(n, k), throwing once the running value passes `cap`. The partial
// products C(n-k+i, i) are nondecreasing in i, so an early exit is sound.
inline std::uint64_t combinations_capped(std::size_t n, std::size_t k, std::uint64_t cap) {
  std::uint64_t c = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > cap)
      throw EnumerationLimitError("support enumeration needs more than " + std::to_string(cap) +
                                  " subsets");
  }
  return c;
}

inline bool next_combination(std::vector<std::size_t>& s, std::size_t n) {
  const std::size_t k = s.size();
  for (std::size_t i = k; i-- > 0;) {
    if (s[i] < n - k + i) {
      ++s[i];
      for (std::size_t j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace detail

// Exhaustive isometry constant: delta is the worst eigenvalue defect
// max(lambda_max - 1, 1 - lambda_min) of the Gram matrix over every
// column subset of the given size. Exponential by nature; the 10^6 subset
// cap keeps it an exact oracle for small problems rather than letting it
// silently degrade into a sampler.
inline RipEstimate rip_constant_bruteforce(const linalg::DenseMatrix& phi, std::size_t order_k) {
  const std::size_t m = phi.rows;
  const std::size_t n = phi.cols;
  if (order_k < 1 || order_k > n)
    throw DimensionError("rip_constant_bruteforce: order out of range");
  if (order_k > m)
    throw DimensionError("rip_constant_bruteforce: order exceeds row count");
  detail::combinations_capped(n, order_k, 1000000);

  RipEstimate best;
  best.order = order_k;
  best.delta = -1.0;

  if (order_k == 1) {
    for (std::size_t j = 0; j < n; ++j) {
      double g = 0.0;
      for (std::size_t i = 0; i < m; ++i) g += phi(i, j) * phi(i, j);
      const double d = std::fabs(g - 1.0);
      if (d > best.delta) {
        best.delta = d;
        best.argmax_support = {j};
      }
    }
    return best;
  }

  // One n x n Gram up front turns the per-subset work into lookups plus a
  // small eigenproblem. The subset cap bounds n, so the Gram stays modest.
  linalg::DenseMatrix gram(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < m; ++i) s += phi(i, a) * phi(i, b);
      gram(a, b) = s;
      gram(b, a) = s;
    }
  }

  const std::size_t k = order_k;
  std::vector<std::size_t> support(k);
  for (std::size_t i = 0; i < k; ++i) support[i] = i;
  std::vector<double> block(k * k);
  std::vector<double> eigs(k);
  do {
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) block[a * k + b] = gram(support[a], support[b]);
    jacobi_eigenvalues(block.data(), k, eigs.data());
    const double d = std::max(eigs[k - 1] - 1.0, 1.0 - eigs[0]);
    if (d > best.delta) {
      best.delta = d;
      best.argmax_support = support;
    }
  } while (detail::next_combination(support, n));
  return best;
}

// Memoizing wrapper for callers that need the constant at several orders of
// the same matrix.
class RipCache {
 public:
  explicit RipCache(const linalg::DenseMatrix& phi) : phi_(phi) {}

  const RipEstimate& at(std::size_t order) {
    auto it = cache_.find(order);
    if (it == cache_.end())
      it = cache_.emplace(order, rip_constant_bruteforce(phi_, order)).first;
    return it->second;
  }

  double delta(std::size_t order) { return at(order).delta; }

 private:
  const linalg::DenseMatrix& phi_;
  std::map<std::size_t, RipEstimate> cache_;
};

}  // namespace spgomp::analysis
