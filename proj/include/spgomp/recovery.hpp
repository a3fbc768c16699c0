#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spgomp/errors.hpp"
#include "spgomp/flops.hpp"
#include "spgomp/matrix.hpp"
#include "spgomp/qr.hpp"
#include "spgomp/signal.hpp"

namespace spgomp::recovery {

struct RecoveryConfig {
  std::size_t big_n = 1;       // columns admitted per iteration
  std::size_t sparsity_k = 1;  // target sparsity
  // Absolute residual-norm stopping threshold. Unset means 1e-6 * ||y||_2.
  std::optional<double> epsilon;
  // Iteration cap. Unset means min(sparsity_k, m / big_n).
  std::optional<std::size_t> max_iters;
};

struct IterationTrace {
  std::size_t iteration = 0;           // 1-based
  std::vector<std::size_t> selected;   // indices that entered the support
  double residual_norm = 0.0;
  std::size_t support_size = 0;        // after this iteration
};

struct RecoveryResult {
  std::vector<std::size_t> support_estimate;  // sorted ascending
  linalg::DenseVector x_hat;                  // length n, zero off the support
  std::vector<IterationTrace> traces;
  std::size_t iterations = 0;
  bool converged = false;            // residual threshold reached
  bool rank_deficient_stop = false;  // admitted columns became dependent
  bool size_warning = false;         // cosamp only: 3K exceeds m
  std::int64_t modeled_flops = 0;    // zero for cosamp, which the model does not cover
};

// Indices of the big_n largest |correlations| outside `excluded`, ordered by
// decreasing magnitude, ties to the lower index.
inline std::vector<std::size_t> select_top_n(const linalg::DenseVector& correlations,
                                             const std::vector<std::size_t>& excluded,
                                             std::size_t big_n) {
  std::vector<bool> skip(correlations.size(), false);
  for (std::size_t id : excluded) {
    if (id >= correlations.size()) throw DimensionError("select_top_n: excluded index out of range");
    skip[id] = true;
  }
  std::vector<std::size_t> candidates;
  candidates.reserve(correlations.size());
  for (std::size_t j = 0; j < correlations.size(); ++j)
    if (!skip[j]) candidates.push_back(j);
  if (candidates.size() < big_n)
    throw DimensionError("select_top_n: asked for " + std::to_string(big_n) + " of " +
                         std::to_string(candidates.size()) + " available indices");
  const auto before = [&](std::size_t a, std::size_t b) {
    const double fa = std::fabs(correlations[a]);
    const double fb = std::fabs(correlations[b]);
    if (fa != fb) return fa > fb;
    return a < b;
  };
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(big_n),
                    candidates.end(), before);
  candidates.resize(big_n);
  return candidates;
}

namespace detail {

inline double resolve_epsilon(const std::optional<double>& eps, double y_norm) {
  if (eps) {
    if (*eps < 0.0) throw DimensionError("epsilon must be nonnegative");
    return *eps;
  }
  return 1e-6 * y_norm;
}

inline void scatter_estimate(RecoveryResult& result, std::size_t n,
                             const std::vector<std::size_t>& ids,
                             const linalg::DenseVector& coeffs) {
  result.x_hat.assign(n, 0.0);
  for (std::size_t i = 0; i < ids.size(); ++i) result.x_hat[ids[i]] = coeffs[i];
  result.support_estimate = ids;
  std::sort(result.support_estimate.begin(), result.support_estimate.end());
}

}  // namespace detail

// Greedy recovery loop: correlate the residual against all columns, admit the
// big_n strongest new indices, re-solve least squares over everything
// admitted so far (recycled QR), update the residual, and stop once its norm
// falls under epsilon or the iteration cap is reached. A rank-deficient
// augmentation stops the loop gracefully and keeps the previous iterate.
inline RecoveryResult gomp_recover(const linalg::DenseMatrix& phi, const linalg::DenseVector& y,
                                   const RecoveryConfig& cfg) {
  const std::size_t m = phi.rows;
  const std::size_t n = phi.cols;
  if (y.size() != m)
    throw DimensionError("gomp_recover: y has length " + std::to_string(y.size()) + ", need " +
                         std::to_string(m));
  if (cfg.big_n < 1 || cfg.sparsity_k < 1)
    throw DimensionError("gomp_recover: big_n and sparsity_k must be at least 1");
  if (cfg.big_n > n) throw DimensionError("gomp_recover: big_n exceeds column count");

  RecoveryResult result;
  result.x_hat.assign(n, 0.0);

  double r_norm = linalg::norm2(y);
  const double eps = detail::resolve_epsilon(cfg.epsilon, r_norm);
  const std::size_t cap =
      cfg.max_iters ? *cfg.max_iters : std::min(cfg.sparsity_k, m / cfg.big_n);
  if (r_norm <= eps) {
    result.converged = true;
    return result;
  }

  linalg::QrState qr;
  linalg::DenseVector coeffs;
  linalg::DenseVector r = y;
  std::vector<std::size_t> admitted;  // selection order
  for (std::size_t k = 1; k <= cap; ++k) {
    if (admitted.size() + cfg.big_n > std::min(m, n)) break;
    const linalg::DenseVector correlations = linalg::transpose_multiply(phi, r);
    const std::vector<std::size_t> picks = select_top_n(correlations, admitted, cfg.big_n);
    linalg::QrState grown;
    try {
      grown = linalg::qr_append_columns(qr, phi, picks);
    } catch (const RankDeficientError&) {
      result.rank_deficient_stop = true;
      break;
    }
    qr = std::move(grown);
    coeffs = linalg::ls_solve(qr, y);
    r = linalg::residual(phi, qr, coeffs, y);
    r_norm = linalg::norm2(r);
    admitted.insert(admitted.end(), picks.begin(), picks.end());
    result.traces.push_back({k, picks, r_norm, admitted.size()});
    if (r_norm <= eps) {
      result.converged = true;
      break;
    }
  }
  result.iterations = result.traces.size();
  result.modeled_flops = analysis::flop_model(cfg.big_n, m, n, result.iterations).exact_total;
  detail::scatter_estimate(result, n, qr.col_ids, coeffs);
  return result;
}

// The big_n = 1 instance of the loop above.
inline RecoveryResult omp_recover(const linalg::DenseMatrix& phi, const linalg::DenseVector& y,
                                  const RecoveryConfig& cfg) {
  RecoveryConfig one = cfg;
  one.big_n = 1;
  return gomp_recover(phi, y, one);
}

// Comparison baseline. Per round: take the 2K strongest proxy indices, merge
// with the current support, least-squares over the merged set, keep the K
// largest coefficients, recompute the residual. Stops on the residual
// threshold, the iteration cap, or a residual norm that fails to decrease
// (the last round is then discarded). modeled_flops stays zero: the flop
// model describes the recycled-QR greedy loop, which this is not.
inline RecoveryResult cosamp_recover(const linalg::DenseMatrix& phi, const linalg::DenseVector& y,
                                     std::size_t sparsity_k, std::size_t max_iters = 0,
                                     std::optional<double> epsilon = std::nullopt) {
  const std::size_t m = phi.rows;
  const std::size_t n = phi.cols;
  if (y.size() != m)
    throw DimensionError("cosamp_recover: y has length " + std::to_string(y.size()) + ", need " +
                         std::to_string(m));
  if (sparsity_k < 1 || sparsity_k > n)
    throw DimensionError("cosamp_recover: sparsity_k out of range");

  RecoveryResult result;
  result.x_hat.assign(n, 0.0);
  result.size_warning = 3 * sparsity_k > m;

  double r_norm = linalg::norm2(y);
  const double eps = detail::resolve_epsilon(epsilon, r_norm);
  const std::size_t cap = max_iters ? max_iters : sparsity_k;
  if (r_norm <= eps) {
    result.converged = true;
    return result;
  }

  std::vector<std::size_t> support;       // sorted ascending
  linalg::DenseVector coeffs;             // aligned with support
  linalg::DenseVector r = y;
  for (std::size_t k = 1; k <= cap; ++k) {
    const linalg::DenseVector proxy = linalg::transpose_multiply(phi, r);
    const std::size_t take = std::min(2 * sparsity_k, n);
    const std::vector<std::size_t> omega = select_top_n(proxy, {}, take);

    std::vector<std::size_t> merged = support;
    merged.insert(merged.end(), omega.begin(), omega.end());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    if (merged.size() > m) {
      // Keep the whole current support, fill the rest with the strongest
      // proxy indices until the column budget m is hit.
      std::vector<bool> keep(n, false);
      for (std::size_t id : support) keep[id] = true;
      std::size_t room = m - support.size();
      for (std::size_t id : omega) {
        if (room == 0) break;
        if (!keep[id]) {
          keep[id] = true;
          --room;
        }
      }
      merged.clear();
      for (std::size_t j = 0; j < n; ++j)
        if (keep[j]) merged.push_back(j);
    }

    linalg::QrState qr;
    try {
      qr = linalg::qr_append_columns(qr, phi, merged);
    } catch (const RankDeficientError&) {
      result.rank_deficient_stop = true;
      break;
    }
    const linalg::DenseVector b = linalg::ls_solve(qr, y);

    const std::vector<std::size_t> top = select_top_n(b, {}, std::min(sparsity_k, merged.size()));
    std::vector<std::size_t> next_support;
    next_support.reserve(top.size());
    for (std::size_t pos : top) next_support.push_back(merged[pos]);
    std::sort(next_support.begin(), next_support.end());
    linalg::DenseVector next_coeffs(next_support.size());
    for (std::size_t i = 0; i < next_support.size(); ++i) {
      const auto pos = std::lower_bound(merged.begin(), merged.end(), next_support[i]);
      next_coeffs[i] = b[static_cast<std::size_t>(pos - merged.begin())];
    }

    linalg::DenseVector next_r = y;
    for (std::size_t i = 0; i < next_support.size(); ++i)
      for (std::size_t row = 0; row < m; ++row)
        next_r[row] -= next_coeffs[i] * phi(row, next_support[i]);
    const double next_norm = linalg::norm2(next_r);

    if (next_norm > eps && next_norm >= r_norm) break;

    std::vector<std::size_t> entered;
    for (std::size_t id : next_support)
      if (!std::binary_search(support.begin(), support.end(), id)) entered.push_back(id);
    support = std::move(next_support);
    coeffs = std::move(next_coeffs);
    r = std::move(next_r);
    r_norm = next_norm;
    result.traces.push_back({k, entered, r_norm, support.size()});
    if (r_norm <= eps) {
      result.converged = true;
      break;
    }
  }
  result.iterations = result.traces.size();
  detail::scatter_estimate(result, n, support, coeffs);
  return result;
}

// Relative l2 success test: ||x_hat - x||_2 / ||x||_2 <= tol.
inline bool exact_recovery(const SparseSignal& x_true, const RecoveryResult& result,
                           double tol = 1e-4) {
  if (result.x_hat.size() != x_true.n)
    throw DimensionError("exact_recovery: estimate length " +
                         std::to_string(result.x_hat.size()) + " vs signal length " +
                         std::to_string(x_true.n));
  const linalg::DenseVector x = x_true.dense();
  double err = 0.0;
  double ref = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = result.x_hat[i] - x[i];
    err += d * d;
    ref += x[i] * x[i];
  }
  return std::sqrt(err) <= tol * std::sqrt(ref);
}

}  // namespace spgomp::recovery
