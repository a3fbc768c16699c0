#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace spgomp::analysis {

// Modeled flop counts for a recovery run that selects big_n columns per
// iteration and performs the least-squares step by recycled incremental QR.
// Counts are a cost model, not instrumentation: they come from closed-form
// polynomials in (N, m, n, k), so they are exact integers and identical on
// every platform. The closed-form approximation drops lower-order terms and
// is reported separately; the two are never mixed.
struct FlopBreakdown {
  struct Iteration {
    std::size_t k = 0;                  // 1-based iteration index
    std::int64_t selection = 0;         // correlate residual, pick top N
    std::int64_t estimation = 0;        // incremental QR update + solve
    std::int64_t residual_update = 0;
    std::int64_t total = 0;
  };
  std::size_t big_n = 0;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t iterations = 0;
  std::vector<Iteration> per_iteration;
  std::int64_t exact_total = 0;         // sum of per-iteration totals
  std::int64_t approx_total = 0;        // 2Smn + (2N^2 + N)S^2 m
};

inline FlopBreakdown flop_model(std::size_t big_n, std::size_t m, std::size_t n,
                                std::size_t iterations) {
  const auto N = static_cast<std::int64_t>(big_n);
  const auto M = static_cast<std::int64_t>(m);
  const auto W = static_cast<std::int64_t>(n);
  const auto S = static_cast<std::int64_t>(iterations);

  FlopBreakdown out;
  out.big_n = big_n;
  out.m = m;
  out.n = n;
  out.iterations = iterations;
  out.per_iteration.reserve(iterations);
  for (std::int64_t k = 1; k <= S; ++k) {
    FlopBreakdown::Iteration it;
    it.k = static_cast<std::size_t>(k);
    it.selection = (2 * M - 1 + N) * W - N * (N + 1) / 2;
    it.estimation = 4 * N * N * k * M + (-2 * N * N + 5 * N) * M + 2 * N * N * N * k * k +
                    (-4 * N * N * N + 5 * N * N) * k + 3 * N * N * N - N * N - N;
    it.residual_update = 2 * N * k * M;
    it.total = it.selection + it.estimation + it.residual_update;
    out.exact_total += it.total;
    out.per_iteration.push_back(it);
  }
  out.approx_total = 2 * S * M * W + (2 * N * N + N) * S * S * M;
  return out;
}

}  // namespace spgomp::analysis
