#include <gtest/gtest.h>

#include "spgomp/flops.hpp"

using spgomp::analysis::FlopBreakdown;
using spgomp::analysis::flop_model;

TEST(FlopModel, ClosedFormApproximationHandExample) {
  const FlopBreakdown fb = flop_model(1, 2, 4, 1);
  EXPECT_EQ(fb.approx_total, 2 * 1 * 2 * 4 + 3 * 1 * 1 * 2);
  EXPECT_EQ(fb.approx_total, 22);
}

TEST(FlopModel, ResidualUpdateRowHandExample) {
  const FlopBreakdown fb = flop_model(1, 2, 4, 1);
  ASSERT_EQ(fb.per_iteration.size(), 1u);
  EXPECT_EQ(fb.per_iteration[0].residual_update, 4);
}

TEST(FlopModel, EstimationPolynomialHandExample) {
  const FlopBreakdown fb = flop_model(2, 10, 20, 1);
  ASSERT_EQ(fb.per_iteration.size(), 1u);
  EXPECT_EQ(fb.per_iteration[0].estimation, 202);
}

TEST(FlopModel, SelectionRowHandExample) {
  // (2m - 1 + N)n - N(N + 1)/2 with N=2, m=3, n=5.
  const FlopBreakdown fb = flop_model(2, 3, 5, 1);
  EXPECT_EQ(fb.per_iteration[0].selection, (6 - 1 + 2) * 5 - 3);
}

TEST(FlopModel, TotalsAreSumsOfParts) {
  const FlopBreakdown fb = flop_model(3, 32, 64, 7);
  ASSERT_EQ(fb.per_iteration.size(), 7u);
  std::int64_t sum = 0;
  for (const auto& it : fb.per_iteration) {
    EXPECT_EQ(it.total, it.selection + it.estimation + it.residual_update);
    sum += it.total;
  }
  EXPECT_EQ(fb.exact_total, sum);
  EXPECT_EQ(fb.big_n, 3u);
  EXPECT_EQ(fb.m, 32u);
  EXPECT_EQ(fb.n, 64u);
  EXPECT_EQ(fb.iterations, 7u);
}

TEST(FlopModel, ZeroIterationsIsEmpty) {
  const FlopBreakdown fb = flop_model(5, 128, 256, 0);
  EXPECT_TRUE(fb.per_iteration.empty());
  EXPECT_EQ(fb.exact_total, 0);
  EXPECT_EQ(fb.approx_total, 0);
}

TEST(FlopModel, CountsGrowWithIterations) {
  std::int64_t prev_exact = 0;
  std::int64_t prev_approx = 0;
  for (std::size_t s = 1; s <= 10; ++s) {
    const FlopBreakdown fb = flop_model(5, 128, 256, s);
    EXPECT_GT(fb.exact_total, prev_exact);
    EXPECT_GT(fb.approx_total, prev_approx);
    prev_exact = fb.exact_total;
    prev_approx = fb.approx_total;
  }
}
