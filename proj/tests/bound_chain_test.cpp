#include "vdw/bound_chain.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace vdw {
namespace {

std::uint64_t largest_prime_by_trial(std::uint64_t hi) {
  while (!testing::trial_division_prime(hi)) --hi;
  return hi;
}

TEST(ChainLowerBound, TenThousand) {
  const ChainReport rep = chain_lower_bound(10'000);
  EXPECT_EQ(rep.r0, 1085u);
  EXPECT_EQ(rep.p_star, 9973u);
  EXPECT_EQ(rep.prime_source, PrimeSource::bhp_window);
  EXPECT_EQ(rep.status, ChainStatus::certified);
  EXPECT_NEAR(rep.f_k, 8787.37, 0.01);
  EXPECT_NEAR(10'000 / std::log(10'000.0), 1085.74, 0.01);
  EXPECT_NEAR(std::pow(10'000.0, 0.525), 125.9, 0.1);
}

TEST(ChainLowerBound, IndependentLongDoubleEvaluation) {
  for (std::uint64_t k : {10'000ULL, 31'623ULL, 100'000ULL, 2'000'003ULL, 123'456'789ULL}) {
    const ChainReport rep = chain_lower_bound(k);
    const long double kl = k;
    const auto r0 = static_cast<std::uint64_t>(std::floor(kl / std::log(kl)));
    ASSERT_EQ(rep.r0, r0);
    if (k < 3'000'000) {
      EXPECT_EQ(rep.p_star, largest_prime_by_trial(k - 1));
    }
    const long double p = rep.p_star;
    const long double log_chain =
        (p - r0) * std::log(p) + (kl - 1) * std::log(static_cast<long double>(r0)) - std::log(16 * kl);
    EXPECT_NEAR(rep.log_chain_lower / static_cast<double>(log_chain), 1.0, 1e-12);
    const long double ratio = std::exp(log_chain / kl) / kl;
    EXPECT_NEAR(rep.ratio_lower / static_cast<double>(ratio), 1.0, 1e-10);
  }
}

TEST(ChainLowerBound, FactorIdentity) {
  for (std::uint64_t k = 1000; k <= 1'000'000'000; k = k * 3 + 7) {
    const ChainReport rep = chain_lower_bound(k);
    const double product = rep.factor1 * rep.factor2 * rep.factor3;
    EXPECT_NEAR(product / rep.ratio_lower, 1.0, 1e-9) << k;
  }
}

TEST(ChainLowerBound, SmallKIsHeuristic) {
  const ChainReport rep = chain_lower_bound(100);
  EXPECT_EQ(rep.status, ChainStatus::heuristic);
  EXPECT_FALSE(rep.notes.empty());
  EXPECT_THROW(chain_lower_bound(2), InvalidParameter);
}

TEST(ChainLowerBound, EpsBoundUsesConstant) {
  ChainParams params;
  params.eps_constant = 5.0;
  const ChainReport rep = chain_lower_bound(1'000'000, params);
  EXPECT_NEAR(rep.eps_k_bound, 5.0 * std::pow(1e6, -0.475) * std::log(1e6), 1e-12);
}

TEST(CsvRow, HeaderAndFieldCount) {
  const std::string row = to_csv_row(chain_lower_bound(10'000));
  EXPECT_EQ(std::count(row.begin(), row.end(), ','), 8);
  EXPECT_EQ(row.rfind("10000,1085,9973,", 0), 0u);
  EXPECT_NE(row.find(",certified"), std::string::npos);
}

TEST(FactorBounds, HoldAcrossLogSpacedGrid) {
  for (int i = 0; i < 50; ++i) {
    const double e = 4.0 + 5.0 * i / 49.0;
    const auto k = static_cast<std::uint64_t>(std::llround(std::pow(10.0, e)));
    const FactorBounds fb = factor_bounds(k);
    EXPECT_TRUE(fb.log_p_star.holds()) << k;
    EXPECT_TRUE(fb.p_ratio.holds()) << k;
    EXPECT_TRUE(fb.product.holds()) << k;
    EXPECT_GE(fb.p_ratio.computed, 0.86);
    EXPECT_GE(fb.log_p_star.computed, 9.15);
  }
}

TEST(FactorBounds, BelowThresholdIsRegimeError) {
  EXPECT_THROW(factor_bounds(9'999), RegimeError);
  EXPECT_NO_THROW(factor_bounds(10'000));
}

TEST(SweepR, ArgmaxNearKOverLogK) {
  for (double k : {1e4, 1e6, 1e8}) {
    const double step = std::max(1.0, std::floor(k / 1e4));
    const RSweep s = sweep_R(k, linear_grid(2.0, k - 1.0, step));
    const double target = k / std::log(k);
    EXPECT_LE(std::abs(s.best().r0 - target), step) << k;
  }
}

TEST(SweepR, IdentityAtKOverLogK) {
  for (double k : {1e4, 1e6, 1e8}) {
    const double x = k / std::log(k);
    EXPECT_NEAR(r_value(k, x).R / (x / std::numbers::e), 1.0, 1e-12);
    // R(r0) = x e^{-x log k / k}
    for (double r0 : {2.0, 17.5, x / 2, x * 2}) {
      EXPECT_NEAR(r_value(k, r0).R / (r0 * std::exp(-r0 * std::log(k) / k)), 1.0, 1e-10);
    }
  }
}

TEST(SweepR, RejectsBadGrid) {
  EXPECT_THROW(sweep_R(100, {}), InvalidParameter);
  EXPECT_THROW(sweep_R(100, {1.0}), InvalidParameter);
  EXPECT_THROW(sweep_R(100, {100.0}), InvalidParameter);
  EXPECT_THROW(sweep_R(2, {2.0}), InvalidParameter);
}

TEST(SeparationCheck, PositiveAndIncreasingFromThreshold) {
  double prev = -1.0;
  for (std::uint64_t k = 10'000; k <= 10'000'000; k = k * 11 / 10) {
    const SeparationCheck s = separation_check(k);
    EXPECT_TRUE(s.positive) << k;
    EXPECT_GT(s.f_prime, 0.0) << k;
    EXPECT_GT(s.f, prev);
    prev = s.f;
  }
}

TEST(EpsReport, IncreasingWithinBand) {
  const EpsReport rep = eps_report({10'000, 100'000, 1'000'000, 10'000'000});
  ASSERT_EQ(rep.rows.size(), 4u);
  EXPECT_TRUE(rep.increasing);
  EXPECT_TRUE(rep.in_band);
  EXPECT_NEAR(rep.rows[0].normalized, 0.97125, 1e-4);
  EXPECT_NEAR(rep.rows[3].normalized, 0.99998, 1e-4);
}

}  // namespace
}  // namespace vdw
