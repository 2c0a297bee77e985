#include "vdw/primes.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace vdw {
namespace {

TEST(IsPrime, Examples) {
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(97));
  EXPECT_FALSE(is_prime(1));
  EXPECT_FALSE(is_prime(0));
  EXPECT_TRUE(testing::trial_division_prime(97));
}

TEST(IsPrime, AgreesWithTrialDivisionUpToOneMillion) {
  for (std::uint64_t m = 0; m <= 1'000'000; ++m) {
    ASSERT_EQ(is_prime(m), testing::trial_division_prime(m)) << m;
  }
}

TEST(IsPrime, SixtyFourBitEdges) {
  EXPECT_TRUE(is_prime(18446744073709551557ULL));   // largest 64-bit prime
  EXPECT_FALSE(is_prime(18446744073709551615ULL));
  EXPECT_FALSE(is_prime(3215031751ULL));             // strong pseudoprime to 2, 3, 5, 7
  EXPECT_FALSE(is_prime(3825123056546413051ULL));    // strong pseudoprime to bases 2..23
  EXPECT_TRUE(is_prime(1'000'000'007ULL));
  EXPECT_FALSE(is_prime(1'000'000'007ULL * 998'244'353ULL));
}

TEST(LargestPrimeLeq, Examples) {
  EXPECT_EQ(largest_prime_leq(99), 97u);
  EXPECT_EQ(largest_prime_leq(2), 2u);
  EXPECT_EQ(largest_prime_leq(1), std::nullopt);
  EXPECT_EQ(largest_prime_leq(0), std::nullopt);
}

TEST(BhpWindow, HundredHasNinetySeven) {
  const PrimeWindow w = bhp_window(100);
  EXPECT_EQ(w.hi, 99u);
  EXPECT_NEAR(w.lo, 99.0 - std::pow(99.0, 0.525), 1e-9);
  EXPECT_NEAR(w.lo, 87.84, 0.01);
  // sieve over [88, 99]
  const auto sieve = sieve_primes(99);
  std::vector<std::uint64_t> expected;
  for (std::uint64_t q = 88; q <= 99; ++q) {
    if (sieve[q]) expected.push_back(q);
  }
  EXPECT_EQ(w.primes_found, expected);
  EXPECT_EQ(w.p_star, 97u);
}

TEST(BhpWindow, SmallK) {
  const PrimeWindow w = bhp_window(4);
  EXPECT_EQ(w.hi, 3u);
  EXPECT_LT(w.lo, 2.0);
  EXPECT_EQ(w.primes_found, (std::vector<std::uint64_t>{2, 3}));
  EXPECT_EQ(w.p_star, 3u);
  EXPECT_THROW(bhp_window(2), InvalidParameter);
}

TEST(BhpWindow, TenThousand) {
  const PrimeWindow w = bhp_window(10'000);
  EXPECT_EQ(w.hi, 9999u);
  EXPECT_NEAR(9999.0 - w.lo, 125.9, 0.1);
  ASSERT_TRUE(w.p_star.has_value());
  EXPECT_EQ(*w.p_star, 9973u);
  for (auto q : w.primes_found) {
    EXPECT_TRUE(testing::trial_division_prime(q));
    EXPECT_GE(static_cast<double>(q), w.lo);
    EXPECT_LE(q, 9999u);
  }
}

TEST(BhpWindow, LowerEndIsRoundedDown) {
  for (std::uint64_t k : {3u, 10u, 1000u, 123456u}) {
    const double x = static_cast<double>(k - 1);
    EXPECT_LT(bhp_window_lower(k), x - std::pow(x, 0.525));
  }
}

TEST(BhpPrime, MatchesWindowPStar) {
  for (std::uint64_t k = 3; k <= 3000; ++k) ASSERT_EQ(bhp_prime(k), bhp_window(k).p_star) << k;
}

// Empirical window occupancy far below any proven threshold. The only gap in
// [10, 10^6] is k = 127: the window is [113.33, 126] and 113, 127 are
// consecutive primes.
TEST(BhpWindow, OccupancyUpToOneMillion) {
  constexpr std::uint64_t kMax = 1'000'000;
  const auto sieve = sieve_primes(kMax);
  std::uint64_t last_prime = 7;
  std::vector<std::uint64_t> empty;
  for (std::uint64_t k = 10; k <= kMax; ++k) {
    if (sieve[k - 1]) last_prime = k - 1;
    if (static_cast<double>(last_prime) < bhp_window_lower(k)) empty.push_back(k);
  }
  EXPECT_EQ(empty, std::vector<std::uint64_t>{127});
  const PrimeWindow w = bhp_window(127);
  EXPECT_TRUE(w.primes_found.empty());
  EXPECT_EQ(w.p_star, std::nullopt);
}

}  // namespace
}  // namespace vdw
