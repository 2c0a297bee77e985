#include "vdw/ap_core.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace vdw {
namespace {

Coloring make(std::vector<Color> colors) {
  const Color r = *std::max_element(colors.begin(), colors.end());
  return Coloring(std::move(colors), r);
}

TEST(Coloring, RejectsOutOfRangeColors) {
  EXPECT_THROW(Coloring({1, 3}, 2), InvalidParameter);
  EXPECT_THROW(Coloring({0, 1}, 2), InvalidParameter);
  EXPECT_THROW(Coloring({}, 2), InvalidParameter);
  EXPECT_THROW(Coloring({1}, 0), InvalidParameter);
}

TEST(Coloring, SurjectiveModeRequiresEveryColor) {
  EXPECT_NO_THROW(Coloring({1, 2, 1}, 3));
  EXPECT_THROW(Coloring({1, 2, 1}, 3, ColoringMode::surjective), InvalidParameter);
  EXPECT_NO_THROW(Coloring({1, 2, 3}, 3, ColoringMode::surjective));
}

TEST(EnumerateKaps, NineThreeYieldsSixteen) {
  // brute force: d=1: 7, d=2: 5, d=3: 3, d=4: 1
  EXPECT_EQ(testing::brute_kaps(9, 3).size(), 16u);
  const auto range = enumerate_kaps(9, 3);
  EXPECT_EQ(std::distance(range.begin(), range.end()), 16);
}

TEST(EnumerateKaps, OrderIsDifferenceMajor) {
  std::vector<std::pair<std::size_t, std::size_t>> got;
  for (const Progression& p : enumerate_kaps(9, 3)) got.emplace_back(p.a, p.d);
  EXPECT_EQ(got, testing::brute_kaps(9, 3));
}

TEST(EnumerateKaps, EdgeCases) {
  const auto empty = enumerate_kaps(4, 5);
  EXPECT_EQ(empty.begin(), empty.end());
  const auto one = enumerate_kaps(5, 5);
  auto it = one.begin();
  ASSERT_NE(it, one.end());
  EXPECT_EQ(*it, (Progression{1, 1, 5}));
  EXPECT_EQ(++it, one.end());
  EXPECT_THROW(enumerate_kaps(5, 1), InvalidParameter);
  EXPECT_THROW(enumerate_kaps(0, 3), InvalidParameter);
}

TEST(CountKaps, Examples) {
  EXPECT_EQ(count_kaps(9, 3), 16u);
  EXPECT_EQ(count_kaps(6, 7), 0u);
  EXPECT_EQ(count_kaps(10, 10), 1u);
  EXPECT_THROW(count_kaps(9, 1), InvalidParameter);
}

TEST(CountKaps, OverflowIsExplicit) {
  EXPECT_THROW(count_kaps(std::numeric_limits<std::uint64_t>::max(), 2), OverflowError);
  EXPECT_NO_THROW(count_kaps(1'000'000'000, 2));
}

TEST(CountKaps, MatchesEnumeratorAndClosedForm) {
  for (std::size_t k = 2; k <= 8; ++k) {
    for (std::size_t n = 1; n <= 200; ++n) {
      const auto range = enumerate_kaps(n, k);
      const auto yielded = static_cast<std::uint64_t>(std::distance(range.begin(), range.end()));
      ASSERT_EQ(yielded, count_kaps(n, k)) << "n=" << n << " k=" << k;
      ASSERT_EQ(yielded, testing::closed_form_count(n, k)) << "n=" << n << " k=" << k;
    }
  }
}

TEST(MaxDegree, MatchesBruteIncidenceAndBounds) {
  for (std::size_t k = 2; k <= 7; ++k) {
    for (std::size_t n = 1; n <= 80; ++n) {
      const auto counts = testing::brute_incidence(n, k);
      const auto brute = *std::max_element(counts.begin(), counts.end());
      const auto exact = max_degree(n, k);
      ASSERT_EQ(exact, brute) << "n=" << n << " k=" << k;
      ASSERT_LE(exact, k * (n - 1) / (k - 1));
      ASSERT_LE(exact, 2 * n);
    }
  }
}

TEST(MaxDegree, Examples) {
  EXPECT_LE(max_degree(9, 3), 12u);
  const auto counts = testing::brute_incidence(9, 3);
  EXPECT_EQ(max_degree(9, 3), *std::max_element(counts.begin(), counts.end()));
  EXPECT_EQ(max_degree(6, 7), 0u);
  for (std::size_t n : {500u, 1000u}) EXPECT_LE(max_degree(n, 10), 2 * n);
}

TEST(FindMonoKap, Examples) {
  EXPECT_EQ(find_mono_kap(make({1, 1, 1, 1, 1}), 3), (Progression{1, 1, 3}));
  EXPECT_EQ(find_mono_kap(make({1, 1, 2, 2, 1, 1, 2, 2}), 3), std::nullopt);
  EXPECT_EQ(find_mono_kap(make({1, 2, 1, 2, 1}), 3), (Progression{1, 2, 3}));
}

TEST(FindMonoKap, ShortColoringHasNone) {
  EXPECT_EQ(find_mono_kap(Coloring::constant(4), 5), std::nullopt);
  EXPECT_EQ(find_mono_kap(Coloring::constant(5), 5), (Progression{1, 1, 5}));
}

TEST(FindMonoKap, AgreesWithBruteForceOnRandomColorings) {
  std::mt19937_64 rng(20240611);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::size_t n = 1 + rng() % 150;
    const std::size_t k = 2 + rng() % 6;
    const unsigned r = 1 + rng() % 5;
    const auto colors = testing::random_colors(rng, n, r);
    const Coloring c(colors, r);
    const auto expected = testing::brute_mono(colors, k);
    const auto got = find_mono_kap(c, k);
    ASSERT_EQ(got.has_value(), expected.has_value()) << "trial " << trial;
    if (got) {
      EXPECT_EQ(got->a, expected->first);
      EXPECT_EQ(got->d, expected->second);
      EXPECT_TRUE(is_mono_kap(c, *got));
    }
  }
}

TEST(FindMonoKap, WideColoringsCrossWordBoundaries) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 300 + rng() % 400;
    const unsigned r = 3 + rng() % 10;
    const auto colors = testing::random_colors(rng, n, r);
    const Coloring c(colors, r);
    const auto expected = testing::brute_mono(colors, 4);
    const auto got = find_mono_kap(c, 4);
    ASSERT_EQ(got.has_value(), expected.has_value());
    if (got) {
      EXPECT_EQ(std::make_pair(got->a, got->d), *expected);
    }
  }
}

TEST(MonoScanner, VisitsEveryMonoKapInOrder) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 120;
    const std::size_t k = 2 + rng() % 4;
    const unsigned r = 1 + rng() % 3;
    const auto colors = testing::random_colors(rng, n, r);
    const Coloring c(colors, r);
    std::vector<Progression> expected;
    for (const Progression& p : enumerate_kaps(n, k)) {
      if (is_mono_kap(c, p)) expected.push_back(p);
    }
    std::vector<Progression> got;
    MonoScanner(c, k).for_each([&](const Progression& p) {
      got.push_back(p);
      return true;
    });
    ASSERT_EQ(got, expected);
  }
}

TEST(FindRainbowKap, Examples) {
  EXPECT_EQ(find_rainbow_kap(make({1, 2, 3}), 3), (Progression{1, 1, 3}));
  EXPECT_EQ(find_rainbow_kap(make({1, 1, 2, 2, 1, 1, 2, 2}), 3), std::nullopt);
}

TEST(FindRainbowKap, AgreesWithBruteForce) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + rng() % 60;
    const std::size_t k = 2 + rng() % 4;
    const unsigned r = 1 + rng() % 7;
    const auto colors = testing::random_colors(rng, n, r);
    const auto expected = testing::brute_rainbow(colors, k);
    const auto got = find_rainbow_kap(Coloring(colors, r), k);
    ASSERT_EQ(got.has_value(), expected.has_value());
    if (got) {
      EXPECT_EQ(std::make_pair(got->a, got->d), *expected);
    }
  }
}

TEST(Properties, FewerColorsThanKIsRainbowFree) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t k = 3 + rng() % 5;
    const unsigned r = 1 + rng() % (k - 1);
    const auto colors = testing::random_colors(rng, 1 + rng() % 100, r);
    EXPECT_EQ(find_rainbow_kap(Coloring(colors, r), k), std::nullopt);
  }
}

TEST(Properties, RelabelingPreservesMonoAndRainbowStatus) {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % 80;
    const std::size_t k = 2 + rng() % 4;
    const unsigned r = 1 + rng() % 6;
    const auto colors = testing::random_colors(rng, n, r);
    std::vector<Color> perm(r);
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Color> relabeled(colors.size());
    std::transform(colors.begin(), colors.end(), relabeled.begin(), [&](Color c) { return perm[c - 1]; });
    const Coloring a(colors, r);
    const Coloring b(relabeled, r);
    EXPECT_EQ(find_mono_kap(a, k).has_value(), find_mono_kap(b, k).has_value());
    EXPECT_EQ(find_rainbow_kap(a, k).has_value(), find_rainbow_kap(b, k).has_value());
  }
}

TEST(Properties, PrefixOfMonoFreeIsMonoFree) {
  std::mt19937_64 rng(17);
  int checked = 0;
  while (checked < 200) {
    const std::size_t n = 2 + rng() % 40;
    const unsigned r = 2 + rng() % 3;
    const Coloring c(testing::random_colors(rng, n, r), r);
    if (find_mono_kap(c, 3)) continue;
    ++checked;
    for (std::size_t m = 1; m <= n; ++m) ASSERT_EQ(find_mono_kap(c.prefix(m), 3), std::nullopt);
  }
}

}  // namespace
}  // namespace vdw
