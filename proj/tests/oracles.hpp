#pragma once

// Independent brute-force references used only by tests. Nothing here calls
// into the code paths it is used to check.

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace vdw::testing {

// All (a, d) with a + (k-1)d <= n, by a double loop in (d, a) order.
inline std::vector<std::pair<std::size_t, std::size_t>> brute_kaps(std::size_t n, std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t d = 1; d <= n; ++d) {
    for (std::size_t a = 1; a <= n; ++a) {
      if (a + (k - 1) * d <= n) out.emplace_back(a, d);
    }
  }
  return out;
}

inline std::uint64_t closed_form_count(std::uint64_t n, std::uint64_t k) {
  std::uint64_t total = 0;
  for (std::uint64_t d = 1; (k - 1) * d <= n - 1; ++d) total += n - (k - 1) * d;
  return total;
}

// First mono AP in (d, a) order over a 1-based color vector (index 0 unused).
inline std::optional<std::pair<std::size_t, std::size_t>> brute_mono(const std::vector<unsigned>& c,
                                                                     std::size_t k) {
  const std::size_t n = c.size();
  for (auto [a, d] : brute_kaps(n, k)) {
    bool mono = true;
    for (std::size_t i = 1; i < k; ++i) mono = mono && c[a - 1 + i * d] == c[a - 1];
    if (mono) return std::make_pair(a, d);
  }
  return std::nullopt;
}

inline std::optional<std::pair<std::size_t, std::size_t>> brute_rainbow(const std::vector<unsigned>& c,
                                                                        std::size_t k) {
  const std::size_t n = c.size();
  for (auto [a, d] : brute_kaps(n, k)) {
    std::set<unsigned> seen;
    for (std::size_t i = 0; i < k; ++i) seen.insert(c[a - 1 + i * d]);
    if (seen.size() == k) return std::make_pair(a, d);
  }
  return std::nullopt;
}

// Incidence counts by adding 1 to every term of every AP.
inline std::vector<std::uint64_t> brute_incidence(std::size_t n, std::size_t k) {
  std::vector<std::uint64_t> count(n + 1, 0);
  for (auto [a, d] : brute_kaps(n, k)) {
    for (std::size_t i = 0; i < k; ++i) ++count[a + i * d];
  }
  return count;
}

inline bool trial_division_prime(std::uint64_t m) {
  if (m < 2) return false;
  for (std::uint64_t q = 2; q * q <= m; ++q) {
    if (m % q == 0) return false;
  }
  return true;
}

inline std::vector<unsigned> random_colors(std::mt19937_64& rng, std::size_t n, unsigned r) {
  std::uniform_int_distribution<unsigned> dist(1, r);
  std::vector<unsigned> c(n);
  for (auto& x : c) x = dist(rng);
  return c;
}

}  // namespace vdw::testing
