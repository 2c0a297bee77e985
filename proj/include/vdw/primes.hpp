#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "vdw/error.hpp"

namespace vdw {

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

}  // namespace detail

// Deterministic Miller-Rabin; the first twelve prime bases are a proven
// witness set for all m < 3.3e24, which covers 64-bit inputs.
inline bool is_prime(std::uint64_t m) {
  if (m < 2) return false;
  constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kBases) {
    if (m % p == 0) return m == p;
  }
  std::uint64_t d = m - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : kBases) {
    std::uint64_t x = detail::pow_mod(a, d, m);
    if (x == 1 || x == m - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = detail::mul_mod(x, x, m);
      if (x == m - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline std::optional<std::uint64_t> largest_prime_leq(std::uint64_t m) {
  for (std::uint64_t q = m; q >= 2; --q) {
    if (is_prime(q)) return q;
  }
  return std::nullopt;
}

// Interval [k-1-(k-1)^0.525, k-1] and the primes inside it.
struct PrimeWindow {
  std::uint64_t k = 0;
  double lo = 0.0;
  std::uint64_t hi = 0;
  std::vector<std::uint64_t> primes_found;  // ascending
  std::optional<std::uint64_t> p_star;      // largest prime in the window

  bool empty() const noexcept { return primes_found.empty(); }
  bool contains(double x) const noexcept { return x >= lo && x <= static_cast<double>(hi); }
};

inline constexpr double kBhpExponent = 0.525;

// (k-1) - (k-1)^0.525, rounded down one ulp so the window only widens.
inline double bhp_window_lower(std::uint64_t k) {
  const double x = static_cast<double>(k - 1);
  return std::nextafter(x - std::pow(x, kBhpExponent), -INFINITY);
}

inline PrimeWindow bhp_window(std::uint64_t k) {
  if (k < 3) throw InvalidParameter("bhp_window requires k >= 3");
  PrimeWindow w;
  w.k = k;
  w.hi = k - 1;
  w.lo = bhp_window_lower(k);
  const double start = std::ceil(std::max(w.lo, 0.0));
  for (auto q = static_cast<std::uint64_t>(start); q <= w.hi; ++q) {
    if (is_prime(q)) w.primes_found.push_back(q);
  }
  if (!w.primes_found.empty()) w.p_star = w.primes_found.back();
  return w;
}

// Largest prime in the window without listing the rest; same result as
// bhp_window(k).p_star.
inline std::optional<std::uint64_t> bhp_prime(std::uint64_t k) {
  if (k < 3) throw InvalidParameter("bhp_prime requires k >= 3");
  const double lo = bhp_window_lower(k);
  for (std::uint64_t q = k - 1; q >= 2 && static_cast<double>(q) >= lo; --q) {
    if (is_prime(q)) return q;
  }
  return std::nullopt;
}

// Eratosthenes table: result[m] is true iff m is prime, m <= limit.
inline std::vector<bool> sieve_primes(std::uint64_t limit) {
  std::vector<bool> prime(limit + 1, true);
  prime[0] = false;
  if (limit >= 1) prime[1] = false;
  for (std::uint64_t i = 2; i * i <= limit; ++i) {
    if (!prime[i]) continue;
    for (std::uint64_t j = i * i; j <= limit; j += i) prime[j] = false;
  }
  return prime;
}

}  // namespace vdw
