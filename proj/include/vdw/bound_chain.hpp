#pragma once

// Log-space evaluation of the lower bound
//
//   H(k) >= p*^(p* - r0) * r0^(k-1) / (16k),   r0 = floor(k / log k),
//
// with p* the largest prime in [k-1-(k-1)^0.525, k-1], its k-th-root
// factorization, the separation function f(k) and the R(r0) landscape.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vdw/error.hpp"
#include "vdw/primes.hpp"

namespace vdw {

// Smallest k at which k/log k < k-1-k^0.525 is proven to hold.
inline constexpr std::uint64_t kSeparationThreshold = 10'000;
inline constexpr double kGapExponent = 0.475;  // 1 - 0.525

enum class ChainStatus { certified, heuristic };

inline const char* to_string(ChainStatus s) {
  return s == ChainStatus::certified ? "certified" : "heuristic";
}

// Where p* came from when the prime window is empty or too low.
enum class PrimeSource { bhp_window, fallback };

struct ChainParams {
  double eps_constant = 3.0;  // C in eps_k_bound = C k^-0.475 log k; not optimized
};

struct ChainReport {
  std::uint64_t k = 0;
  std::uint64_t r0 = 0;
  std::uint64_t p_star = 0;
  PrimeSource prime_source = PrimeSource::bhp_window;
  double log_a_r0_lower = 0.0;   // (k-1) log r0 - log(16k)
  double log_chain_lower = 0.0;  // (p*-r0) log p* + log_a_r0_lower
  double ratio_lower = 0.0;      // exp(log_chain_lower / k) / k
  double factor1 = 0.0;          // (16k)^(-1/k)
  double factor2 = 0.0;          // r0^((k-1)/k)
  double factor3 = 0.0;          // p*^((p*-r0)/k) / k
  double f_k = 0.0;              // k - 1 - k^0.525 - k/log k
  double eps_constant = 3.0;
  double eps_k_bound = 0.0;      // C k^-0.475 log k
  ChainStatus status = ChainStatus::heuristic;
  std::vector<std::string> notes;  // reasons a report is heuristic
};

inline double separation_value(double k) {
  return k - 1.0 - std::pow(k, 0.525) - k / std::log(k);
}

// floor(k / log k), computed in binary64.
inline std::uint64_t chain_r0(std::uint64_t k) {
  const double kd = static_cast<double>(k);
  return static_cast<std::uint64_t>(std::floor(kd / std::log(kd)));
}

inline ChainReport chain_lower_bound(std::uint64_t k, const ChainParams& params = {}) {
  if (k < 3) throw InvalidParameter("chain_lower_bound requires k >= 3");
  ChainReport rep;
  rep.k = k;
  const double kd = static_cast<double>(k);
  const double logk = std::log(kd);
  rep.r0 = chain_r0(k);

  if (auto p = bhp_prime(k)) {
    rep.p_star = *p;
  } else {
    rep.p_star = largest_prime_leq(k - 1).value_or(2);
    rep.prime_source = PrimeSource::fallback;
    rep.notes.emplace_back("prime window empty; p* is the largest prime <= k-1");
  }

  const double r0 = static_cast<double>(rep.r0);
  const double p = static_cast<double>(rep.p_star);
  const double steps = p - r0;
  rep.log_a_r0_lower = (kd - 1.0) * std::log(r0) - std::log(16.0 * kd);
  rep.log_chain_lower = steps * std::log(p) + rep.log_a_r0_lower;
  rep.ratio_lower = std::exp(rep.log_chain_lower / kd) / kd;
  rep.factor1 = std::exp(-std::log(16.0 * kd) / kd);
  rep.factor2 = std::exp((kd - 1.0) / kd * std::log(r0));
  rep.factor3 = std::exp(steps / kd * std::log(p) - logk);
  rep.f_k = separation_value(kd);
  rep.eps_constant = params.eps_constant;
  rep.eps_k_bound = params.eps_constant * std::pow(kd, -kGapExponent) * logk;

  if (k < kSeparationThreshold) rep.notes.emplace_back("k below 10^4");
  if (rep.r0 < 2) rep.notes.emplace_back("r0 < 2");
  if (rep.r0 >= rep.p_star) rep.notes.emplace_back("r0 >= p*");
  rep.status = rep.notes.empty() ? ChainStatus::certified : ChainStatus::heuristic;
  return rep;
}

inline constexpr const char* kChainCsvHeader = "k,r0,p_star,factor1,factor2,factor3,ratio_lower,f_k,status";

inline std::string to_csv_row(const ChainReport& rep) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%llu,%llu,%llu,%.17g,%.17g,%.17g,%.17g,%.17g,%s",
                static_cast<unsigned long long>(rep.k), static_cast<unsigned long long>(rep.r0),
                static_cast<unsigned long long>(rep.p_star), rep.factor1, rep.factor2, rep.factor3,
                rep.ratio_lower, rep.f_k, to_string(rep.status));
  return buf;
}

// One analytic lower bound next to the quantity it bounds.
struct BoundCheck {
  double computed = 0.0;
  double bound = 0.0;
  bool holds() const noexcept { return computed >= bound; }
};

struct FactorBounds {
  std::uint64_t k = 0;
  BoundCheck log_p_star;     // log p* >= log k - 4 k^-0.475
  BoundCheck p_ratio;        // (p*-r0)/k >= 1 - 1/log k - 2 k^-0.475
  BoundCheck product;        // (p*-r0)/k * log p* >= log k - 1 - C1 k^-0.475 log k
  double c1 = 3.0;
};

// Valid only for k >= 10^4, where both analytic bounds are positive.
inline FactorBounds factor_bounds(std::uint64_t k, double c1 = 3.0) {
  if (k < kSeparationThreshold) {
    throw RegimeError("factor_bounds: k=" + std::to_string(k) + " is below 10^4");
  }
  const ChainReport rep = chain_lower_bound(k);
  if (rep.prime_source != PrimeSource::bhp_window) {
    throw RegimeError("factor_bounds: prime window empty at k=" + std::to_string(k));
  }
  const double kd = static_cast<double>(k);
  const double logk = std::log(kd);
  const double gap = std::pow(kd, -kGapExponent);
  FactorBounds fb;
  fb.k = k;
  fb.c1 = c1;
  const double log_p = std::log(static_cast<double>(rep.p_star));
  const double ratio = (static_cast<double>(rep.p_star) - static_cast<double>(rep.r0)) / kd;
  fb.log_p_star = {log_p, logk - 4.0 * gap};
  fb.p_ratio = {ratio, 1.0 - 1.0 / logk - 2.0 * gap};
  fb.product = {ratio * log_p, logk - 1.0 - c1 * gap * logk};
  return fb;
}

struct RSweepPoint {
  double r0 = 0.0;
  double log_R = 0.0;  // log r0 - r0 log k / k
  double R = 0.0;
};

inline RSweepPoint r_value(double k, double r0) {
  RSweepPoint pt;
  pt.r0 = r0;
  pt.log_R = std::log(r0) - r0 * std::log(k) / k;
  pt.R = std::exp(pt.log_R);
  return pt;
}

struct RSweep {
  std::vector<RSweepPoint> points;
  std::size_t argmax = 0;
  const RSweepPoint& best() const { return points.at(argmax); }
};

inline RSweep sweep_R(double k, const std::vector<double>& grid) {
  if (k < 3) throw InvalidParameter("sweep_R requires k >= 3");
  if (grid.empty()) throw InvalidParameter("sweep_R requires a nonempty grid");
  RSweep sweep;
  for (double r0 : grid) {
    if (!(r0 >= 2.0 && r0 <= k - 1.0)) {
      throw InvalidParameter("sweep_R grid point " + std::to_string(r0) + " outside [2, k-1]");
    }
    sweep.points.push_back(r_value(k, r0));
    if (sweep.points.back().log_R > sweep.points[sweep.argmax].log_R) {
      sweep.argmax = sweep.points.size() - 1;
    }
  }
  return sweep;
}

// lo, lo+step, ..., up to hi.
inline std::vector<double> linear_grid(double lo, double hi, double step) {
  std::vector<double> grid;
  for (std::size_t i = 0;; ++i) {
    const double x = lo + static_cast<double>(i) * step;
    if (x > hi) break;
    grid.push_back(x);
  }
  return grid;
}

struct SeparationCheck {
  bool positive = false;
  double f = 0.0;
  double f_prime = 0.0;  // 1 - 0.525 k^-0.475 - (log k - 1) / (log k)^2
};

inline SeparationCheck separation_check(std::uint64_t k) {
  if (k < 3) throw InvalidParameter("separation_check requires k >= 3");
  const double kd = static_cast<double>(k);
  const double logk = std::log(kd);
  SeparationCheck s;
  s.f = separation_value(kd);
  s.positive = s.f > 0.0;
  s.f_prime = 1.0 - 0.525 * std::pow(kd, -kGapExponent) - (logk - 1.0) / (logk * logk);
  return s;
}

struct EpsRow {
  std::uint64_t k = 0;
  double normalized = 0.0;  // ratio_lower * e * log k / k
};

struct EpsReport {
  std::vector<EpsRow> rows;
  bool increasing = true;  // strictly, pairwise along the grid
  bool in_band = true;     // every normalized value in (0, band]
  double band = 1.01;
};

inline EpsReport eps_report(const std::vector<std::uint64_t>& k_grid, double band = 1.01) {
  EpsReport rep;
  rep.band = band;
  for (std::uint64_t k : k_grid) {
    const ChainReport chain = chain_lower_bound(k);
    const double kd = static_cast<double>(k);
    const double normalized = chain.ratio_lower * std::numbers::e * std::log(kd) / kd;
    if (!rep.rows.empty() && !(normalized > rep.rows.back().normalized)) rep.increasing = false;
    if (!(normalized > 0.0 && normalized <= band)) rep.in_band = false;
    rep.rows.push_back({k, normalized});
  }
  return rep;
}

}  // namespace vdw
