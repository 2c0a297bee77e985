#pragma once

// Resampling construction of long monochromatic-k-AP-free colorings in the
// Local Lemma regime: N = floor(r^(k-1) / (8k)), p = r^(1-k), d = 2kN,
// condition e*p*(d+1) <= 1.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "vdw/ap_core.hpp"
#include "vdw/error.hpp"

namespace vdw {

using BigInt = boost::multiprecision::cpp_int;

// Smallest k for which the EL length is certified.
inline constexpr std::size_t kElMinK = 10;
inline constexpr std::uint64_t kDefaultMaxResamples = 1'000'000;

inline BigInt big_pow(std::uint64_t base, std::uint64_t exp) {
  BigInt result = 1;
  BigInt b = base;
  while (exp != 0) {
    if (exp & 1U) result *= b;
    b *= b;
    exp >>= 1U;
  }
  return result;
}

inline BigInt el_interval_length_exact(std::uint64_t r, std::uint64_t k) {
  if (r < 2) throw InvalidParameter("el_interval_length requires r >= 2");
  if (k < 2) throw InvalidParameter("el_interval_length requires k >= 2");
  return big_pow(r, k - 1) / (8 * BigInt(k));
}

// floor(r^(k-1) / (8k)) as a 64-bit value; throws OverflowError otherwise.
inline std::uint64_t el_interval_length(std::uint64_t r, std::uint64_t k) {
  const BigInt n = el_interval_length_exact(r, k);
  if (n > std::numeric_limits<std::uint64_t>::max()) {
    throw OverflowError("el_interval_length(" + std::to_string(r) + ", " + std::to_string(k) +
                        ") needs " + std::to_string(boost::multiprecision::msb(n) + 1) +
                        "-bit integers; use el_interval_length_exact");
  }
  return n.convert_to<std::uint64_t>();
}

enum class LllEvaluation {
  float_upward,    // binary64, every operation rounded up one ulp
  exact_rational,  // integer comparison with a rational upper bound on e
};

struct LLLCheck {
  double p = 0.0;          // r^(1-k)
  std::uint64_t d = 0;     // 2kn
  double lhs = 0.0;        // e*p*(d+1), upward rounded
  bool satisfied = false;  // e*p*(d+1) <= 1 under `method`
  LllEvaluation method = LllEvaluation::float_upward;
};

namespace detail {

inline double up(double x) { return std::nextafter(x, INFINITY); }

// e < 2718281828459045236 / 10^18
inline const BigInt& e_upper_numerator() {
  static const BigInt value("2718281828459045236");
  return value;
}
inline const BigInt& e_upper_denominator() {
  static const BigInt value("1000000000000000000");
  return value;
}

}  // namespace detail

inline LLLCheck lll_condition(std::uint64_t r, std::uint64_t k, std::uint64_t n,
                              LllEvaluation method = LllEvaluation::float_upward) {
  if (r < 2 || k < 2 || n < 1) throw InvalidParameter("lll_condition requires r >= 2, k >= 2, n >= 1");
  LLLCheck check;
  check.method = method;
  const unsigned __int128 d = static_cast<unsigned __int128>(2) * k * n;
  if (d >= std::numeric_limits<std::uint64_t>::max()) throw OverflowError("dependency bound 2kn exceeds 64 bits");
  check.d = static_cast<std::uint64_t>(d);

  check.p = detail::up(std::pow(static_cast<double>(r), 1.0 - static_cast<double>(k)));
  const double e_up = detail::up(std::exp(1.0));
  const double dplus1 = detail::up(static_cast<double>(check.d + 1));
  check.lhs = detail::up(detail::up(e_up * check.p) * dplus1);

  if (method == LllEvaluation::float_upward) {
    check.satisfied = check.lhs <= 1.0;
  } else {
    // e*(d+1) <= r^(k-1)  <=  E*(d+1) <= D * r^(k-1) with E/D >= e
    const BigInt lhs = detail::e_upper_numerator() * BigInt(check.d + 1);
    const BigInt rhs = detail::e_upper_denominator() * big_pow(r, k - 1);
    check.satisfied = lhs <= rhs;
  }
  return check;
}

enum class SamplerMode {
  certified,  // k >= 10 and n = el_interval_length(r, k)
  freeform,   // any k >= 2, any n
};

struct ELParams {
  Color r = 2;
  std::size_t k = kElMinK;
  std::size_t n_target = 1;
  std::uint64_t seed = 0;
  std::uint64_t max_resamples = kDefaultMaxResamples;
  SamplerMode mode = SamplerMode::freeform;
};

inline void validate(const ELParams& params) {
  if (params.k < 2) throw InvalidParameter("sampler requires k >= 2");
  if (params.n_target < 1) throw InvalidParameter("sampler requires n >= 1");
  if (params.r < 1) throw InvalidParameter("sampler requires r >= 1");
  if (params.mode == SamplerMode::certified) {
    if (params.r < 2) throw InvalidParameter("certified sampling requires r >= 2");
    if (params.k < kElMinK) {
      throw InvalidParameter("certified sampling requires k >= " + std::to_string(kElMinK));
    }
    if (params.n_target != el_interval_length(params.r, params.k)) {
      throw InvalidParameter("certified sampling requires n = el_interval_length(r, k)");
    }
  }
}

struct SampleOutcome {
  std::optional<Coloring> coloring;   // set on success
  std::uint64_t resamples = 0;
  std::size_t violated_remaining = 0;  // on failure: mono APs left at the end

  bool success() const noexcept { return coloring.has_value(); }
};

namespace detail {

class Resampler {
 public:
  Resampler(const ELParams& params)
      : r_(params.r), k_(params.k), n_(params.n_target), rng_(params.seed), cells_(n_) {}

  SampleOutcome run(std::uint64_t budget) {
    for (auto& c : cells_) c = draw();
    collect_all();

    SampleOutcome outcome;
    while (!violated_.empty()) {
      if (outcome.resamples == budget) {
        outcome.violated_remaining = violated_.size();
        return outcome;
      }
      const Progression bad = *violated_.begin();
      changed_.clear();
      for (std::size_t i = 0; i < k_; ++i) {
        const std::size_t x = bad.term(i);
        cells_[x - 1] = draw();
        changed_.push_back(x);
      }
      ++outcome.resamples;
      update();
    }
    outcome.coloring.emplace(cells_, r_);
    return outcome;
  }

 private:
  Color draw() {
    // rejection keeps every color equally likely
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % r_;
    std::uint64_t v;
    do {
      v = rng_();
    } while (v >= limit);
    return static_cast<Color>(v % r_) + 1;
  }

  Color at(std::size_t x) const { return cells_[x - 1]; }

  bool mono(const Progression& p) const {
    const Color c = at(p.a);
    for (std::size_t i = 1; i < k_; ++i) {
      if (at(p.term(i)) != c) return false;
    }
    return true;
  }

  void collect_all() {
    violated_.clear();
    if (n_ < k_) return;
    MonoScanner scanner(Coloring(cells_, r_), k_);
    scanner.for_each([&](const Progression& p) {
      violated_.insert(violated_.end(), p);
      return true;
    });
  }

  void update() {
    for (auto it = violated_.begin(); it != violated_.end();) {
      bool touched = false;
      for (std::size_t x : changed_) {
        if (it->contains(x)) {
          touched = true;
          break;
        }
      }
      if (touched && !mono(*it)) {
        it = violated_.erase(it);
      } else {
        ++it;
      }
    }
    if (n_ < k_) return;
    const std::size_t dmax = (n_ - 1) / (k_ - 1);
    for (std::size_t x : changed_) {
      const Color c = at(x);
      for (std::size_t d = 1; d <= dmax; ++d) {
        std::size_t lo = x;
        while (lo > d && at(lo - d) == c) lo -= d;
        std::size_t hi = x;
        while (hi + d <= n_ && at(hi + d) == c) hi += d;
        const std::size_t run = (hi - lo) / d + 1;
        if (run < k_) continue;
        for (std::size_t a = lo; a + (k_ - 1) * d <= hi; a += d) violated_.insert(Progression{a, d, k_});
      }
    }
  }

  Color r_;
  std::size_t k_;
  std::size_t n_;
  std::mt19937_64 rng_;
  std::vector<Color> cells_;
  std::set<Progression> violated_;
  std::vector<std::size_t> changed_;
};

}  // namespace detail

// Random initial coloring, then repeatedly re-randomize the first violated
// k-AP in (d, a) order. Deterministic in params.seed. Success means the
// incrementally maintained violated set emptied; callers that hand the result
// on (construct, the acceptance run) re-verify it with find_mono_kap.
inline SampleOutcome sample_mono_free(const ELParams& params) {
  validate(params);
  if (params.r == 1 && params.n_target >= params.k) {
    SampleOutcome failed;
    failed.violated_remaining = count_kaps(params.n_target, params.k);
    return failed;
  }
  detail::Resampler resampler(params);
  return resampler.run(params.max_resamples);
}

}  // namespace vdw
