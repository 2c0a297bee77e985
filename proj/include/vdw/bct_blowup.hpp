#pragma once

// Blow-up of a mono-k-AP-free (r-1)-coloring of [M] into a mono-k-AP-free
// r-coloring of [pM], for a prime p with r <= p <= k.
//
// Cell i = (j-1)p + s + 1 (block j, offset s in 0..p-1) gets the base color
// of block j, except offset s = base(j) - 1 which gets the new color r.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "vdw/ap_core.hpp"
#include "vdw/error.hpp"
#include "vdw/primes.hpp"

namespace vdw {

using BigInt = boost::multiprecision::cpp_int;

// Cell count above which bases are not re-verified by default and lifts are
// not materialized.
inline constexpr std::uint64_t kMaterializeLimit = 10'000'000;

struct BlowupParams {
  Coloring base;
  std::uint64_t p = 2;
  Color r = 2;
  std::size_t k = 2;
};

enum class BaseCheck { automatic, on, off };

struct BlowupOptions {
  BaseCheck check = BaseCheck::automatic;
  // Skip the r <= p, p <= k and primality hypotheses. Test probes only.
  bool unsafe_construction = false;
};

// The base handed to blow_up already has a monochromatic k-AP.
class BaseNotMonoFree : public HypothesisError {
 public:
  explicit BaseNotMonoFree(const Progression& witness)
      : HypothesisError("base coloring has a monochromatic k-AP at " + to_string(witness)),
        witness_(witness) {}
  const Progression& witness() const noexcept { return witness_; }

 private:
  Progression witness_;
};

namespace detail {

inline void check_blowup_hypotheses(std::uint64_t p, Color r, std::size_t k, bool unsafe) {
  if (r < 2) throw HypothesisError("blow-up requires r >= 2, got r=" + std::to_string(r));
  if (k < 2) throw HypothesisError("blow-up requires k >= 2");
  if (p < 1) throw HypothesisError("blow-up requires p >= 1");
  if (unsafe) return;
  if (!is_prime(p)) throw HypothesisError("blow-up requires p prime, got p=" + std::to_string(p));
  if (r > p) {
    throw HypothesisError("blow-up requires r <= p, got r=" + std::to_string(r) +
                          " p=" + std::to_string(p));
  }
  if (p > k) {
    throw HypothesisError("blow-up requires p <= k, got p=" + std::to_string(p) +
                          " k=" + std::to_string(k));
  }
}

inline void check_base_palette(const Coloring& base, Color max_color) {
  for (std::size_t j = 1; j <= base.size(); ++j) {
    if (base(j) > max_color) {
      throw HypothesisError("base color " + std::to_string(base(j)) + " at position " +
                            std::to_string(j) + " exceeds " + std::to_string(max_color));
    }
  }
}

inline bool should_check(BaseCheck mode, std::uint64_t cells) {
  switch (mode) {
    case BaseCheck::on: return true;
    case BaseCheck::off: return false;
    case BaseCheck::automatic: return cells <= kMaterializeLimit;
  }
  return true;
}

}  // namespace detail

inline Coloring blow_up(const BlowupParams& params, const BlowupOptions& options = {}) {
  detail::check_blowup_hypotheses(params.p, params.r, params.k, options.unsafe_construction);
  detail::check_base_palette(params.base, params.r - 1);

  const std::size_t m = params.base.size();
  const unsigned __int128 length = static_cast<unsigned __int128>(params.p) * m;
  if (length > kMaterializeLimit) {
    throw OverflowError("blow-up output of " + std::to_string(static_cast<std::uint64_t>(length)) +
                        " cells exceeds the materialization limit");
  }
  if (detail::should_check(options.check, static_cast<std::uint64_t>(length))) {
    if (auto witness = find_mono_kap(params.base, params.k)) throw BaseNotMonoFree(*witness);
  }

  std::vector<Color> cells;
  cells.reserve(static_cast<std::size_t>(length));
  for (std::size_t j = 1; j <= m; ++j) {
    const Color base_color = params.base(j);
    const std::uint64_t reserved = base_color - 1;  // tau(j)
    for (std::uint64_t s = 0; s < params.p; ++s) {
      cells.push_back(s == reserved ? params.r : base_color);
    }
  }
  return Coloring(std::move(cells), params.r);
}

struct BlowupStep {
  std::uint64_t p = 0;
  Color r = 0;  // color count after this step
};

// Exact size of an iterated lift, without building it.
struct LiftPlan {
  BigInt length;
  double log2_length = 0.0;
  std::vector<BlowupStep> steps;
};

inline LiftPlan plan_blowup(const BigInt& base_length, std::uint64_t p, Color r_from, Color r_to,
                            std::size_t k, bool unsafe = false) {
  if (r_from < 2) {
    throw HypothesisError("iterated blow-up starts from r >= 2 colors, got r_from=" +
                          std::to_string(r_from));
  }
  if (r_to < r_from) throw InvalidParameter("r_to must be >= r_from");
  LiftPlan plan;
  plan.length = base_length;
  for (Color r = r_from + 1; r <= r_to; ++r) {
    detail::check_blowup_hypotheses(p, r, k, unsafe);
    plan.length *= p;
    plan.steps.push_back({p, r});
  }
  using boost::multiprecision::msb;
  const auto top = msb(base_length);
  // log2 of the leading 53 bits plus the shift
  const unsigned shift = top > 52 ? static_cast<unsigned>(top - 52) : 0U;
  const double mantissa = static_cast<BigInt>(base_length >> shift).convert_to<double>();
  plan.log2_length = std::log2(mantissa) + shift +
                     static_cast<double>(plan.steps.size()) * std::log2(static_cast<double>(p));
  return plan;
}

struct LiftResult {
  Coloring coloring;
  std::vector<BlowupStep> steps;
};

// Applies blow_up for r = r_from+1 .. r_to at the same prime p. The base is
// checked once (per options.check); intermediate lifts are not re-verified.
inline LiftResult iterate_blowup(const Coloring& base, std::uint64_t p, Color r_from, Color r_to,
                                 std::size_t k, const BlowupOptions& options = {}) {
  const LiftPlan plan = plan_blowup(BigInt(base.size()), p, r_from, r_to, k,
                                    options.unsafe_construction);
  detail::check_base_palette(base, r_from);
  if (plan.length > kMaterializeLimit) {
    throw OverflowError("iterated blow-up length 2^" + std::to_string(plan.log2_length) +
                        " exceeds the materialization limit of " +
                        std::to_string(kMaterializeLimit) + " cells");
  }
  if (detail::should_check(options.check, base.size())) {
    if (auto witness = find_mono_kap(base, k)) throw BaseNotMonoFree(*witness);
  }

  LiftResult result{base.with_num_colors(r_from), plan.steps};
  BlowupOptions step_options = options;
  step_options.check = BaseCheck::off;
  for (const BlowupStep& step : plan.steps) {
    result.coloring = blow_up({result.coloring, step.p, step.r, k}, step_options);
  }
  return result;
}

}  // namespace vdw
