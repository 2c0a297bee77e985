#pragma once

// End-to-end witness pipeline: a mono-free base at r0 colors (EL sampler,
// exact oracle, or the trivial base [k-1]), lifted by iterated blow-up at
// one prime up to r colors, verified, and written out as a certificate. With
// r < k the final coloring is rainbow-free by pigeonhole.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vdw/ap_core.hpp"
#include "vdw/bct_blowup.hpp"
#include "vdw/bound_chain.hpp"
#include "vdw/certificate.hpp"
#include "vdw/error.hpp"
#include "vdw/exact_oracle.hpp"
#include "vdw/lll_sampler.hpp"
#include "vdw/primes.hpp"

namespace vdw {

enum class BaseSource {
  automatic,  // EL sampler when floor(r0^(k-1)/(8k)) >= 1, otherwise the oracle
  el,
  oracle,
};

struct ConstructOptions {
  std::uint64_t k = 3;
  std::optional<Color> r0;        // default floor(k / log k), at least 2
  std::optional<Color> r_target;  // default k - 1
  std::uint64_t seed = 0;
  std::uint64_t max_resamples = kDefaultMaxResamples;
  SearchBudget oracle_budget{};
  BaseSource base = BaseSource::automatic;
};

// The EL sampler ran out of resamples.
class SamplerFailure : public Error {
 public:
  SamplerFailure(const ELParams& params, const SampleOutcome& outcome)
      : Error("sampler failed for r=" + std::to_string(params.r) + " k=" + std::to_string(params.k) +
              " n=" + std::to_string(params.n_target) + " seed=" + std::to_string(params.seed) +
              " after " + std::to_string(outcome.resamples) + " resamples; " +
              std::to_string(outcome.violated_remaining) + " monochromatic APs remain"),
        outcome_(outcome) {}
  const SampleOutcome& outcome() const noexcept { return outcome_; }

 private:
  SampleOutcome outcome_;
};

struct ConstructResult {
  Certificate certificate;
  std::vector<std::string> notices;
};

struct PrimeChoice {
  std::uint64_t p = 0;
  std::string source;  // bhp | fallback-k-1 | fallback-k
};

// Prime for the blow-up steps: the window prime when it exceeds r0,
// otherwise the largest prime <= k-1, otherwise the largest prime <= k.
inline std::optional<PrimeChoice> choose_prime(std::uint64_t k, Color r0) {
  if (auto p = bhp_prime(k); p && *p > r0) return PrimeChoice{*p, "bhp"};
  if (auto p = largest_prime_leq(k - 1); p && *p > r0) return PrimeChoice{*p, "fallback-k-1"};
  if (auto p = largest_prime_leq(k); p && *p > r0) return PrimeChoice{*p, "fallback-k"};
  return std::nullopt;
}

namespace detail {

inline ChainStep step(std::string kind, std::vector<std::pair<std::string, std::string>> fields) {
  return ChainStep{std::move(kind), std::move(fields)};
}

inline std::string str(std::uint64_t v) { return std::to_string(v); }

}  // namespace detail

inline ConstructResult construct(const ConstructOptions& opt) {
  if (opt.k < 3) throw InvalidParameter("construct requires k >= 3");
  const std::uint64_t k = opt.k;
  const Color r0 = std::max<Color>(2, opt.r0.value_or(static_cast<Color>(chain_r0(k))));
  Color r_final = std::max(r0, opt.r_target.value_or(static_cast<Color>(k - 1)));

  ConstructResult result;
  Certificate& cert = result.certificate;
  cert.k = k;

  std::optional<PrimeChoice> prime;
  if (r_final > r0) {
    prime = choose_prime(k, r0);
    if (prime) {
      r_final = std::min<Color>(r_final, static_cast<Color>(prime->p));
    } else {
      result.notices.push_back("no prime p with r0 < p <= k; no blow-up steps");
      r_final = r0;
    }
  }

  BaseSource source = opt.base;
  const BigInt el_length = el_interval_length_exact(r0, k);
  if (source == BaseSource::automatic) {
    source = el_length >= 1 ? BaseSource::el : BaseSource::oracle;
    if (el_length < 1) {
      result.notices.push_back("EL length floor(r0^(k-1)/(8k)) is 0; using the exact oracle base");
    }
  }
  if (source == BaseSource::el && el_length < 1) {
    throw InvalidParameter("EL base is empty: floor(" + std::to_string(r0) + "^" +
                           std::to_string(k - 1) + "/(8*" + std::to_string(k) + ")) = 0");
  }

  // Metadata-only when the EL lift cannot be materialized.
  if (source == BaseSource::el) {
    const LiftPlan plan = plan_blowup(el_length, prime ? prime->p : 2, r0, r_final, k);
    if (plan.length > kMaterializeLimit) {
      cert.method_chain.push_back(detail::step(
          "el-sample", {{"r", detail::str(r0)}, {"k", detail::str(k)}, {"n", el_length.str()},
                        {"seed", detail::str(opt.seed)}}));
      for (const BlowupStep& s : plan.steps) {
        cert.method_chain.push_back(detail::step(
            "bct-blowup", {{"p", detail::str(s.p)}, {"r", detail::str(s.r)}, {"prime", prime->source}}));
      }
      cert.r = r_final;
      cert.n = plan.length;
      cert.claims.mono_free = k >= kElMinK;
      cert.claims.rainbow_free = cert.claims.mono_free && r_final < k;
      seal(cert);
      result.notices.push_back("length 2^" + std::to_string(plan.log2_length) +
                               " exceeds the materialization limit; payload omitted");
      return result;
    }
  }

  std::optional<Coloring> base;
  if (source == BaseSource::el) {
    ELParams params;
    params.r = r0;
    params.k = k;
    params.n_target = el_length.convert_to<std::size_t>();
    params.seed = opt.seed;
    params.max_resamples = opt.max_resamples;
    params.mode = k >= kElMinK ? SamplerMode::certified : SamplerMode::freeform;
    const SampleOutcome outcome = sample_mono_free(params);
    if (!outcome.success()) throw SamplerFailure(params, outcome);
    base = outcome.coloring;
    cert.method_chain.push_back(detail::step(
        "el-sample", {{"r", detail::str(r0)}, {"k", detail::str(k)}, {"n", el_length.str()},
                      {"seed", detail::str(opt.seed)}, {"resamples", detail::str(outcome.resamples)}}));
  } else {
    const OracleResult oracle = exact_W(r0, k, opt.oracle_budget);
    if (oracle.exact()) {
      base = oracle.witness->with_num_colors(r0);
      cert.method_chain.push_back(
          detail::step("oracle-witness", {{"r", detail::str(r0)}, {"k", detail::str(k)}}));
    } else {
      base = Coloring::constant(k - 1, r0);
      cert.method_chain.push_back(
          detail::step("trivial", {{"r", detail::str(r0)}, {"n", detail::str(k - 1)}}));
      result.notices.push_back("oracle budget exhausted; using the trivial base [k-1]");
    }
  }

  LiftResult lift = iterate_blowup(*base, prime ? prime->p : 2, r0, r_final, k);
  for (const BlowupStep& s : lift.steps) {
    cert.method_chain.push_back(detail::step(
        "bct-blowup", {{"p", detail::str(s.p)}, {"r", detail::str(s.r)}, {"prime", prime->source}}));
  }

  const Coloring& final_coloring = lift.coloring;
  if (auto witness = find_mono_kap(final_coloring, k)) {
    throw std::logic_error("construct produced a monochromatic k-AP at " + to_string(*witness));
  }
  cert.claims.mono_free = true;
  if (final_coloring.distinct_colors() < k) {
    cert.claims.rainbow_free = true;
  } else if (auto rainbow = find_rainbow_kap(final_coloring, k)) {
    result.notices.push_back("final coloring uses k colors and has a rainbow k-AP at " +
                             to_string(*rainbow) + "; rainbow-free not claimed");
  } else {
    cert.claims.rainbow_free = true;
  }
  cert.r = r_final;
  cert.n = final_coloring.size();
  cert.colors = std::vector<Color>(final_coloring.values().begin(), final_coloring.values().end());
  seal(cert);
  return result;
}

// Rebuilds the payload from the method chain alone.
inline Coloring replay(const Certificate& cert, const SearchBudget& budget = {}) {
  if (cert.method_chain.empty()) throw InvalidParameter("certificate has an empty method chain");
  const ChainStep& first = cert.method_chain.front();
  std::optional<Coloring> current;
  if (first.kind == "el-sample") {
    ELParams params;
    params.r = static_cast<Color>(first.get_u64("r"));
    params.k = first.get_u64("k");
    params.n_target = first.get_u64("n");
    params.seed = first.get_u64("seed");
    if (first.find("resamples") != nullptr) {
      params.max_resamples = std::max(params.max_resamples, first.get_u64("resamples"));
    }
    const SampleOutcome outcome = sample_mono_free(params);
    if (!outcome.success()) throw SamplerFailure(params, outcome);
    current = outcome.coloring;
  } else if (first.kind == "oracle-witness") {
    const std::uint64_t r = first.get_u64("r");
    const OracleResult oracle = exact_W(r, first.get_u64("k"), budget);
    if (!oracle.exact()) throw Error("oracle budget exhausted during replay");
    current = oracle.witness->with_num_colors(static_cast<Color>(r));
  } else if (first.kind == "trivial") {
    current = Coloring::constant(first.get_u64("n"), static_cast<Color>(first.get_u64("r")));
  } else {
    throw InvalidParameter("unknown base step '" + first.kind + "'");
  }
  for (std::size_t i = 1; i < cert.method_chain.size(); ++i) {
    const ChainStep& s = cert.method_chain[i];
    if (s.kind != "bct-blowup") throw InvalidParameter("unexpected chain step '" + s.kind + "'");
    current = blow_up({*current, s.get_u64("p"), static_cast<Color>(s.get_u64("r")), cert.k},
                      {BaseCheck::off, false});
  }
  return *current;
}

}  // namespace vdw
