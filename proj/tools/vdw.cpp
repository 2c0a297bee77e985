// vdw: build, verify and analyze certified monochromatic-k-AP-free colorings.
//
// Exit codes: 0 pass, 1 property failure, 2 parse/IO/usage, 3 budget or
// size guard, 4 regime refused, 5 checksum mismatch, 6 metadata-only pass.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vdw/ap_core.hpp"
#include "vdw/bct_blowup.hpp"
#include "vdw/bound_chain.hpp"
#include "vdw/certificate.hpp"
#include "vdw/exact_oracle.hpp"
#include "vdw/lll_sampler.hpp"
#include "vdw/pipeline.hpp"
#include "vdw/primes.hpp"

namespace {

enum Exit : int {
  kPass = 0,
  kPropertyFailure = 1,
  kParseOrIo = 2,
  kBudget = 3,
  kRegimeRefused = 4,
  kChecksumMismatch = 5,
  kMetadataOnly = 6,
};

std::string join_colors(std::span<const vdw::Color> colors) {
  std::string out;
  for (std::size_t i = 0; i < colors.size(); ++i) {
    if (i != 0) out += ' ';
    out += std::to_string(colors[i]);
  }
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct BudgetFlags {
  std::optional<std::uint64_t> nodes;
  std::optional<double> seconds;

  void add_to(CLI::App* app) {
    app->add_option("--budget-nodes", nodes, "search node limit (env VDW_BUDGET_NODES)");
    app->add_option("--budget-seconds", seconds, "search time limit (env VDW_BUDGET_SECONDS)");
  }
  vdw::SearchBudget budget() const {
    vdw::SearchBudget b = vdw::SearchBudget::from_environment();
    if (nodes) b.node_limit = *nodes;
    if (seconds) b.time_limit_seconds = *seconds;
    return b;
  }
};

int run_exact(const std::string& what, std::uint64_t r, std::uint64_t k, std::uint64_t n,
              const vdw::SearchBudget& budget, const std::string& format) {
  vdw::OracleResult res;
  std::string quantity;
  if (what == "W") {
    res = vdw::exact_W(r, k, budget);
    quantity = "W";
  } else if (what == "aw") {
    res = vdw::exact_aw(n, k, budget);
    quantity = "aw";
  } else {
    res = vdw::exact_H(k, budget);
    quantity = "H";
  }
  const std::string value = res.value ? std::to_string(*res.value) : "";
  const std::string witness = res.witness ? join_colors(res.witness->values()) : "";
  if (format == "csv") {
    std::cout << "quantity,r,k,n,value,status,nodes,witness\n"
              << quantity << ',' << (what == "W" ? std::to_string(r) : "") << ',' << k << ','
              << (what == "aw" ? std::to_string(n) : "") << ',' << value << ','
              << vdw::to_string(res.status) << ',' << res.nodes << ',' << witness << '\n';
  } else {
    if (res.value) std::cout << *res.value << '\n';
    std::cout << "quantity=" << quantity << "\nstatus=" << vdw::to_string(res.status)
              << "\nnodes=" << res.nodes << '\n';
    if (res.witness) std::cout << "witness=" << witness << '\n';
  }
  return res.exact() ? kPass : kBudget;
}

int run_verify(const std::string& path, bool do_replay, const vdw::SearchBudget& budget) {
  vdw::Certificate cert;
  try {
    cert = vdw::load_certificate(path);
  } catch (const vdw::ParseError& e) {
    std::cerr << path << ": parse error at " << e.what() << '\n';
    return kParseOrIo;
  } catch (const vdw::Error& e) {
    std::cerr << e.what() << '\n';
    return kParseOrIo;
  }
  const vdw::VerificationReport report = vdw::verify_certificate(cert);
  std::cout << "k=" << cert.k << "\nr=" << cert.r << "\nn=" << cert.n << '\n';
  std::cout << "checksum=" << (report.checksum_ok ? "ok" : "MISMATCH") << '\n';
  for (const auto& claim : report.claims) {
    std::cout << "claim " << claim.claim << ": " << (claim.holds ? "holds" : "FAILS");
    if (claim.by_pigeonhole) std::cout << " (by pigeonhole: fewer than k colors)";
    if (claim.witness) std::cout << " witness " << vdw::to_string(*claim.witness);
    std::cout << '\n';
  }
  if (report.verdict == vdw::Verdict::metadata_only) {
    std::cout << "payload omitted: structure and checksum only\n";
  }
  int code = kPass;
  switch (report.verdict) {
    case vdw::Verdict::pass: code = kPass; break;
    case vdw::Verdict::property_failure: code = kPropertyFailure; break;
    case vdw::Verdict::checksum_mismatch: code = kChecksumMismatch; break;
    case vdw::Verdict::metadata_only: code = kMetadataOnly; break;
  }
  if (do_replay && code == kPass) {
    const vdw::Coloring rebuilt = vdw::replay(cert, budget);
    const bool same = std::vector<vdw::Color>(rebuilt.values().begin(), rebuilt.values().end()) == *cert.colors;
    std::cout << "replay=" << (same ? "identical" : "DIFFERS") << '\n';
    if (!same) code = kPropertyFailure;
  }
  std::cout << "verdict=" << vdw::to_string(report.verdict) << '\n';
  return code;
}

void print_kv_chain(const vdw::ChainReport& rep) {
  std::cout << "k=" << rep.k << "\nr0=" << rep.r0 << "\np_star=" << rep.p_star
            << "\nlog_a_r0_lower=" << fmt(rep.log_a_r0_lower)
            << "\nlog_chain_lower=" << fmt(rep.log_chain_lower) << "\nratio_lower=" << fmt(rep.ratio_lower)
            << "\nfactor1=" << fmt(rep.factor1) << "\nfactor2=" << fmt(rep.factor2)
            << "\nfactor3=" << fmt(rep.factor3) << "\nf_k=" << fmt(rep.f_k)
            << "\neps_constant=" << fmt(rep.eps_constant) << "\neps_k_bound=" << fmt(rep.eps_k_bound)
            << "\nstatus=" << vdw::to_string(rep.status) << '\n';
  for (const auto& note : rep.notes) std::cout << "note=" << note << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified monochromatic-k-AP-free colorings and lower-bound chains"};
  app.require_subcommand(1);
  std::string format = "kv";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"kv", "csv"}));

  // construct
  auto* construct = app.add_subcommand("construct", "EL base + blow-up lift, written as a certificate");
  vdw::ConstructOptions copt;
  std::optional<vdw::Color> c_r0, c_rt;
  std::string c_base = "auto";
  std::string c_out;
  BudgetFlags c_budget;
  construct->add_option("--k", copt.k, "AP length")->required();
  construct->add_option("--r0", c_r0, "base color count (default floor(k/log k), min 2)");
  construct->add_option("--r", c_rt, "target color count (default k-1)");
  construct->add_option("--seed", copt.seed, "sampler seed");
  construct->add_option("--max-resamples", copt.max_resamples, "sampler budget");
  construct->add_option("--base", c_base, "base source")->check(CLI::IsMember({"auto", "el", "oracle"}));
  construct->add_option("--out", c_out, "certificate path (default stdout)");
  c_budget.add_to(construct);

  // verify
  auto* verify = app.add_subcommand("verify", "re-verify a certificate file");
  std::string v_path;
  bool v_replay = false;
  BudgetFlags v_budget;
  verify->add_option("file", v_path, "certificate")->required();
  verify->add_flag("--replay", v_replay, "also rebuild the payload from the method chain");
  v_budget.add_to(verify);

  // exact
  auto* exact = app.add_subcommand("exact", "exact W(r,k), aw([n],k) or H(k) by exhaustive search");
  std::uint64_t e_r = 2, e_k = 3, e_n = 0;
  std::string e_what = "W";
  BudgetFlags e_budget;
  exact->add_option("--r", e_r, "color count (W)");
  exact->add_option("--k", e_k, "AP length")->required();
  exact->add_option("--n", e_n, "interval length (aw)");
  exact->add_option("--what", e_what, "quantity")->check(CLI::IsMember({"W", "aw", "H"}));
  e_budget.add_to(exact);

  // bound
  auto* bound = app.add_subcommand("bound", "evaluate the lower-bound chain for H(k)^(1/k)/k");
  std::vector<std::uint64_t> b_k;
  double b_eps = 3.0;
  double b_c1 = 3.0;
  bool b_certified = false;
  bool b_factors = false;
  bound->add_option("--k", b_k, "AP length(s)")->required();
  bound->add_option("--eps-constant", b_eps, "constant C in C k^-0.475 log k");
  bound->add_option("--c1", b_c1, "constant C1 in the product bound (advisory)");
  bound->add_flag("--certified", b_certified, "refuse (exit 4) unless every row is certified");
  bound->add_flag("--factors", b_factors, "also report the analytic factor bounds (k >= 10^4)");

  // primes
  auto* primes = app.add_subcommand("primes", "primes in [k-1-(k-1)^0.525, k-1]");
  std::uint64_t p_k = 0;
  primes->add_option("--k", p_k, "AP length")->required();

  // sweep-r0
  auto* sweep = app.add_subcommand("sweep-r0", "R(r0) = r0 exp(-r0 log k / k) over a grid");
  double s_k = 0, s_step = 1, s_lo = 2;
  std::optional<double> s_hi;
  sweep->add_option("--k", s_k, "AP length")->required();
  sweep->add_option("--step", s_step, "grid step");
  sweep->add_option("--lo", s_lo, "first r0 candidate");
  sweep->add_option("--hi", s_hi, "last r0 candidate (default k-1)");

  // sample
  auto* sample = app.add_subcommand("sample", "resampling search for a mono-free r-coloring of [n]");
  vdw::ELParams sp;
  std::optional<std::size_t> sp_n;
  bool sp_exact = false;
  std::string sp_out;
  sample->add_option("--r", sp.r, "colors")->required();
  sample->add_option("--k", sp.k, "AP length")->required();
  sample->add_option("--n", sp_n, "interval length (default floor(r^(k-1)/(8k)))");
  sample->add_option("--seed", sp.seed, "seed");
  sample->add_option("--max-resamples", sp.max_resamples, "resample budget");
  sample->add_flag("--exact-rational", sp_exact, "decide the LLL condition in exact arithmetic");
  sample->add_option("--out", sp_out, "write a certificate for a successful sample");

  // probe-bct
  auto* probe = app.add_subcommand("probe-bct", "lift the oracle witness for (r-1,k) at prime p");
  std::uint64_t pb_r = 3, pb_k = 3, pb_p = 3;
  bool pb_unsafe = false;
  BudgetFlags pb_budget;
  probe->add_option("--r", pb_r, "new color count")->required();
  probe->add_option("--k", pb_k, "AP length")->required();
  probe->add_option("--p", pb_p, "blow-up factor")->required();
  probe->add_flag("--unsafe-construction", pb_unsafe, "skip the prime and r <= p <= k hypotheses");
  pb_budget.add_to(probe);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kParseOrIo;
  }

  try {
    if (*construct) {
      copt.r0 = c_r0;
      copt.r_target = c_rt;
      copt.oracle_budget = c_budget.budget();
      copt.base = c_base == "el" ? vdw::BaseSource::el
                  : c_base == "oracle" ? vdw::BaseSource::oracle
                                       : vdw::BaseSource::automatic;
      const vdw::ConstructResult res = vdw::construct(copt);
      for (const auto& notice : res.notices) std::cerr << "notice: " << notice << '\n';
      if (c_out.empty()) {
        vdw::write_certificate(std::cout, res.certificate);
      } else {
        vdw::save_certificate(c_out, res.certificate);
        std::cout << "wrote " << c_out << " (n=" << res.certificate.n << ", r=" << res.certificate.r
                  << ", claims=" << vdw::format_claims(res.certificate.claims) << ")\n";
      }
      return res.certificate.has_payload() ? kPass : kBudget;
    }
    if (*verify) return run_verify(v_path, v_replay, v_budget.budget());
    if (*exact) {
      if (e_what == "aw" && e_n == 0) e_n = e_k;
      return run_exact(e_what, e_r, e_k, e_n, e_budget.budget(), format);
    }
    if (*bound) {
      bool all_certified = true;
      if (format == "csv") std::cout << vdw::kChainCsvHeader << '\n';
      for (std::uint64_t k : b_k) {
        const vdw::ChainReport rep = vdw::chain_lower_bound(k, {b_eps});
        all_certified = all_certified && rep.status == vdw::ChainStatus::certified;
        if (format == "csv") {
          std::cout << vdw::to_csv_row(rep) << '\n';
        } else {
          print_kv_chain(rep);
        }
        if (b_factors) {
          const vdw::FactorBounds fb = vdw::factor_bounds(k, b_c1);
          std::cerr << "k=" << k << " log_p_star=" << fmt(fb.log_p_star.computed) << " >= "
                    << fmt(fb.log_p_star.bound) << " p_ratio=" << fmt(fb.p_ratio.computed) << " >= "
                    << fmt(fb.p_ratio.bound) << " product=" << fmt(fb.product.computed) << " >= "
                    << fmt(fb.product.bound) << " (C1=" << fmt(fb.c1) << ", advisory)\n";
        }
      }
      return (b_certified && !all_certified) ? kRegimeRefused : kPass;
    }
    if (*primes) {
      const vdw::PrimeWindow w = vdw::bhp_window(p_k);
      if (format == "csv") {
        std::cout << "k,lo,hi,count,p_star\n" << w.k << ',' << fmt(w.lo) << ',' << w.hi << ','
                  << w.primes_found.size() << ',' << (w.p_star ? std::to_string(*w.p_star) : "") << '\n';
      } else {
        std::cout << "k=" << w.k << "\nlo=" << fmt(w.lo) << "\nhi=" << w.hi << "\nprimes=";
        for (std::size_t i = 0; i < w.primes_found.size(); ++i) {
          std::cout << (i ? " " : "") << w.primes_found[i];
        }
        std::cout << "\np_star=" << (w.p_star ? std::to_string(*w.p_star) : "none") << '\n';
      }
      return kPass;
    }
    if (*sweep) {
      const vdw::RSweep sw = vdw::sweep_R(s_k, vdw::linear_grid(s_lo, s_hi.value_or(s_k - 1), s_step));
      if (format == "csv") {
        std::cout << "r0,log_R,R,is_argmax\n";
        for (std::size_t i = 0; i < sw.points.size(); ++i) {
          const auto& pt = sw.points[i];
          std::cout << fmt(pt.r0) << ',' << fmt(pt.log_R) << ',' << fmt(pt.R) << ','
                    << (i == sw.argmax ? 1 : 0) << '\n';
        }
      } else {
        std::cout << "k=" << fmt(s_k) << "\npoints=" << sw.points.size() << "\nargmax_r0=" << fmt(sw.best().r0)
                  << "\nargmax_R=" << fmt(sw.best().R) << "\nk_over_log_k=" << fmt(s_k / std::log(s_k))
                  << "\nR_continuous_opt=" << fmt(vdw::r_value(s_k, s_k / std::log(s_k)).R) << '\n';
      }
      return kPass;
    }
    if (*sample) {
      sp.n_target = sp_n ? *sp_n : vdw::el_interval_length(sp.r, sp.k);
      if (sp.r >= 2) {
        const vdw::LLLCheck chk = vdw::lll_condition(
            sp.r, sp.k, sp.n_target,
            sp_exact ? vdw::LllEvaluation::exact_rational : vdw::LllEvaluation::float_upward);
        std::cout << "lll_p=" << fmt(chk.p) << "\nlll_d=" << chk.d << "\nlll_lhs=" << fmt(chk.lhs)
                  << "\nlll_satisfied=" << (chk.satisfied ? "yes" : "no") << '\n';
      }
      const vdw::SampleOutcome out = vdw::sample_mono_free(sp);
      std::cout << "n=" << sp.n_target << "\nresamples=" << out.resamples
                << "\nstatus=" << (out.success() ? "success" : "failure") << '\n';
      if (!out.success()) {
        std::cout << "violated_remaining=" << out.violated_remaining << '\n';
        return kBudget;
      }
      if (!sp_out.empty()) {
        vdw::Certificate cert;
        cert.k = sp.k;
        cert.r = sp.r;
        cert.n = sp.n_target;
        cert.method_chain.push_back({"el-sample",
                                     {{"r", std::to_string(sp.r)},
                                      {"k", std::to_string(sp.k)},
                                      {"n", std::to_string(sp.n_target)},
                                      {"seed", std::to_string(sp.seed)},
                                      {"resamples", std::to_string(out.resamples)}}});
        cert.claims.mono_free = true;
        cert.claims.rainbow_free = out.coloring->distinct_colors() < sp.k;
        cert.colors = std::vector<vdw::Color>(out.coloring->values().begin(), out.coloring->values().end());
        vdw::seal(cert);
        vdw::save_certificate(sp_out, cert);
        std::cout << "wrote " << sp_out << '\n';
      }
      return kPass;
    }
    if (*probe) {
      if (pb_r < 3) throw vdw::InvalidParameter("probe-bct needs r >= 3 so the base has r-1 >= 2 colors");
      const vdw::OracleResult base = vdw::exact_W(pb_r - 1, pb_k, pb_budget.budget());
      if (!base.exact()) {
        std::cerr << "oracle budget exhausted for W(" << pb_r - 1 << "," << pb_k << ")\n";
        return kBudget;
      }
      vdw::BlowupOptions opts;
      opts.unsafe_construction = pb_unsafe;
      const vdw::Coloring lifted =
          vdw::blow_up({*base.witness, pb_p, static_cast<vdw::Color>(pb_r), pb_k}, opts);
      const auto mono = vdw::find_mono_kap(lifted, pb_k);
      std::cout << "base_length=" << base.witness->size() << "\nlength=" << lifted.size()
                << "\nmono_free=" << (mono ? "no" : "yes") << '\n';
      if (mono) std::cout << "witness=" << vdw::to_string(*mono) << '\n';
      return mono ? kPropertyFailure : kPass;
    }
  } catch (const vdw::SamplerFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const vdw::RegimeError& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kRegimeRefused;
  } catch (const vdw::HypothesisError& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kRegimeRefused;
  } catch (const vdw::OverflowError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const vdw::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParseOrIo;
  }
  return kPass;
}
