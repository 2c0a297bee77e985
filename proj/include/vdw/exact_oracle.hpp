#pragma once

// Exhaustive search for W(r,k), aw([n],k) and H(k) at desk scale.
//
// All three searches extend a coloring one cell at a time and reject a color
// as soon as the new cell closes a forbidden k-AP ending at it. Colorings are
// enumerated as restricted growth strings (the first occurrences of colors
// appear in increasing order), which is sound because monochromatic and
// rainbow status is invariant under relabeling colors.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "vdw/ap_core.hpp"
#include "vdw/error.hpp"

namespace vdw {

struct SearchBudget {
  std::uint64_t node_limit = 100'000'000;
  double time_limit_seconds = 60.0;

  static SearchBudget unlimited() {
    return {std::numeric_limits<std::uint64_t>::max(), std::numeric_limits<double>::infinity()};
  }

  // VDW_BUDGET_NODES / VDW_BUDGET_SECONDS override the defaults.
  static SearchBudget from_environment() {
    SearchBudget budget;
    if (const char* nodes = std::getenv("VDW_BUDGET_NODES")) {
      budget.node_limit = std::strtoull(nodes, nullptr, 10);
    }
    if (const char* seconds = std::getenv("VDW_BUDGET_SECONDS")) {
      budget.time_limit_seconds = std::strtod(seconds, nullptr);
    }
    return budget;
  }
};

enum class SearchStatus { exact, budget_exhausted };

inline const char* to_string(SearchStatus s) {
  return s == SearchStatus::exact ? "exact" : "budget-exhausted";
}

// Value of a W / aw / H computation. `value` is set only for exact results.
struct OracleResult {
  SearchStatus status = SearchStatus::exact;
  std::optional<std::uint64_t> value;
  std::optional<Coloring> witness;
  std::uint64_t nodes = 0;

  bool exact() const noexcept { return status == SearchStatus::exact; }
};

namespace detail {

// Does giving cell x (1-based, cells[0..x-2] already set) color c close a
// monochromatic k-AP ending at x?
inline bool closes_mono(const std::vector<Color>& cells, std::size_t x, std::size_t k, Color c) {
  for (std::size_t d = 1; (k - 1) * d < x; ++d) {
    bool mono = true;
    for (std::size_t i = 1; i < k; ++i) {
      if (cells[x - i * d - 1] != c) {
        mono = false;
        break;
      }
    }
    if (mono) return true;
  }
  return false;
}

inline bool closes_rainbow(const std::vector<Color>& cells, std::size_t x, std::size_t k, Color c,
                           std::vector<std::uint64_t>& stamp, std::uint64_t& epoch) {
  for (std::size_t d = 1; (k - 1) * d < x; ++d) {
    ++epoch;
    if (stamp.size() <= c) stamp.resize(c + 1, 0);
    stamp[c] = epoch;
    bool rainbow = true;
    for (std::size_t i = 1; i < k; ++i) {
      const Color col = cells[x - i * d - 1];
      if (stamp.size() <= col) stamp.resize(col + 1, 0);
      if (stamp[col] == epoch) {
        rainbow = false;
        break;
      }
      stamp[col] = epoch;
    }
    if (rainbow) return true;
  }
  return false;
}

struct DfsConfig {
  Color palette = 2;         // colors available
  std::size_t target = 0;    // 0: find the longest admissible coloring
  bool surjective = false;   // at target length, every color must be used
};

struct DfsOutcome {
  SearchStatus status = SearchStatus::exact;
  std::vector<Color> best;  // longest found (maximize) or the found coloring (target)
  bool found = false;       // target mode only
  std::uint64_t nodes = 0;
};

// Depth-first extension over restricted growth strings. Deterministic: the
// reported coloring is the lexicographically least one of its kind.
template <typename Admissible>
DfsOutcome dfs(const DfsConfig& config, Admissible&& admissible, const SearchBudget& budget) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  DfsOutcome out;
  std::vector<Color> cells;
  std::vector<Color> max_used{0};
  std::vector<Color> next_try{1};

  while (true) {
    const std::size_t depth = cells.size();
    if (config.target != 0 && depth == config.target) {
      out.found = true;
      out.best = cells;
      return out;
    }
    const Color limit = std::min<Color>(config.palette, max_used[depth] + 1);
    Color chosen = 0;
    for (Color c = next_try[depth]; c <= limit; ++c) {
      if (++out.nodes > budget.node_limit ||
          ((out.nodes & 0xFFFF) == 0 &&
           std::chrono::duration<double>(clock::now() - start).count() > budget.time_limit_seconds)) {
        out.status = SearchStatus::budget_exhausted;
        return out;
      }
      const Color used = std::max(max_used[depth], c);
      if (config.surjective && config.target - (depth + 1) < config.palette - used) continue;
      if (admissible(cells, depth + 1, c)) {
        chosen = c;
        break;
      }
    }
    if (chosen != 0) {
      next_try[depth] = chosen + 1;
      cells.push_back(chosen);
      max_used.push_back(std::max(max_used[depth], chosen));
      next_try.push_back(1);
      if (config.target == 0 && cells.size() > out.best.size()) out.best = cells;
      continue;
    }
    if (depth == 0) return out;
    cells.pop_back();
    max_used.pop_back();
    next_try.pop_back();
  }
}

inline void check_rk(std::uint64_t r, std::uint64_t k) {
  if (r < 1) throw InvalidParameter("r must be >= 1");
  if (k < 2) throw InvalidParameter("k must be >= 2");
}

}  // namespace detail

// Some r-coloring of [n] with no monochromatic k-AP, if one exists.
inline OracleResult find_mono_free(std::uint64_t r, std::uint64_t k, std::uint64_t n,
                                   const SearchBudget& budget = {}) {
  detail::check_rk(r, k);
  if (n < 1) throw InvalidParameter("n must be >= 1");
  const auto out = detail::dfs(
      {static_cast<Color>(r), static_cast<std::size_t>(n), false},
      [k](const std::vector<Color>& cells, std::size_t x, Color c) {
        return !detail::closes_mono(cells, x, k, c);
      },
      budget);
  OracleResult result{out.status, std::nullopt, std::nullopt, out.nodes};
  if (out.found) result.witness.emplace(out.best, static_cast<Color>(r));
  return result;
}

// W(r,k) with a mono-free witness on [W-1]. Exhausting the tree proves that
// no mono-free coloring of [W] exists.
inline OracleResult exact_W(std::uint64_t r, std::uint64_t k, const SearchBudget& budget = {}) {
  if (r < 2) throw InvalidParameter("exact_W requires r >= 2");
  detail::check_rk(r, k);
  const auto out = detail::dfs(
      {static_cast<Color>(r), 0, false},
      [k](const std::vector<Color>& cells, std::size_t x, Color c) {
        return !detail::closes_mono(cells, x, k, c);
      },
      budget);
  OracleResult result{out.status, std::nullopt, std::nullopt, out.nodes};
  if (out.status == SearchStatus::exact) {
    result.value = out.best.size() + 1;
    result.witness.emplace(out.best, static_cast<Color>(r));
  }
  return result;
}

// aw([n],k): least t such that every surjective t-coloring of [n] has a
// rainbow k-AP. The witness is a rainbow-free surjective (t-1)-coloring.
inline OracleResult exact_aw(std::uint64_t n, std::uint64_t k, const SearchBudget& budget = {}) {
  if (k < 3 || n < k) throw InvalidParameter("exact_aw requires n >= k >= 3");
  OracleResult result;
  std::vector<std::uint64_t> stamp;
  std::uint64_t epoch = 0;
  std::optional<Coloring> last_free;
  for (std::uint64_t t = 1; t <= n; ++t) {
    SearchBudget remaining = budget;
    remaining.node_limit = budget.node_limit - std::min(budget.node_limit, result.nodes);
    const auto out = detail::dfs(
        {static_cast<Color>(t), static_cast<std::size_t>(n), true},
        [&](const std::vector<Color>& cells, std::size_t x, Color c) {
          return !detail::closes_rainbow(cells, x, k, c, stamp, epoch);
        },
        remaining);
    result.nodes += out.nodes;
    if (out.status != SearchStatus::exact) {
      result.status = SearchStatus::budget_exhausted;
      return result;
    }
    if (!out.found) {
      result.value = t;
      result.witness = last_free;
      return result;
    }
    last_free.emplace(out.best, static_cast<Color>(t), ColoringMode::surjective);
  }
  throw std::logic_error("exact_aw: the all-distinct coloring of [n] must contain a rainbow k-AP");
}

// H(k): least N such that every coloring of [N] has a mono or rainbow k-AP.
// The witness is a coloring of [H-1] with neither.
inline OracleResult exact_H(std::uint64_t k, const SearchBudget& budget = {}) {
  if (k < 3) throw InvalidParameter("exact_H requires k >= 3");
  std::vector<std::uint64_t> stamp;
  std::uint64_t epoch = 0;
  const auto out = detail::dfs(
      {std::numeric_limits<Color>::max() - 1, 0, false},
      [&](const std::vector<Color>& cells, std::size_t x, Color c) {
        return !detail::closes_mono(cells, x, k, c) &&
               !detail::closes_rainbow(cells, x, k, c, stamp, epoch);
      },
      budget);
  OracleResult result{out.status, std::nullopt, std::nullopt, out.nodes};
  if (out.status == SearchStatus::exact) {
    result.value = out.best.size() + 1;
    const Color used = out.best.empty() ? 1 : *std::max_element(out.best.begin(), out.best.end());
    result.witness.emplace(out.best, used);
  }
  return result;
}

}  // namespace vdw
