#pragma once

// Colorings of [n] = {1..n}, k-term arithmetic progressions, and exact
// monochromatic / rainbow verification. Every other module checks its output
// against the functions in this header.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iterator>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vdw/error.hpp"

namespace vdw {

using Color = std::uint32_t;

// (a, a+d, ..., a+(k-1)d), 1-based.
struct Progression {
  std::size_t a = 1;
  std::size_t d = 1;
  std::size_t k = 2;

  std::size_t term(std::size_t i) const noexcept { return a + i * d; }
  std::size_t last() const noexcept { return a + (k - 1) * d; }

  bool contains(std::size_t x) const noexcept {
    return x >= a && (x - a) % d == 0 && (x - a) / d < k;
  }

  friend bool operator==(const Progression&, const Progression&) = default;
  // Enumeration order: ascending d, then ascending a.
  friend auto operator<=>(const Progression& lhs, const Progression& rhs) noexcept {
    if (auto c = lhs.d <=> rhs.d; c != 0) return c;
    if (auto c = lhs.a <=> rhs.a; c != 0) return c;
    return lhs.k <=> rhs.k;
  }
};

inline std::ostream& operator<<(std::ostream& os, const Progression& p) {
  return os << "(a=" << p.a << ", d=" << p.d << ", k=" << p.k << ")";
}

inline std::string to_string(const Progression& p) {
  return "a=" + std::to_string(p.a) + " d=" + std::to_string(p.d) +
         " k=" + std::to_string(p.k);
}

enum class ColoringMode { any, surjective };

// An assignment of colors 1..r to positions 1..n.
class Coloring {
 public:
  Coloring(std::vector<Color> colors, Color r, ColoringMode mode = ColoringMode::any)
      : r_(r), colors_(std::move(colors)) {
    if (colors_.empty()) throw InvalidParameter("coloring must have n >= 1");
    if (r_ < 1) throw InvalidParameter("coloring must have r >= 1");
    for (std::size_t i = 0; i < colors_.size(); ++i) {
      if (colors_[i] < 1 || colors_[i] > r_) {
        throw InvalidParameter("color " + std::to_string(colors_[i]) + " at position " +
                               std::to_string(i + 1) + " outside [1, " +
                               std::to_string(r_) + "]");
      }
    }
    if (mode == ColoringMode::surjective && !is_surjective()) {
      throw InvalidParameter("surjective coloring does not use every color in 1..r");
    }
  }

  static Coloring constant(std::size_t n, Color r = 1, Color color = 1) {
    return Coloring(std::vector<Color>(n, color), r);
  }

  std::size_t size() const noexcept { return colors_.size(); }
  Color num_colors() const noexcept { return r_; }

  // 1-based access.
  Color operator()(std::size_t pos) const noexcept { return colors_[pos - 1]; }
  Color at(std::size_t pos) const {
    if (pos < 1 || pos > colors_.size()) throw InvalidParameter("position out of range");
    return colors_[pos - 1];
  }

  std::span<const Color> values() const noexcept { return colors_; }

  std::size_t distinct_colors() const {
    std::vector<bool> seen(r_ + 1, false);
    std::size_t count = 0;
    for (Color c : colors_) {
      if (!seen[c]) {
        seen[c] = true;
        ++count;
      }
    }
    return count;
  }

  bool is_surjective() const { return distinct_colors() == r_; }

  Coloring prefix(std::size_t m) const {
    if (m < 1 || m > size()) throw InvalidParameter("prefix length out of range");
    return Coloring(std::vector<Color>(colors_.begin(), colors_.begin() + m), r_);
  }

  // Same cells, larger declared palette.
  Coloring with_num_colors(Color r) const { return Coloring(colors_, r); }

  friend bool operator==(const Coloring&, const Coloring&) = default;

 private:
  Color r_;
  std::vector<Color> colors_;
};

namespace detail {

inline void check_kap_params(std::size_t n, std::size_t k) {
  if (k < 2) throw InvalidParameter("AP length k must be >= 2, got " + std::to_string(k));
  if (n < 1) throw InvalidParameter("interval length n must be >= 1");
}

}  // namespace detail

// Lazy range over all k-APs in [n], ascending d then ascending a.
class ProgressionRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Progression;
    using difference_type = std::ptrdiff_t;
    using reference = const Progression&;
    using pointer = const Progression*;

    iterator() = default;
    iterator(std::size_t n, std::size_t k, bool at_end)
        : n_(n), cur_{1, 1, k}, done_(at_end || cur_.last() > n) {}

    reference operator*() const noexcept { return cur_; }
    pointer operator->() const noexcept { return &cur_; }

    iterator& operator++() {
      if (cur_.last() + 1 <= n_) {
        ++cur_.a;
      } else {
        cur_.a = 1;
        ++cur_.d;
        if (cur_.last() > n_) done_ = true;
      }
      return *this;
    }
    iterator operator++(int) {
      auto tmp = *this;
      ++*this;
      return tmp;
    }

    friend bool operator==(const iterator& lhs, const iterator& rhs) noexcept {
      if (lhs.done_ || rhs.done_) return lhs.done_ == rhs.done_;
      return lhs.cur_ == rhs.cur_;
    }

   private:
    std::size_t n_ = 0;
    Progression cur_{};
    bool done_ = true;
  };

  ProgressionRange(std::size_t n, std::size_t k) : n_(n), k_(k) {}
  iterator begin() const { return iterator(n_, k_, false); }
  iterator end() const { return iterator(n_, k_, true); }

 private:
  std::size_t n_;
  std::size_t k_;
};

inline ProgressionRange enumerate_kaps(std::size_t n, std::size_t k) {
  detail::check_kap_params(n, k);
  return ProgressionRange(n, k);
}

// Closed form sum_{d=1}^{D} (n - (k-1)d), D = floor((n-1)/(k-1)).
inline std::uint64_t count_kaps(std::uint64_t n, std::uint64_t k) {
  detail::check_kap_params(n, k);
  const unsigned __int128 step = k - 1;
  const unsigned __int128 dmax = (n - 1) / step;
  const unsigned __int128 total =
      dmax * n - step * (dmax * (dmax + 1) / 2);
  if (total > std::numeric_limits<std::uint64_t>::max()) {
    throw OverflowError("count_kaps(" + std::to_string(n) + ", " + std::to_string(k) +
                        ") exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(total);
}

// Number of k-APs in [n] containing x, by direct counting over d.
inline std::uint64_t incidence(std::size_t n, std::size_t k, std::size_t x) {
  std::uint64_t total = 0;
  for (std::size_t d = 1; (k - 1) * d <= n - 1; ++d) {
    // term index j with a = x - j*d >= 1 and a + (k-1)d <= n
    const std::size_t j_hi = std::min((x - 1) / d, k - 1);
    const std::size_t need = x + (k - 1) * d;
    const std::size_t j_lo = need > n ? (need - n + d - 1) / d : 0;
    if (j_hi >= j_lo) total += j_hi - j_lo + 1;
  }
  return total;
}

// Exact maximum over x in [n] of the number of k-APs through x.
inline std::uint64_t max_degree(std::size_t n, std::size_t k) {
  detail::check_kap_params(n, k);
  std::uint64_t best = 0;
  for (std::size_t x = 1; x <= n; ++x) best = std::max(best, incidence(n, k, x));
  return best;
}

namespace detail {

using Word = std::uint64_t;
constexpr std::size_t kWordBits = 64;

inline std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

// Word w of (src >> shift), reading zero past the end.
inline Word shifted_word(const std::vector<Word>& src, std::size_t w, std::size_t shift) {
  const std::size_t q = w + shift / kWordBits;
  const unsigned rb = shift % kWordBits;
  const Word lo = q < src.size() ? src[q] : 0;
  if (rb == 0) return lo;
  const Word hi = q + 1 < src.size() ? src[q + 1] : 0;
  return (lo >> rb) | (hi << (kWordBits - rb));
}

}  // namespace detail

// Bit-plane encoding of a coloring: plane b holds bit b of (color - 1) for
// every position. Equality of two cells is the AND over planes of XNOR, so a
// difference-d equality mask costs ceil(log2 r) shifted words per word.
class MonoScanner {
 public:
  MonoScanner(const Coloring& c, std::size_t k) : n_(c.size()), k_(k) {
    detail::check_kap_params(n_, k_);
    const Color r = c.num_colors();
    const unsigned planes = r <= 1 ? 0 : std::bit_width(static_cast<Color>(r - 1));
    const std::size_t nw = detail::words_for(n_);
    // Zero padding past the end lets shifted reads skip bounds checks.
    const std::size_t padded = 2 * nw + 2;
    planes_.assign(planes, std::vector<detail::Word>(padded, 0));
    for (std::size_t i = 0; i < n_; ++i) {
      const Color v = c.values()[i] - 1;
      for (unsigned b = 0; b < planes; ++b) {
        if ((v >> b) & 1U) planes_[b][i / detail::kWordBits] |= detail::Word{1} << (i % detail::kWordBits);
      }
    }
    eq_.assign(padded, 0);
    acc_.assign(nw, 0);
  }

  // Calls visit(Progression) for every monochromatic k-AP in enumeration
  // order until visit returns false. Returns false iff stopped early.
  template <typename Visit>
  bool for_each(Visit&& visit) {
    if (k_ - 1 > n_ - 1) return true;
    const std::size_t dmax = (n_ - 1) / (k_ - 1);
    for (std::size_t d = 1; d <= dmax; ++d) {
      const std::size_t valid = n_ - (k_ - 1) * d;  // bits [0, valid) may start an AP
      if (!scan_difference(d, valid)) continue;
      for (const std::size_t w : live_) {
        detail::Word bits = acc_[w];
        while (bits != 0) {
          const unsigned tz = std::countr_zero(bits);
          bits &= bits - 1;
          if (!visit(Progression{w * detail::kWordBits + tz + 1, d, k_})) return false;
        }
      }
    }
    return true;
  }

  std::optional<Progression> first() {
    std::optional<Progression> found;
    for_each([&](const Progression& p) {
      found = p;
      return false;
    });
    return found;
  }

 private:
  // Leaves in acc_ the start bits of mono APs with difference d; returns
  // false when there are none.
  bool scan_difference(std::size_t d, std::size_t valid) {
    using detail::Word;
    const std::size_t eq_bits = n_ - d;
    const std::size_t ew = detail::words_for(eq_bits);
    const std::size_t q = d / detail::kWordBits;
    const unsigned rb = d % detail::kWordBits;
    if (planes_.empty()) {
      std::fill(eq_.begin(), eq_.begin() + ew, ~Word{0});
    } else {
      const Word* p0 = planes_[0].data();
      for (std::size_t w = 0; w < ew; ++w) eq_[w] = p0[w] ^ shifted(p0, w + q, rb);
      for (std::size_t b = 1; b < planes_.size(); ++b) {
        const Word* pb = planes_[b].data();
        for (std::size_t w = 0; w < ew; ++w) eq_[w] |= pb[w] ^ shifted(pb, w + q, rb);
      }
      for (std::size_t w = 0; w < ew; ++w) eq_[w] = ~eq_[w];
    }
    if (eq_bits % detail::kWordBits != 0) {
      eq_[ew - 1] &= (Word{1} << (eq_bits % detail::kWordBits)) - 1;
    }
    // ew only shrinks as d grows; clear what the previous difference left.
    for (std::size_t w = ew; w < eq_high_; ++w) eq_[w] = 0;
    eq_high_ = ew;

    // acc_ thins out quickly, so after the first pass only its nonzero words
    // are carried forward.
    const std::size_t vw = detail::words_for(valid);
    live_.clear();
    for (std::size_t w = 0; w < vw; ++w) {
      acc_[w] = eq_[w];
      if (w + 1 == vw && valid % detail::kWordBits != 0) {
        acc_[w] &= (Word{1} << (valid % detail::kWordBits)) - 1;
      }
      if (acc_[w] != 0) live_.push_back(w);
    }
    for (std::size_t j = 1; j + 1 < k_ && !live_.empty(); ++j) {
      std::size_t kept = 0;
      for (const std::size_t w : live_) {
        acc_[w] &= shifted(eq_.data(), w + (j * d) / detail::kWordBits, (j * d) % detail::kWordBits);
        if (acc_[w] != 0) live_[kept++] = w;
      }
      live_.resize(kept);
    }
    return !live_.empty();
  }

  // Bits [64q + rb, 64q + rb + 64) of src; rb = 0 needs no special case
  // because (hi << 1) << 63 is zero.
  static detail::Word shifted(const detail::Word* src, std::size_t q, unsigned rb) {
    return (src[q] >> rb) | ((src[q + 1] << 1) << (63 - rb));
  }

  std::size_t n_;
  std::size_t k_;
  std::size_t eq_high_ = 0;
  std::vector<std::vector<detail::Word>> planes_;
  std::vector<detail::Word> eq_;
  std::vector<detail::Word> acc_;
  std::vector<std::size_t> live_;
};

// First monochromatic k-AP in (d, a) order, if any.
inline std::optional<Progression> find_mono_kap(const Coloring& c, std::size_t k) {
  detail::check_kap_params(c.size(), k);
  MonoScanner scanner(c, k);
  return scanner.first();
}

// First k-AP whose k terms carry pairwise-distinct colors, if any.
inline std::optional<Progression> find_rainbow_kap(const Coloring& c, std::size_t k) {
  detail::check_kap_params(c.size(), k);
  if (c.distinct_colors() < k) return std::nullopt;  // pigeonhole
  std::vector<std::size_t> stamp(c.num_colors() + 1, 0);
  std::size_t epoch = 0;
  for (const Progression& p : ProgressionRange(c.size(), k)) {
    ++epoch;
    bool rainbow = true;
    for (std::size_t i = 0; i < k; ++i) {
      const Color col = c(p.term(i));
      if (stamp[col] == epoch) {
        rainbow = false;
        break;
      }
      stamp[col] = epoch;
    }
    if (rainbow) return p;
  }
  return std::nullopt;
}

inline bool is_mono_kap(const Coloring& c, const Progression& p) {
  const Color first = c(p.a);
  for (std::size_t i = 1; i < p.k; ++i) {
    if (c(p.term(i)) != first) return false;
  }
  return true;
}

}  // namespace vdw
