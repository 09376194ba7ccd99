#pragma once

// The colored-permutation group G(r,n) = Z_r wr S_n: elements, the colored
// integer order, products, inverses, statistics and exhaustive enumeration.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wreath/errors.hpp"

namespace wreath {

using Color = std::uint32_t;

/// An integer carrying a color; written v^c in window notation (c = 0 omitted).
struct ColoredInteger {
  std::uint32_t value = 0;
  Color color = 0;

  friend bool operator==(const ColoredInteger&, const ColoredInteger&) = default;
};

/// Signed rank of x in the colored-integer order
///   v^{r-1} < ... < v^1 < ... < 1^{r-1} < ... < 1^1 < 0 < 1 < ... < v
/// Colored entries map to -(value*r + color), uncolored ones to their value.
/// Throws InvalidInput when the color is >= r or a zero carries a color.
std::int64_t order_key(ColoredInteger x, std::uint32_t r);

std::strong_ordering compare_colored(ColoredInteger a, ColoredInteger b, std::uint32_t r);

/// An element (c_1,...,c_n; sigma) of G(r,n).
///
/// Storage is 0-based: sigma()[i] holds sigma(i+1) in [1,n] and colors()[i]
/// holds c_{i+1}. Descent positions follow the usual 0..n-1 convention where
/// position i compares gamma(i) with gamma(i+1) and gamma(0) := 0.
class ColoredPermutation {
 public:
  ColoredPermutation() = default;
  ColoredPermutation(std::uint32_t r, std::vector<std::uint32_t> sigma, std::vector<Color> colors);

  static ColoredPermutation identity(std::uint32_t r, std::size_t n);

  /// Parses window notation such as "[4^1,3,2^4,1^2]". Whitespace is ignored.
  /// Rejects an explicit ^0, colors >= r and repeated absolute values.
  static ColoredPermutation parse(std::string_view window, std::uint32_t r);

  std::uint32_t r() const noexcept { return r_; }
  std::size_t n() const noexcept { return sigma_.size(); }
  std::span<const std::uint32_t> sigma() const noexcept { return sigma_; }
  std::span<const Color> colors() const noexcept { return colors_; }
  ColoredInteger operator[](std::size_t i) const { return {sigma_[i], colors_[i]}; }

  bool is_identity() const noexcept;
  std::string to_string() const;

  friend bool operator==(const ColoredPermutation&, const ColoredPermutation&) = default;
  friend auto operator<=>(const ColoredPermutation& a, const ColoredPermutation& b) {
    if (auto c = a.r_ <=> b.r_; c != 0) return c;
    if (auto c = a.sigma_ <=> b.sigma_; c != 0) return c;
    return a.colors_ <=> b.colors_;
  }

 private:
  std::uint32_t r_ = 1;
  std::vector<std::uint32_t> sigma_;
  std::vector<Color> colors_;
};

struct StatRecord {
  std::uint64_t inv = 0;
  std::uint64_t length = 0;
  std::vector<std::uint32_t> des_set;  // ascending, subset of [0, n-1]
  std::uint64_t des = 0;
  std::uint64_t maj = 0;
  std::uint64_t fmaj = 0;
  std::uint64_t col = 0;
  std::vector<Color> col_vector;
};

/// Product alpha * beta, composed right to left:
///   sigma(i) = alpha.sigma(beta.sigma(i)),  c_i = beta.c_i + alpha.c_{beta.sigma(i)} (mod r).
ColoredPermutation multiply(const ColoredPermutation& alpha, const ColoredPermutation& beta);

/// True group inverse: (c'; sigma^{-1}) with c'_i = (r - c_{sigma^{-1}(i)}) mod r.
ColoredPermutation inverse(const ColoredPermutation& gamma);

/// Skew inverse: sigma^{-1} carrying the original colors, c'_i = c_{sigma^{-1}(i)}.
ColoredPermutation skew_inverse(const ColoredPermutation& gamma);

StatRecord statistics(const ColoredPermutation& gamma);

/// Descent set only (ascending).
std::vector<std::uint32_t> descent_set(const ColoredPermutation& gamma);

/// Forgets the colors: every nonzero color becomes 1, giving an element of B_n = G(2,n).
/// Throws InvalidInput for r = 1.
ColoredPermutation project_to_B(const ColoredPermutation& gamma);

namespace detail {

// Allocation-free statistics over raw windows, used by the enumeration kernels.
struct FastStats {
  std::uint32_t inv = 0;
  std::uint32_t length = 0;
  std::uint32_t des = 0;
  std::uint32_t maj = 0;
  std::uint32_t col = 0;
};

FastStats fast_stats(std::uint32_t r, std::span<const std::uint32_t> sigma,
                     std::span<const Color> colors);

}  // namespace detail

inline constexpr std::uint64_t kDefaultMaxElements = 10'000'000;

/// n! * r^n, or 0 when that overflows 64 bits.
std::uint64_t group_order(std::uint32_t r, std::size_t n);

/// Random-access view of G(r,n) in lexicographic order by sigma, then by the
/// color vector (last position varying fastest).
class GroupEnumeration {
 public:
  GroupEnumeration(std::uint32_t r, std::size_t n,
                   std::uint64_t max_elements = kDefaultMaxElements);

  std::uint32_t r() const noexcept { return r_; }
  std::size_t n() const noexcept { return n_; }
  std::uint64_t size() const noexcept { return size_; }

  ColoredPermutation at(std::uint64_t index) const;

  /// Calls fn(sigma, colors) for indices [begin, end) without materializing
  /// ColoredPermutation values.
  template <class Fn>
  void for_range_raw(std::uint64_t begin, std::uint64_t end, Fn&& fn) const {
    if (begin >= end) return;
    std::vector<std::uint32_t> sigma;
    std::vector<Color> colors;
    unrank(begin, sigma, colors);
    for (std::uint64_t k = begin; k < end; ++k) {
      fn(std::span<const std::uint32_t>(sigma), std::span<const Color>(colors));
      if (k + 1 == end) break;
      advance(sigma, colors);
    }
  }

  template <class Fn>
  void for_range(std::uint64_t begin, std::uint64_t end, Fn&& fn) const {
    for_range_raw(begin, end, [&](std::span<const std::uint32_t> s, std::span<const Color> c) {
      fn(ColoredPermutation(r_, {s.begin(), s.end()}, {c.begin(), c.end()}));
    });
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for_range(0, size_, std::forward<Fn>(fn));
  }

 private:
  void unrank(std::uint64_t index, std::vector<std::uint32_t>& sigma,
              std::vector<Color>& colors) const;
  void advance(std::vector<std::uint32_t>& sigma, std::vector<Color>& colors) const;

  std::uint32_t r_;
  std::size_t n_;
  std::uint64_t size_;
  std::uint64_t colorings_;
};

/// Materialized enumeration of G(r,n) (same order as GroupEnumeration).
std::vector<ColoredPermutation> enumerate_group(std::uint32_t r, std::size_t n,
                                                std::uint64_t max_elements = kDefaultMaxElements);

// Shared helpers for the text grammars: "<int>" or "<int>^<color>".
namespace detail {
std::string format_colored(std::uint32_t value, Color color);
std::vector<ColoredInteger> parse_colored_list(std::string_view text);
}  // namespace detail

}  // namespace wreath
