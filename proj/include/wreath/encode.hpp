#pragma once

// Encoding colored sequences f in N^{(r,n)} as pairs (pi(f), lambda(f)) of a
// colored permutation and a partition, and the inverse map.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wreath/group.hpp"

namespace wreath {

/// An n-tuple (f_1^{c_1}, ..., f_n^{c_n}) of colored naturals. Zero entries may
/// carry a color here; in_N0() reports whether the tuple avoids that.
class ColoredSequence {
 public:
  ColoredSequence() = default;
  ColoredSequence(std::uint32_t r, std::vector<std::uint32_t> values, std::vector<Color> colors);

  /// "4^2,4^1,1,3^3,6,3^1,4^2"; the empty string is the empty sequence.
  static ColoredSequence parse(std::string_view text, std::uint32_t r);

  std::uint32_t r() const noexcept { return r_; }
  std::size_t n() const noexcept { return values_.size(); }
  std::span<const std::uint32_t> values() const noexcept { return values_; }
  std::span<const Color> colors() const noexcept { return colors_; }
  ColoredInteger operator[](std::size_t i) const { return {values_[i], colors_[i]}; }

  /// True iff every zero entry is uncolored.
  bool in_N0() const noexcept;
  std::string to_string() const;

  friend bool operator==(const ColoredSequence&, const ColoredSequence&) = default;
  friend auto operator<=>(const ColoredSequence& a, const ColoredSequence& b) {
    if (auto c = a.r_ <=> b.r_; c != 0) return c;
    if (auto c = a.values_ <=> b.values_; c != 0) return c;
    return a.colors_ <=> b.colors_;
  }

 private:
  std::uint32_t r_ = 1;
  std::vector<std::uint32_t> values_;
  std::vector<Color> colors_;
};

/// Nondecreasing sequence lambda_1 <= ... <= lambda_n of naturals.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<std::uint32_t> parts);

  static Partition parse(std::string_view text);
  static Partition zeros(std::size_t n) { return Partition(std::vector<std::uint32_t>(n, 0)); }

  std::size_t size() const noexcept { return parts_.size(); }
  std::span<const std::uint32_t> parts() const noexcept { return parts_; }
  std::uint32_t operator[](std::size_t i) const { return parts_[i]; }
  std::uint32_t max() const noexcept { return parts_.empty() ? 0 : parts_.back(); }
  std::uint64_t sum() const noexcept;
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<std::uint32_t> parts_;
};

/// The unique gamma = (c; sigma) with f_{sigma(1)} <= ... <= f_{sigma(n)},
/// c_i(gamma) = c_{sigma(i)}(f), and gamma(i) < gamma(i+1) inside each bloc of
/// equal values. Accepts every f in N^{(r,n)}.
ColoredPermutation pi_of(const ColoredSequence& f);

/// lambda_i = f_{sigma(i)} - #{ j in Des(pi(f)) : j <= i-1 }. Requires f in N_0.
Partition lambda_of(const ColoredSequence& f);

/// Inverse of f -> (pi(f), lambda(f)): mu_i = lambda_i + #{ j in Des(gamma) : j <= i-1 },
/// then f = mu^{skew_inverse(gamma)}.
ColoredSequence sequence_from(const ColoredPermutation& gamma, const Partition& lam);

/// lambda^gamma = (lambda_{sigma(1)}^{c_1}, ..., lambda_{sigma(n)}^{c_n}).
ColoredSequence lambda_gamma(const Partition& lam, const ColoredPermutation& gamma);

/// lambda_i < lambda_{i+1} for every descent i of gamma, with lambda_0 := 0.
bool is_compatible(const Partition& lam, const ColoredPermutation& gamma);

/// prefix[i-1] = #{ j in Des(gamma) : j <= i-1 } for i = 1..n.
std::vector<std::uint32_t> descent_prefix_counts(const ColoredPermutation& gamma);

struct SequenceStats {
  std::uint32_t max = 0;
  std::uint64_t sum = 0;
  std::uint64_t inv = 0;  // length of pi(f)
  std::uint64_t col = 0;  // color weight of pi(f)

  friend bool operator==(const SequenceStats&, const SequenceStats&) = default;
};

SequenceStats seq_statistics(const ColoredSequence& f);

inline constexpr std::uint64_t kDefaultMaxSequences = 10'000'000;

struct SequenceQuery {
  std::uint32_t r = 1;
  std::size_t n = 0;
  std::uint32_t max_cap = 0;
  bool restrict_N0 = true;
  /// (n_0, ..., n_k): exactly n_j entries equal j. Overrides max_cap with k.
  std::optional<std::vector<std::uint32_t>> composition;
  std::uint64_t max_sequences = kDefaultMaxSequences;
};

/// Streams every sequence matching the query exactly once. Plain mode walks the
/// entries lexicographically by (value, color) pairs; composition mode walks the
/// value windows lexicographically, then the color vectors. Throws BudgetExceeded before starting if
/// the search space is larger than the budget, InvalidInput for a composition
/// that does not sum to n.
void enumerate_sequences(const SequenceQuery& query,
                         const std::function<void(const ColoredSequence&)>& fn);

std::vector<ColoredSequence> collect_sequences(const SequenceQuery& query);

/// Streams every partition with n parts and largest part <= cap, in lexicographic order.
void enumerate_partitions(std::size_t n, std::uint32_t cap,
                          const std::function<void(const Partition&)>& fn);

}  // namespace wreath
