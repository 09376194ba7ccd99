#pragma once

// Parabolic subgroups G_J, quotients G^J and the factorization gamma = tau * delta.

#include <cstdint>
#include <functional>
#include <vector>

#include "wreath/group.hpp"

namespace wreath {

/// A subset J of the generator indices [0, n-1], kept with its complement
/// d_1 < ... < d_k.
class DescentClass {
 public:
  DescentClass(std::uint32_t r, std::size_t n, std::vector<std::uint32_t> J);

  /// J given by its complement in [0, n-1].
  static DescentClass from_complement(std::uint32_t r, std::size_t n,
                                      std::vector<std::uint32_t> complement);

  std::uint32_t r() const noexcept { return r_; }
  std::size_t n() const noexcept { return n_; }
  const std::vector<std::uint32_t>& J() const noexcept { return J_; }
  const std::vector<std::uint32_t>& complement() const noexcept { return complement_; }
  bool contains(std::uint32_t i) const;

  /// Half-open position ranges [start, end) of the blocks cut at the complement.
  std::vector<std::pair<std::size_t, std::size_t>> blocks() const;

 private:
  std::uint32_t r_;
  std::size_t n_;
  std::vector<std::uint32_t> J_;
  std::vector<std::uint32_t> complement_;
};

struct Factorization {
  ColoredPermutation tau;    // in G^J
  ColoredPermutation delta;  // in G_J
};

/// Des(gamma) is contained in the complement of J.
bool in_quotient(const ColoredPermutation& gamma, const DescentClass& J);

/// Structural membership in G_J: every block is mapped onto itself, and only
/// the first block may carry colors, and only when 0 is in J.
bool in_parabolic(const ColoredPermutation& gamma, const DescentClass& J);

/// The unique factorization gamma = tau * delta with tau in G^J, delta in G_J.
///
/// Each block of gamma is rearranged increasingly to form tau, and delta
/// records the rearrangement. When 0 is in J the first block is instead
/// sorted by absolute value with colors stripped, and its delta part is the
/// rank reduction of that block keeping the colors in place.
Factorization decompose(const ColoredPermutation& gamma, const DescentClass& J);

/// Streams G^J in the enumeration order of G(r,n).
void quotient_set(const DescentClass& J, std::uint64_t max_elements,
                  const std::function<void(const ColoredPermutation&)>& fn);

/// Parses "1,2,4" into a sorted index set inside [0, n-1].
std::vector<std::uint32_t> parse_index_set(std::string_view text, std::size_t n);

}  // namespace wreath
