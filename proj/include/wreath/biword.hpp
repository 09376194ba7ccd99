#pragma once

// Colored biwords (g over f) and their bijection with triples (gamma, lambda, mu).

#include <cstdint>
#include <functional>

#include "wreath/encode.hpp"

namespace wreath {

struct Biword {
  Partition g;
  ColoredSequence f;

  friend bool operator==(const Biword&, const Biword&) = default;
};

/// gamma in G(r,n); lam compatible with skew_inverse(gamma); mu compatible with gamma.
struct Triple {
  ColoredPermutation gamma;
  Partition lam;
  Partition mu;

  friend bool operator==(const Triple&, const Triple&) = default;
};

/// Membership in B(r,n). With g_0 = f_0 := 0, for every 0 <= i < n with
/// g_i = g_{i+1}: distinct f values must increase in the colored order, and
/// equal f values must not pass from uncolored to colored. f must lie in N_0.
bool is_biword(const Partition& g, const ColoredSequence& f);

bool is_valid_triple(const Triple& t);

/// gamma = pi(f), lam = g, mu = (f_{sigma(1)}, ..., f_{sigma(n)}).
/// Throws InvalidInput if the pair is not a biword.
Triple to_triple(const Biword& b);

/// g = lam, f = mu^{skew_inverse(gamma)}. Throws InvalidInput if either
/// compatibility condition fails.
Biword from_triple(const Triple& t);

/// Every biword with max(f) <= cap_f and max(g) <= cap_g, lexicographic in (g, f).
void enumerate_biwords(std::uint32_t r, std::size_t n, std::uint32_t cap_f, std::uint32_t cap_g,
                       std::uint64_t max_candidates,
                       const std::function<void(const Biword&)>& fn);

}  // namespace wreath
