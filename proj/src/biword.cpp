#include "wreath/biword.hpp"

namespace wreath {

bool is_biword(const Partition& g, const ColoredSequence& f) {
  if (g.size() != f.n()) throw InvalidInput("is_biword: length mismatch");
  if (!f.in_N0()) return false;
  const std::uint32_t r = f.r();
  std::uint32_t g_prev = 0;
  ColoredInteger f_prev{0, 0};
  for (std::size_t i = 0; i < f.n(); ++i) {
    const ColoredInteger cur = f[i];
    if (g[i] == g_prev) {
      if (cur.value != f_prev.value) {
        if (!(order_key(f_prev, r) < order_key(cur, r))) return false;
      } else if (f_prev.color == 0 && cur.color != 0) {
        return false;
      }
    }
    g_prev = g[i];
    f_prev = cur;
  }
  return true;
}

bool is_valid_triple(const Triple& t) {
  const std::size_t n = t.gamma.n();
  return t.lam.size() == n && t.mu.size() == n &&
         is_compatible(t.lam, skew_inverse(t.gamma)) && is_compatible(t.mu, t.gamma);
}

Triple to_triple(const Biword& b) {
  if (!is_biword(b.g, b.f)) {
    throw InvalidInput("not a colored biword: g = " + b.g.to_string() + ", f = " +
                       b.f.to_string());
  }
  auto gamma = pi_of(b.f);
  std::vector<std::uint32_t> mu(b.f.n());
  for (std::size_t k = 0; k < mu.size(); ++k) mu[k] = b.f.values()[gamma.sigma()[k] - 1];
  return {std::move(gamma), b.g, Partition(std::move(mu))};
}

Biword from_triple(const Triple& t) {
  if (!is_valid_triple(t)) {
    throw InvalidInput("triple violates compatibility: gamma = " + t.gamma.to_string());
  }
  return {t.lam, lambda_gamma(t.mu, skew_inverse(t.gamma))};
}

void enumerate_biwords(std::uint32_t r, std::size_t n, std::uint32_t cap_f, std::uint32_t cap_g,
                       std::uint64_t max_candidates,
                       const std::function<void(const Biword&)>& fn) {
  SequenceQuery query;
  query.r = r;
  query.n = n;
  query.max_cap = cap_f;
  query.restrict_N0 = true;
  query.max_sequences = max_candidates;
  const auto sequences = collect_sequences(query);
  std::uint64_t partitions = 0;
  enumerate_partitions(n, cap_g, [&](const Partition&) { ++partitions; });
  if (partitions * sequences.size() > max_candidates) {
    throw BudgetExceeded("biword enumeration exceeds budget");
  }
  enumerate_partitions(n, cap_g, [&](const Partition& g) {
    for (const auto& f : sequences) {
      if (is_biword(g, f)) fn(Biword{g, f});
    }
  });
}

}  // namespace wreath
