#include <doctest.h>

#include <map>
#include <random>

#include "wreath/encode.hpp"

using namespace wreath;

namespace {

ColoredSequence S(std::string_view text, std::uint32_t r) { return ColoredSequence::parse(text, r); }
ColoredPermutation W(std::string_view text, std::uint32_t r) { return ColoredPermutation::parse(text, r); }
Partition P(std::string_view text) { return Partition::parse(text); }

bool colored_less(ColoredInteger a, ColoredInteger b) {
  return compare_colored(a, b, 64) == std::strong_ordering::less;
}

// Oracle: search all of G(r,n) for the elements satisfying the three defining
// conditions of pi(f) directly.
std::vector<ColoredPermutation> pi_candidates(const ColoredSequence& f) {
  std::vector<ColoredPermutation> out;
  for (const auto& g : enumerate_group(f.r(), f.n())) {
    bool ok = true;
    for (std::size_t i = 0; ok && i < f.n(); ++i) {
      const auto s = g.sigma()[i] - 1;
      if (g.colors()[i] != f.colors()[s]) ok = false;
      if (i + 1 < f.n()) {
        const auto t = g.sigma()[i + 1] - 1;
        if (f.values()[s] > f.values()[t]) ok = false;
        if (f.values()[s] == f.values()[t] && !colored_less(g[i], g[i + 1])) ok = false;
      }
    }
    if (ok) out.push_back(g);
  }
  return out;
}

}  // namespace

TEST_CASE("sequence and partition parsing") {
  const auto f = S("4^2,4^1,1,3^3,6,3^1,4^2", 4);
  CHECK(f.to_string() == "4^2,4^1,1,3^3,6,3^1,4^2");
  CHECK(f.in_N0());
  CHECK_FALSE(S("0^1,2", 2).in_N0());
  CHECK(S("", 3).n() == 0);
  CHECK_THROWS_AS(S("1^3", 3), InvalidInput);
  CHECK_THROWS_AS(S("1^0", 3), InvalidInput);
  CHECK_THROWS_AS(S("1,,2", 3), InvalidInput);
  CHECK(P("0,2,2,3").to_string() == "0,2,2,3");
  CHECK(P("0,2,2,3").sum() == 7);
  CHECK_THROWS_AS(P("2,1"), InvalidInput);
  CHECK_THROWS_AS(P("1^1"), InvalidInput);
}

TEST_CASE("pi and lambda of the worked sequence") {
  const auto f = S("4^2,4^1,1,3^3,6,3^1,4^2", 4);
  CHECK(pi_of(f) == W("[3,6^1,4^3,7^2,2^1,1^2,5]", 4));
  CHECK(lambda_of(f) == P("1,2,2,2,2,2,4"));
  const auto st = seq_statistics(f);
  CHECK(st.max == 6);
  CHECK(st.sum == 25);
  CHECK(st.col == 9);
  CHECK(st.inv == statistics(pi_of(f)).length);
}

TEST_CASE("small encodings") {
  CHECK(pi_of(S("0,0,0", 3)).is_identity());
  CHECK(lambda_of(S("0,0,0", 3)) == Partition::zeros(3));
  CHECK(pi_of(S("2,1", 1)) == W("[2,1]", 1));
  CHECK(lambda_of(S("1^1", 2)) == P("0"));
  CHECK_THROWS_AS(lambda_of(S("0^1", 2)), InvalidInput);
  CHECK(pi_of(S("0^1", 2)) == W("[1^1]", 2));
  CHECK(seq_statistics(S("1^1", 2)) == SequenceStats{1, 1, 1, 1});
  CHECK(seq_statistics(S("0,0", 2)) == SequenceStats{});
  CHECK(sequence_from(W("[1^1]", 2), P("0")) == S("1^1", 2));
  CHECK(sequence_from(ColoredPermutation::identity(3, 3), Partition::zeros(3)) == S("0,0,0", 3));
  const auto empty = S("", 2);
  CHECK(pi_of(empty).n() == 0);
  CHECK(lambda_of(empty).size() == 0);
}

TEST_CASE("decoding a colored permutation with a partition") {
  // Computed value; see README for the printed example this differs from.
  const auto g = W("[5^1,3^1,1,2^2,4^2]", 3);
  const auto lam = P("0,2,2,3,3");
  const auto f = sequence_from(g, lam);
  CHECK(f.to_string() == "3,5^2,3^1,6^2,1^1");
  CHECK(pi_of(f) == g);
  CHECK(lambda_of(f) == lam);
  CHECK(descent_set(g) == std::vector<std::uint32_t>{0, 3, 4});
}

TEST_CASE("lambda^gamma and compatibility") {
  const auto g = W("[3,6^1,4^3,7^2,2^1,1,5]", 4);
  CHECK(lambda_gamma(P("0,1,1,3,3,4,5"), g).to_string() == "1,4^1,3^3,5^2,1^1,0,3");
  CHECK(descent_set(g) == std::vector<std::uint32_t>{1, 3});
  CHECK(is_compatible(P("1,3,3,4,4,4,6"), g));
  CHECK_FALSE(is_compatible(P("1,3,3,3,4,4,6"), g));
  CHECK_FALSE(is_compatible(Partition::zeros(2), W("[1^1,2]", 2)));
  CHECK(is_compatible(P("0,0,5"), ColoredPermutation::identity(2, 3)));
  const auto z = lambda_gamma(P("0"), W("[1^1]", 2));
  CHECK(z.to_string() == "0^1");
  CHECK_FALSE(z.in_N0());
}

TEST_CASE("pi agrees with the exhaustive search") {
  for (std::uint32_t r = 1; r <= 3; ++r) {
    for (std::size_t n = 1; n <= 3; ++n) {
      for (const auto& f : collect_sequences({.r = r, .n = n, .max_cap = 2, .restrict_N0 = false})) {
        const auto candidates = pi_candidates(f);
        REQUIRE(candidates.size() == 1);
        CHECK(pi_of(f) == candidates.front());
      }
    }
  }
}

TEST_CASE("round trips and the max/sum relations") {
  for (std::uint32_t r = 1; r <= 3; ++r) {
    for (std::size_t n = 0; n <= 3; ++n) {
      std::uint64_t seen = 0;
      for (const auto& f : collect_sequences({.r = r, .n = n, .max_cap = 3})) {
        ++seen;
        const auto g = pi_of(f);
        const auto lam = lambda_of(f);
        CHECK(sequence_from(g, lam) == f);
        const auto st = statistics(g);
        CHECK(f.n() == lam.size());
        CHECK(seq_statistics(f).max == lam.max() + st.des);
        CHECK(seq_statistics(f).sum + st.maj == lam.sum() + n * st.des);
        for (auto d : st.des_set) {
          if (d == 0) CHECK(f.values()[g.sigma()[0] - 1] > 0);
          else CHECK(f.values()[g.sigma()[d - 1] - 1] < f.values()[g.sigma()[d] - 1]);
        }
      }
      // |N_0^{(r,n)}| with cap 3: each entry is 0 or one of 3 values in r colors.
      std::uint64_t expect = 1;
      for (std::size_t i = 0; i < n; ++i) expect *= 1 + 3 * r;
      CHECK(seen == expect);
      for (const auto& g : enumerate_group(r, n)) {
        enumerate_partitions(n, 3, [&](const Partition& lam) {
          const auto f = sequence_from(g, lam);
          CHECK(f.in_N0());
          CHECK(pi_of(f) == g);
          CHECK(lambda_of(f) == lam);
        });
      }
    }
  }
}

TEST_CASE("compatible partitions are exactly the associated ones") {
  for (std::uint32_t r = 1; r <= 3; ++r) {
    for (std::size_t n = 1; n <= 3; ++n) {
      for (const auto& g : enumerate_group(r, n)) {
        const auto skew = skew_inverse(g);
        enumerate_partitions(n, 3, [&](const Partition& mu) {
          const auto f = lambda_gamma(mu, skew);
          CHECK(is_compatible(mu, g) == (f.in_N0() && pi_of(f) == g));
        });
      }
    }
  }
}

TEST_CASE("sequence enumeration") {
  CHECK(collect_sequences({.r = 2, .n = 1, .max_cap = 1}).size() == 3);
  CHECK(collect_sequences({.r = 1, .n = 2, .max_cap = 1}).size() == 4);
  CHECK(collect_sequences({.r = 2, .n = 1, .max_cap = 1, .restrict_N0 = false}).size() == 4);
  const auto comp = collect_sequences({.r = 2, .n = 2, .composition = std::vector<std::uint32_t>{1, 1}});
  std::vector<std::string> texts;
  for (const auto& f : comp) texts.push_back(f.to_string());
  std::sort(texts.begin(), texts.end());
  CHECK(texts == std::vector<std::string>{"0,1", "0,1^1", "1,0", "1^1,0"});
  CHECK_THROWS_AS(collect_sequences({.r = 2, .n = 3, .composition = std::vector<std::uint32_t>{1, 1}}),
                  InvalidInput);
  CHECK_THROWS_AS(collect_sequences({.r = 3, .n = 6, .max_cap = 5, .max_sequences = 1000}),
                  BudgetExceeded);

  std::uint64_t count = 0;
  enumerate_partitions(3, 2, [&](const Partition&) { ++count; });
  CHECK(count == 10);  // multisets of size 3 from {0,1,2}
}

TEST_CASE("random sequences round trip") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint32_t r = 1 + trial % 4;
    const std::size_t n = 1 + trial % 8;
    std::vector<std::uint32_t> values(n);
    std::vector<Color> colors(n);
    for (std::size_t i = 0; i < n; ++i) {
      values[i] = rng() % 6;
      colors[i] = values[i] == 0 ? 0 : rng() % r;
    }
    const ColoredSequence f(r, values, colors);
    CHECK(sequence_from(pi_of(f), lambda_of(f)) == f);
    CHECK(ColoredSequence::parse(f.to_string(), r) == f);
  }
}
