#include <doctest.h>

#include <random>

#include "wreath/identities.hpp"

using namespace wreath;

// The OpenMP kernels must agree exactly with their serial references for any
// thread count, including counts above the number of cores.

TEST_CASE("parallel distribution polynomial matches the serial one") {
  const auto c = SeriesContext::make({{"t", std::nullopt}, {"q", std::nullopt}, {"p", std::nullopt},
                                      {"a", std::nullopt}, {"b", std::nullopt}});
  const StatVector stats{{Stat::des, "t"}, {Stat::maj, "q"}, {Stat::length, "p"}, {Stat::col, "a"},
                         {Stat::icol, "b"}};
  for (auto [r, n] : {std::pair{1U, 6U}, std::pair{2U, 5U}, std::pair{3U, 4U}, std::pair{4U, 3U}}) {
    const auto ref = dist_polynomial_serial(r, n, stats, c);
    for (int threads : {1, 2, 3, 8}) CHECK(dist_polynomial(r, n, stats, c, kDefaultMaxElements, threads) == ref);
  }
}

TEST_CASE("parallel truncated product matches the serial one") {
  const auto c = SeriesContext::make({{"t", 6}, {"q", 30}, {"a", 5}});
  std::mt19937 rng(17);
  auto random_poly = [&](int terms) {
    std::vector<Term> out;
    for (int k = 0; k < terms; ++k) {
      Term t;
      t.exponents[0] = static_cast<std::uint16_t>(rng() % 7);
      t.exponents[1] = static_cast<std::uint16_t>(rng() % 31);
      t.exponents[2] = static_cast<std::uint16_t>(rng() % 6);
      t.coefficient = Rational(static_cast<long>(rng() % 2001) - 1000, 1 + rng() % 3);
      out.push_back(t);
    }
    return MultiPoly::from_terms(c, std::move(out));
  };
  for (int trial = 0; trial < 5; ++trial) {
    const auto x = random_poly(300), y = random_poly(300);
    const auto ref = mul_truncated(x, y);
    for (int threads : {1, 2, 4, 7}) CHECK(mul_truncated_parallel(x, y, threads) == ref);
    CHECK((x * y) == ref);
  }
}

TEST_CASE("thread count honours the environment") {
  CHECK(parallel::thread_count() >= 1);
}
