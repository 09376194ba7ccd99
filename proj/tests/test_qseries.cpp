#include <doctest.h>

#include <random>

#include "wreath/qseries.hpp"

using namespace wreath;

namespace {

ContextPtr ctx(std::vector<SeriesContext::Variable> vars) { return SeriesContext::make(std::move(vars)); }

MultiPoly one(const ContextPtr& c) { return MultiPoly::constant(c, 1); }

// Oracle: dense univariate convolution over int64, used to cross-check
// products and reciprocals of one-variable polynomials.
std::vector<std::int64_t> dense_mul(const std::vector<std::int64_t>& x, const std::vector<std::int64_t>& y,
                                    std::size_t cap) {
  std::vector<std::int64_t> out(cap + 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size() && i + j <= cap; ++j) out[i + j] += x[i] * y[j];
  }
  return out;
}

MultiPoly from_dense(const ContextPtr& c, std::string_view var, const std::vector<std::int64_t>& v) {
  MultiPoly out(c);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i]) out += MultiPoly::variable(c, var, static_cast<std::uint32_t>(i), Rational(v[i]));
  }
  return out;
}

MultiPoly random_poly(std::mt19937& rng, const ContextPtr& c, int terms) {
  std::vector<Term> out;
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int k = 0; k < terms; ++k) {
    Term t;
    for (std::size_t v = 0; v < c->size(); ++v) {
      t.exponents[v] = static_cast<std::uint16_t>(rng() % (*c->variable(v).cap + 1));
    }
    t.coefficient = coef(rng);
    out.push_back(t);
  }
  return MultiPoly::from_terms(c, std::move(out));
}

}  // namespace

TEST_CASE("contexts") {
  CHECK_THROWS_AS(ctx({{"x", 2}}), InvalidInput);
  CHECK_THROWS_AS(ctx({{"t", 2}, {"t", 3}}), InvalidInput);
  const auto c = ctx({{"t", 2}, {"q", std::nullopt}});
  CHECK(c->index_of("q") == 1);
  CHECK_THROWS_AS(c->index_of("p"), InvalidInput);
  const auto d = ctx({{"t", 3}});
  CHECK_THROWS_AS(MultiPoly::variable(c, "t") + MultiPoly::variable(d, "t"), InvalidInput);
  CHECK_THROWS_AS(MultiPoly::variable(c, "t") * MultiPoly::variable(d, "t"), InvalidInput);
}

TEST_CASE("truncated products") {
  const auto c = ctx({{"t", 2}, {"q", 1}, {"p", 9}});
  const auto t = MultiPoly::variable(c, "t");
  const auto q = MultiPoly::variable(c, "q");
  const auto p = MultiPoly::variable(c, "p");
  CHECK((one(c) + t) * (one(c) - t) == one(c) - t * t);
  CHECK(((one(c) + t) * (one(c) - t)).to_text() == "1/1 : 1\n-1/1 : t^2\n");
  CHECK((one(c) + q) * (one(c) + q) == one(c) + q * Rational(2));
  CHECK(t * t * t == MultiPoly(c));
  CHECK(q_int(p, 3) * q_int(p, 2) == q_fact(p, 3));
  CHECK((q_int(p, 3) * q_int(p, 2)).coefficient({0, 0, 2}) == 2);
}

TEST_CASE("text and json") {
  const auto c = ctx({{"t", 3}, {"q", 3}});
  const auto x = MultiPoly::variable(c, "t", 2, Rational(1, 2)) * MultiPoly::variable(c, "q", 3) +
                 MultiPoly::constant(c, -4);
  CHECK(x.to_text() == "-4/1 : 1\n1/2 : t^2 q^3\n");
  const auto j = x.to_json();
  REQUIRE(j.size() == 2);
  CHECK(j[1]["coefficient"] == "1/2");
  CHECK(j[1]["exponents"]["t"] == 2);
  CHECK(MultiPoly(c).to_text().empty());
}

TEST_CASE("ring laws on random polynomials") {
  const auto c = ctx({{"t", 3}, {"q", 4}, {"a", 2}});
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const auto x = random_poly(rng, c, 6), y = random_poly(rng, c, 6), z = random_poly(rng, c, 6);
    CHECK(x * y == y * x);
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK((x + y) + z == x + (y + z));
    CHECK(x - x == MultiPoly(c));
    CHECK(mul_truncated(x, y) == mul_truncated_parallel(x, y, 4));
  }
}

TEST_CASE("products agree with dense convolution") {
  const auto c = ctx({{"q", 12}});
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::int64_t> x(7), y(9);
    for (auto& v : x) v = static_cast<std::int64_t>(rng() % 9) - 4;
    for (auto& v : y) v = static_cast<std::int64_t>(rng() % 9) - 4;
    CHECK(from_dense(c, "q", x) * from_dense(c, "q", y) == from_dense(c, "q", dense_mul(x, y, 12)));
  }
}

TEST_CASE("reciprocal") {
  const auto c = ctx({{"t", 3}});
  const auto t = MultiPoly::variable(c, "t");
  CHECK(reciprocal(one(c) - t) == one(c) + t + t * t + t * t * t);
  CHECK(reciprocal(MultiPoly::constant(c, 2)) == MultiPoly::constant(c, Rational(1, 2)));
  CHECK_THROWS_AS(reciprocal(t), InvalidInput);

  const auto d = ctx({{"t", 2}, {"q", 2}});
  const auto T = MultiPoly::variable(d, "t");
  const auto Q = MultiPoly::variable(d, "q");
  const auto expected = one(d) + T * (one(d) + Q) + T * T * (one(d) + Q + Q * Q);
  CHECK(reciprocal(pochhammer(T, "q", 2)) == expected);

  const auto e = ctx({{"t", 4}, {"q", 4}, {"a", 2}});
  std::mt19937 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    auto x = random_poly(rng, e, 5);
    x += one(e) - MultiPoly::constant(e, x.constant_term());
    const auto y = reciprocal(x);
    CHECK(x * y == one(e));
    CHECK(y * x == one(e));
    CHECK(reciprocal(y) == x);
  }

  const auto unbounded = ctx({{"t", std::nullopt}});
  CHECK_THROWS_AS(reciprocal(one(unbounded) - MultiPoly::variable(unbounded, "t")), InvalidInput);
}

TEST_CASE("Gaussian degrees of 1/(t;q)_{n+1}") {
  const auto c = ctx({{"t", 4}, {"q", 40}});
  const auto t = MultiPoly::variable(c, "t");
  for (std::uint32_t n = 0; n <= 4; ++n) {
    const auto inv = reciprocal(pochhammer(t, "q", n + 1));
    for (std::uint32_t m = 0; m <= 4; ++m) CHECK(inv.coefficient_of("t", m).degree("q") == m * n);
  }
}

TEST_CASE("substitution") {
  const auto c = ctx({{"u", 2}, {"t", 2}});
  const auto u = MultiPoly::variable(c, "u");
  const auto t = MultiPoly::variable(c, "t");
  const auto sub = substitute(u * u, "u", (one(c) - t) * u);
  CHECK(sub == u * u * (one(c) - t * Rational(2) + t * t));
  CHECK_THROWS_AS(substitute(u, "q", t), InvalidInput);

  const auto d = ctx({{"a", 4}, {"p", 4}});
  const auto a = MultiPoly::variable(d, "a");
  const auto p = MultiPoly::variable(d, "p");
  CHECK(substitute(one(d) + a, "a", a * q_int(a * p, 2)) == one(d) + a + a * a * p);
}

TEST_CASE("pochhammer symbols") {
  const auto c = ctx({{"t", 6}, {"q", 20}, {"p", 20}});
  const auto t = MultiPoly::variable(c, "t");
  const auto q = MultiPoly::variable(c, "q");
  const auto p = MultiPoly::variable(c, "p");
  CHECK(pochhammer(t, "q", 0) == one(c));
  CHECK(pochhammer(t, "q", 1) == one(c) - t);
  CHECK(pochhammer(t, "q", 2) == (one(c) - t) * (one(c) - t * q));
  for (std::uint32_t n = 0; n < 6; ++n) {
    CHECK(pochhammer(t, "q", n + 1) == pochhammer(t, "q", n) * (one(c) - t * power(q, n)));
  }
  const auto a = -(p * q_int(p, 2));
  CHECK(pochhammer(a, "p", 2) == (one(c) + p * (one(c) + p)) * (one(c) + p * p * (one(c) + p)));
}

TEST_CASE("double pochhammer") {
  const auto c = ctx({{"u", 1}, {"p", 1}, {"q", 1}});
  const auto u = MultiPoly::variable(c, "u");
  const auto p = MultiPoly::variable(c, "p");
  const auto q = MultiPoly::variable(c, "q");
  CHECK(double_pochhammer(u, p, q, std::nullopt, std::nullopt) == one(c) - u * (one(c) + p + q + p * q));
  CHECK(double_pochhammer(u, p, q, 0, std::nullopt) == one(c));

  const auto d = ctx({{"u", 3}, {"q1", 3}, {"q2", 3}});
  const auto U = MultiPoly::variable(d, "u");
  const auto Q1 = MultiPoly::variable(d, "q1");
  const auto Q2 = MultiPoly::variable(d, "q2");
  CHECK(double_pochhammer(U, Q1, Q2, 1, 1) == one(d) - U);
  CHECK(double_pochhammer(U, Q1, Q2, 2, 1) == (one(d) - U) * (one(d) - U * Q1));
  CHECK(double_pochhammer(U, Q1, Q2, 2, 2) ==
        (one(d) - U) * (one(d) - U * Q1) * (one(d) - U * Q2) * (one(d) - U * Q1 * Q2));

  const auto e = ctx({{"u", std::nullopt}, {"p", 2}, {"q", 2}});
  // The p leg truncates through the cap on p; a leg in u alone never does.
  CHECK_NOTHROW(double_pochhammer(MultiPoly::variable(e, "u"), MultiPoly::variable(e, "p"),
                                  MultiPoly::variable(e, "q"), std::nullopt, 2));
  CHECK_THROWS_AS(double_pochhammer(MultiPoly::variable(e, "u"), MultiPoly::variable(e, "u"),
                                    MultiPoly::variable(e, "q"), std::nullopt, 2),
                  InvalidInput);
}

TEST_CASE("q-analogues") {
  const auto c = ctx({{"a", 10}, {"b", 10}, {"p", 30}});
  const auto a = MultiPoly::variable(c, "a");
  const auto b = MultiPoly::variable(c, "b");
  const auto p = MultiPoly::variable(c, "p");
  CHECK(q_int(p, 3) == one(c) + p + p * p);
  CHECK(q_int(p, 0) == MultiPoly(c));
  CHECK(q_fact(p, 0) == one(c));
  CHECK(hat_fact(a, p, 1) == one(c) + a * p);
  CHECK(hat_fact(a, p, 0) == one(c));
  CHECK(bracket_ab(a, b, 2) == a + b);
  CHECK(bracket_ab(a, b, 0) == MultiPoly(c));
  CHECK(bracket_ab(a, b, 3) == a * a + a * b + b * b);
  // [n]_{a,b} (a - b) = a^n - b^n
  for (std::uint32_t n = 0; n <= 5; ++n) CHECK(bracket_ab(a, b, n) * (a - b) == power(a, n) - power(b, n));
}

TEST_CASE("hat multinomials") {
  const auto c = ctx({{"a", 12}, {"p", 30}});
  const auto a = MultiPoly::variable(c, "a");
  const auto p = MultiPoly::variable(c, "p");
  const std::vector<std::uint32_t> whole{3};
  CHECK(hat_multinomial(whole, a, p) == one(c));
  const std::vector<std::uint32_t> split{0, 1, 1};
  CHECK(hat_multinomial(split, a, p) == (one(c) + a * p) * (one(c) + a * p * p) * (one(c) + p));
  for (const auto& parts : std::vector<std::vector<std::uint32_t>>{{1, 1}, {2, 1, 2}, {0, 3, 1}, {1, 0, 2, 1}}) {
    std::uint32_t n = 0;
    MultiPoly den = hat_fact(a, p, parts[0]);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      n += parts[i];
      if (i) den = den * q_fact(p, parts[i]);
    }
    CHECK(hat_multinomial(parts, a, p) * den == hat_fact(a, p, n));
  }
  CHECK_THROWS_AS(divide_exact(one(c) + p, one(c) + a), std::logic_error);
}

TEST_CASE("exponential series") {
  const auto c = ctx({{"u", 2}, {"a", 4}, {"p", 8}});
  const auto a = MultiPoly::variable(c, "a");
  const auto p = MultiPoly::variable(c, "p");
  const auto u = MultiPoly::variable(c, "u");

  const auto e = exp_series(ExpKind::p_analogue, c, "u", a, p);
  CHECK(e.cap() == 2);
  CHECK(e.numerator(2) == u * u);
  CHECK(e.denominator(2) == q_fact(p, 2));
  CHECK(e.denominator(1) == one(c));

  const auto h = exp_series(ExpKind::hat, c, "u", a, p, 1);
  CHECK(h.cap() == 1);
  CHECK(h.denominator(1) == one(c) + a * p);

  const auto cl = exp_series(ExpKind::classical, c, "u", a, p).to_poly();
  CHECK(cl == one(c) + u + u * u * Rational(1, 2));
  CHECK_THROWS_AS(e.to_poly(), InvalidInput);

  // [u^n] e[u/(1-p)]_p = 1/(p;p)_n, checked by clearing with (p;p)_n [n]_p!.
  const auto d = ctx({{"u", 3}, {"p", 6}});
  const auto P = MultiPoly::variable(d, "p");
  const auto U = MultiPoly::variable(d, "u");
  const auto geometric = reciprocal(MultiPoly::constant(d, 1) - P);
  const auto shifted = exp_series(ExpKind::p_analogue, d, "u", P, P).substituted("u", U * geometric);
  for (std::uint32_t n = 0; n <= 3; ++n) {
    const auto clearing = q_fact(P, n);
    const std::vector<FractionSeries> factors{shifted};
    const auto lhs = cleared_coefficient(factors, n, clearing) * pochhammer(P, "p", n);
    CHECK(lhs == clearing);
  }
}
