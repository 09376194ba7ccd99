#pragma once

// Exact sparse multivariate polynomials with per-variable truncation caps and
// the q-analogue constructors built on them.
//
// Every MultiPoly lives in a SeriesContext that fixes the variable order and
// the caps. Truncation is eager: any term with an exponent above its
// variable's cap is dropped by every operation, so each operation is a ring
// homomorphism onto the truncated ring and identities compared inside one
// context are exact within the caps.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wreath/errors.hpp"

namespace wreath {

using Rational = mpq_class;

inline constexpr std::size_t kMaxVariables = 10;
inline constexpr std::size_t kDefaultMaxTerms = 1'000'000;

using Exponents = std::array<std::uint16_t, kMaxVariables>;

/// Variable names accepted by SeriesContext.
std::span<const std::string_view> known_variables();

class SeriesContext {
 public:
  struct Variable {
    std::string name;
    std::optional<std::uint32_t> cap;  // nullopt: unbounded

    friend bool operator==(const Variable&, const Variable&) = default;
  };

  static std::shared_ptr<const SeriesContext> make(std::vector<Variable> variables,
                                                   std::size_t max_terms = kDefaultMaxTerms);

  std::size_t size() const noexcept { return variables_.size(); }
  const Variable& variable(std::size_t i) const { return variables_[i]; }
  std::size_t max_terms() const noexcept { return max_terms_; }

  /// Index of a variable; throws InvalidInput for names not in the context.
  std::size_t index_of(std::string_view name) const;
  bool has(std::string_view name) const noexcept;

  bool within_caps(const Exponents& e) const noexcept;

  friend bool operator==(const SeriesContext& a, const SeriesContext& b) {
    return a.variables_ == b.variables_ && a.max_terms_ == b.max_terms_;
  }

 private:
  SeriesContext(std::vector<Variable> variables, std::size_t max_terms);

  std::vector<Variable> variables_;
  std::size_t max_terms_;
};

using ContextPtr = std::shared_ptr<const SeriesContext>;

struct Term {
  Exponents exponents{};
  Rational coefficient;
};

class MultiPoly {
 public:
  explicit MultiPoly(ContextPtr context);

  static MultiPoly constant(ContextPtr context, const Rational& c);
  /// c * var^exp.
  static MultiPoly variable(ContextPtr context, std::string_view name, std::uint32_t exp = 1,
                            const Rational& c = 1);
  static MultiPoly monomial(ContextPtr context, const Exponents& exponents, const Rational& c);
  /// Builds from terms in any order; merges duplicates, drops zeros and out-of-cap terms.
  static MultiPoly from_terms(ContextPtr context, std::vector<Term> terms);

  const ContextPtr& context() const noexcept { return context_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  Rational coefficient(const Exponents& e) const;
  Rational constant_term() const { return coefficient(Exponents{}); }
  /// True when every coefficient has denominator 1.
  bool is_integral() const noexcept;

  /// Largest exponent of a variable among the terms (0 for the zero polynomial).
  std::uint32_t degree(std::string_view name) const;
  /// Coefficient of var^k, returned in the same context with that exponent cleared.
  MultiPoly coefficient_of(std::string_view name, std::uint32_t k) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  MultiPoly& operator*=(const Rational& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  /// mul_truncated, parallel above a size threshold.
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);

  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  /// Text form: one line "<num>/<den> : t^2 q^3" per term, lexicographic by
  /// exponent vector in context order; the empty monomial prints as "1".
  std::string to_text() const;
  std::string monomial_text(const Exponents& e) const;
  nlohmann::json to_json() const;

  /// Adds `delta` to the coefficient of the index-th term (test hook for the
  /// verification harness).
  void perturb_term(std::size_t index, const Rational& delta);

 private:
  friend class PolyBuilder;
  void assign_sorted(std::vector<Term> terms);

  ContextPtr context_;
  std::vector<Term> terms_;  // sorted by exponents, no zero coefficients
};

/// Serial reference product with truncation.
MultiPoly mul_truncated(const MultiPoly& x, const MultiPoly& y);

/// OpenMP product: splits x's term list across threads, merges deterministically.
MultiPoly mul_truncated_parallel(const MultiPoly& x, const MultiPoly& y, int threads);

MultiPoly power(const MultiPoly& x, std::uint32_t k);

/// Truncated inverse. Needs a nonzero constant term and every other term
/// divisible by some capped variable (so that x - c is nilpotent). Computed by
/// Newton iteration y <- y(1 + e), e <- e^2 with e = 1 - xy.
MultiPoly reciprocal(const MultiPoly& x);

/// x with `name` replaced by `value`; powers of value are truncated as they grow.
MultiPoly substitute(const MultiPoly& x, std::string_view name, const MultiPoly& value);

/// Exact quotient x / y. Throws std::logic_error when y does not divide x.
MultiPoly divide_exact(const MultiPoly& x, const MultiPoly& y);

/// (a; base)_n = prod_{i=0}^{n-1} (1 - a * base^i); equals 1 for n = 0.
MultiPoly pochhammer(const MultiPoly& a, const MultiPoly& base, std::uint32_t n);
MultiPoly pochhammer(const MultiPoly& a, std::string_view base_var, std::uint32_t n);

/// (a; p, q)_{n,m} = prod_{1<=i<=n, 1<=j<=m} (1 - a p^{i-1} q^{j-1}). nullopt
/// stands for an infinite leg, which is cut where the factors truncate to 1;
/// that requires every term of a * base to involve a capped variable.
MultiPoly double_pochhammer(const MultiPoly& a, const MultiPoly& p_base, const MultiPoly& q_base,
                            std::optional<std::uint32_t> n, std::optional<std::uint32_t> m);

/// [n]_base = 1 + base + ... + base^{n-1}.
MultiPoly q_int(const MultiPoly& base, std::uint32_t n);
/// [n]_base! = [n]_base [n-1]_base ... [1]_base.
MultiPoly q_fact(const MultiPoly& base, std::uint32_t n);
/// [n^]_{a,base}! = (-a base; base)_n [n]_base!.
MultiPoly hat_fact(const MultiPoly& a, const MultiPoly& base, std::uint32_t n);
/// [m]_{a,b} = sum_{h=0}^{m-1} a^h b^{m-1-h}; [0]_{a,b} = 0.
MultiPoly bracket_ab(const MultiPoly& a, const MultiPoly& b, std::uint32_t m);

/// [n^]_{a,base}! / ([n_0^]_{a,base}! [n_1]_base! ... [n_k]_base!) with n = sum of
/// parts, computed by exact division.
MultiPoly hat_multinomial(std::span<const std::uint32_t> parts, const MultiPoly& a,
                          const MultiPoly& base);

/// A power series in one variable u whose u^m coefficient is num_m / den_m
/// for polynomials num_m (which carry the u^m themselves) and den_m (free of u).
/// Exponential series with non-polynomial coefficients are carried this way
/// and only ever collapsed through cleared_coefficient.
class FractionSeries {
 public:
  FractionSeries(std::string u_var, std::vector<MultiPoly> numerators,
                 std::vector<MultiPoly> denominators);

  const std::string& u_var() const noexcept { return u_var_; }
  std::uint32_t cap() const noexcept { return static_cast<std::uint32_t>(numerators_.size() - 1); }
  const MultiPoly& numerator(std::uint32_t m) const { return numerators_.at(m); }
  const MultiPoly& denominator(std::uint32_t m) const { return denominators_.at(m); }

  /// Substitution applied to the numerators (e.g. u <- (1 - t) u, u <- q^i u).
  FractionSeries substituted(std::string_view name, const MultiPoly& value) const;

  /// Collapses to a polynomial when every denominator is a constant.
  MultiPoly to_poly() const;

 private:
  std::string u_var_;
  std::vector<MultiPoly> numerators_;
  std::vector<MultiPoly> denominators_;
};

enum class ExpKind { classical, p_analogue, hat };

/// classical: sum u^m / m!;  p_analogue: e[u]_p = sum u^m / [m]_p!;
/// hat: e^[u]_{a,p} = sum u^m / [m^]_{a,p}!.  `a` is ignored unless kind is hat
/// and `base` is ignored for the classical kind. The u cap defaults to the
/// context's cap for u; InvalidInput if neither is available.
FractionSeries exp_series(ExpKind kind, const ContextPtr& context, std::string_view u_var,
                          const MultiPoly& a, const MultiPoly& base,
                          std::optional<std::uint32_t> cap_u = std::nullopt);

/// clearing * [u^n] prod(factors), summed over compositions of n and using
/// exact division of `clearing` by each product of denominators.
MultiPoly cleared_coefficient(std::span<const FractionSeries> factors, std::uint32_t n,
                              const MultiPoly& clearing);

}  // namespace wreath
