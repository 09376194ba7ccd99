#include "wreath/qseries.hpp"

#include <omp.h>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "wreath/parallel.hpp"

namespace wreath {

namespace {

constexpr std::string_view kKnownVariables[] = {"u", "t", "q", "p", "a",
                                                "b", "t1", "t2", "q1", "q2"};

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto x : e) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

bool add_exponents(const Exponents& a, const Exponents& b, Exponents& out) {
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    const std::uint32_t s = static_cast<std::uint32_t>(a[i]) + b[i];
    if (s > 0xFFFF) throw std::overflow_error("exponent exceeds 65535");
    out[i] = static_cast<std::uint16_t>(s);
  }
  return true;
}

void require_same_context(const MultiPoly& a, const MultiPoly& b, const char* op) {
  if (a.context() != b.context() && !(*a.context() == *b.context())) {
    throw InvalidInput(std::string(op) + ": polynomials live in different series contexts");
  }
}

void check_budget(const ContextPtr& ctx, std::size_t terms) {
  if (terms > ctx->max_terms()) {
    throw BudgetExceeded("polynomial with " + std::to_string(terms) +
                         " terms exceeds the term budget of " + std::to_string(ctx->max_terms()));
  }
}

std::vector<Term> sorted_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return x.exponents < y.exponents; });
  return terms;
}

// Accumulates products of term ranges into a hash map. Integral inputs take
// the mpz path, which skips the gcd normalization of mpq.
template <class Coeff>
void accumulate_products(std::span<const Term> xs, std::span<const Term> ys,
                         const SeriesContext& ctx,
                         std::unordered_map<Exponents, Coeff, ExponentsHash>& acc) {
  Exponents e{};
  for (const auto& xt : xs) {
    Coeff cx;
    if constexpr (std::is_same_v<Coeff, mpz_class>) {
      cx = xt.coefficient.get_num();
    } else {
      cx = xt.coefficient;
    }
    for (const auto& yt : ys) {
      add_exponents(xt.exponents, yt.exponents, e);
      if (!ctx.within_caps(e)) continue;
      Coeff& slot = acc[e];
      if constexpr (std::is_same_v<Coeff, mpz_class>) {
        mpz_addmul(slot.get_mpz_t(), cx.get_mpz_t(), yt.coefficient.get_num_mpz_t());
      } else {
        slot += cx * yt.coefficient;
      }
    }
  }
}

template <class Coeff>
std::vector<Term> drain(std::unordered_map<Exponents, Coeff, ExponentsHash>& acc) {
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [e, c] : acc) {
    if (sgn(c) == 0) continue;
    out.push_back(Term{e, Rational(c)});
  }
  return sorted_terms(std::move(out));
}

template <class Coeff>
std::vector<Term> product_terms(const MultiPoly& x, const MultiPoly& y, int threads) {
  const auto& ctx = *x.context();
  const auto xs = x.terms();
  if (threads <= 1 || xs.size() < 2) {
    std::unordered_map<Exponents, Coeff, ExponentsHash> acc;
    accumulate_products<Coeff>(xs, y.terms(), ctx, acc);
    return drain(acc);
  }
  const int chunks = std::min<int>(threads, static_cast<int>(xs.size()));
  std::vector<std::unordered_map<Exponents, Coeff, ExponentsHash>> partial(chunks);
#pragma omp parallel for num_threads(threads) schedule(static)
  for (int c = 0; c < chunks; ++c) {
    const std::size_t begin = xs.size() * c / chunks;
    const std::size_t end = xs.size() * (c + 1) / chunks;
    accumulate_products<Coeff>(xs.subspan(begin, end - begin), y.terms(), ctx, partial[c]);
  }
  // Merge in chunk order.
  auto& acc = partial[0];
  for (int c = 1; c < chunks; ++c) {
    for (auto& [e, v] : partial[c]) acc[e] += v;
  }
  return drain(acc);
}

MultiPoly product(const MultiPoly& x, const MultiPoly& y, int threads) {
  require_same_context(x, y, "mul_truncated");
  MultiPoly out(x.context());
  if (x.is_zero() || y.is_zero()) return out;
  std::vector<Term> terms = x.is_integral() && y.is_integral()
                                ? product_terms<mpz_class>(x, y, threads)
                                : product_terms<mpq_class>(x, y, threads);
  check_budget(x.context(), terms.size());
  return MultiPoly::from_terms(x.context(), std::move(terms));
}

// Term pairs above which operator* hands off to the parallel kernel.
constexpr std::size_t kParallelThreshold = 1 << 14;

}  // namespace

std::span<const std::string_view> known_variables() { return kKnownVariables; }

SeriesContext::SeriesContext(std::vector<Variable> variables, std::size_t max_terms)
    : variables_(std::move(variables)), max_terms_(max_terms) {}

std::shared_ptr<const SeriesContext> SeriesContext::make(std::vector<Variable> variables,
                                                         std::size_t max_terms) {
  if (variables.size() > kMaxVariables) throw InvalidInput("too many series variables");
  for (std::size_t i = 0; i < variables.size(); ++i) {
    const auto& name = variables[i].name;
    if (std::find(std::begin(kKnownVariables), std::end(kKnownVariables), name) ==
        std::end(kKnownVariables)) {
      throw InvalidInput("unknown series variable '" + name + "'");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (variables[j].name == name) throw InvalidInput("duplicate series variable '" + name + "'");
    }
    if (variables[i].cap && *variables[i].cap > 0xFFFF) {
      throw InvalidInput("cap for '" + name + "' exceeds 65535");
    }
  }
  return std::shared_ptr<const SeriesContext>(new SeriesContext(std::move(variables), max_terms));
}

std::size_t SeriesContext::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i].name == name) return i;
  }
  throw InvalidInput("variable '" + std::string(name) + "' is not in the series context");
}

bool SeriesContext::has(std::string_view name) const noexcept {
  return std::any_of(variables_.begin(), variables_.end(),
                     [&](const Variable& v) { return v.name == name; });
}

bool SeriesContext::within_caps(const Exponents& e) const noexcept {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i].cap && e[i] > *variables_[i].cap) return false;
  }
  return true;
}

MultiPoly::MultiPoly(ContextPtr context) : context_(std::move(context)) {
  if (!context_) throw InvalidInput("null series context");
}

MultiPoly MultiPoly::constant(ContextPtr context, const Rational& c) {
  return monomial(std::move(context), Exponents{}, c);
}

MultiPoly MultiPoly::variable(ContextPtr context, std::string_view name, std::uint32_t exp,
                              const Rational& c) {
  Exponents e{};
  if (exp > 0xFFFF) throw std::overflow_error("exponent exceeds 65535");
  e[context->index_of(name)] = static_cast<std::uint16_t>(exp);
  return monomial(std::move(context), e, c);
}

MultiPoly MultiPoly::monomial(ContextPtr context, const Exponents& exponents, const Rational& c) {
  MultiPoly out(std::move(context));
  if (sgn(c) != 0 && out.context_->within_caps(exponents)) {
    Rational coefficient = c;
    coefficient.canonicalize();
    out.terms_.push_back(Term{exponents, coefficient});
  }
  return out;
}

MultiPoly MultiPoly::from_terms(ContextPtr context, std::vector<Term> terms) {
  MultiPoly out(std::move(context));
  terms = sorted_terms(std::move(terms));
  std::vector<Term> merged;
  merged.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.context_->within_caps(t.exponents)) continue;
    if (!merged.empty() && merged.back().exponents == t.exponents) {
      merged.back().coefficient += t.coefficient;
    } else {
      merged.push_back(std::move(t));
    }
  }
  std::erase_if(merged, [](const Term& t) { return sgn(t.coefficient) == 0; });
  for (auto& t : merged) t.coefficient.canonicalize();
  out.terms_ = std::move(merged);
  return out;
}

void MultiPoly::assign_sorted(std::vector<Term> terms) { terms_ = std::move(terms); }

Rational MultiPoly::coefficient(const Exponents& e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, const Exponents& key) { return t.exponents < key; });
  if (it != terms_.end() && it->exponents == e) return it->coefficient;
  return 0;
}

bool MultiPoly::is_integral() const noexcept {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.coefficient.get_den() == 1; });
}

std::uint32_t MultiPoly::degree(std::string_view name) const {
  const std::size_t i = context_->index_of(name);
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max<std::uint32_t>(d, t.exponents[i]);
  return d;
}

MultiPoly MultiPoly::coefficient_of(std::string_view name, std::uint32_t k) const {
  const std::size_t i = context_->index_of(name);
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.exponents[i] != k) continue;
    Term copy = t;
    copy.exponents[i] = 0;
    out.push_back(std::move(copy));
  }
  MultiPoly result(context_);
  result.assign_sorted(sorted_terms(std::move(out)));
  return result;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& t : out.terms_) t.coefficient = -t.coefficient;
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  require_same_context(*this, other, "add");
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->exponents < b->exponents)) {
      merged.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->exponents < a->exponents) {
      merged.push_back(*b++);
    } else {
      Rational c = a->coefficient + b->coefficient;
      if (sgn(c) != 0) merged.push_back(Term{a->exponents, std::move(c)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  check_budget(context_, terms_.size());
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) { return *this += -other; }

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coefficient *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  const int threads = parallel::thread_count();
  if (threads > 1 && a.size() * b.size() >= kParallelThreshold) {
    return a.size() >= b.size() ? product(a, b, threads) : product(b, a, threads);
  }
  return product(a, b, 1);
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (!(*a.context() == *b.context())) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].exponents != b.terms_[i].exponents ||
        a.terms_[i].coefficient != b.terms_[i].coefficient) {
      return false;
    }
  }
  return true;
}

std::string MultiPoly::monomial_text(const Exponents& e) const {
  std::string out;
  for (std::size_t i = 0; i < context_->size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += " ";
    out += context_->variable(i).name + "^" + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

std::string MultiPoly::to_text() const {
  std::string out;
  for (const auto& t : terms_) {
    out += t.coefficient.get_num().get_str() + "/" + t.coefficient.get_den().get_str() + " : " +
           monomial_text(t.exponents) + "\n";
  }
  return out;
}

nlohmann::json MultiPoly::to_json() const {
  auto out = nlohmann::json::array();
  for (const auto& t : terms_) {
    nlohmann::json exps = nlohmann::json::object();
    for (std::size_t i = 0; i < context_->size(); ++i) {
      if (t.exponents[i] != 0) exps[context_->variable(i).name] = t.exponents[i];
    }
    out.push_back({{"coefficient", t.coefficient.get_num().get_str() + "/" +
                                       t.coefficient.get_den().get_str()},
                   {"exponents", exps}});
  }
  return out;
}

void MultiPoly::perturb_term(std::size_t index, const Rational& delta) {
  if (index >= terms_.size()) throw std::out_of_range("perturb_term: index out of range");
  terms_[index].coefficient += delta;
  if (sgn(terms_[index].coefficient) == 0) {
    terms_.erase(terms_.begin() + static_cast<std::ptrdiff_t>(index));
  }
}

MultiPoly mul_truncated(const MultiPoly& x, const MultiPoly& y) { return product(x, y, 1); }

MultiPoly mul_truncated_parallel(const MultiPoly& x, const MultiPoly& y, int threads) {
  return product(x, y, threads);
}

MultiPoly power(const MultiPoly& x, std::uint32_t k) {
  MultiPoly result = MultiPoly::constant(x.context(), 1);
  MultiPoly base = x;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

MultiPoly reciprocal(const MultiPoly& x) {
  const Rational c = x.constant_term();
  if (sgn(c) == 0) throw InvalidInput("reciprocal: constant term is not a unit");
  const auto& ctx = *x.context();
  for (const auto& t : x.terms()) {
    if (t.exponents == Exponents{}) continue;
    bool capped = false;
    for (std::size_t i = 0; i < ctx.size() && !capped; ++i) {
      capped = t.exponents[i] > 0 && ctx.variable(i).cap.has_value();
    }
    if (!capped) {
      throw InvalidInput("reciprocal: term " + x.monomial_text(t.exponents) +
                         " involves no capped variable, the inverse is not a finite truncation");
    }
  }
  const MultiPoly one = MultiPoly::constant(x.context(), 1);
  MultiPoly y = MultiPoly::constant(x.context(), 1 / c);
  MultiPoly e = one - x * y;
  while (!e.is_zero()) {
    y += y * e;
    e = e * e;
  }
  return y;
}

MultiPoly substitute(const MultiPoly& x, std::string_view name, const MultiPoly& value) {
  require_same_context(x, value, "substitute");
  const std::size_t idx = x.context()->index_of(name);
  std::map<std::uint32_t, std::vector<Term>> parts;
  for (const auto& t : x.terms()) {
    Term stripped = t;
    stripped.exponents[idx] = 0;
    parts[t.exponents[idx]].push_back(std::move(stripped));
  }
  MultiPoly result(x.context());
  MultiPoly pw = MultiPoly::constant(x.context(), 1);
  std::uint32_t current = 0;
  for (auto& [k, terms] : parts) {
    while (current < k) {
      pw = pw * value;
      ++current;
    }
    result += MultiPoly::from_terms(x.context(), std::move(terms)) * pw;
  }
  return result;
}

MultiPoly divide_exact(const MultiPoly& x, const MultiPoly& y) {
  require_same_context(x, y, "divide_exact");
  if (y.is_zero()) throw std::logic_error("divide_exact: division by zero");
  const auto& ctx = *x.context();
  std::map<Exponents, Rational> rem;
  for (const auto& t : x.terms()) rem.emplace(t.exponents, t.coefficient);
  const Term& lead = y.terms().back();
  std::vector<Term> quotient;
  while (!rem.empty()) {
    auto top = std::prev(rem.end());
    Exponents qe{};
    for (std::size_t i = 0; i < kMaxVariables; ++i) {
      if (top->first[i] < lead.exponents[i]) {
        throw std::logic_error("divide_exact: divisor does not divide dividend");
      }
      qe[i] = static_cast<std::uint16_t>(top->first[i] - lead.exponents[i]);
    }
    if (!ctx.within_caps(qe)) {
      throw std::logic_error("divide_exact: quotient leaves the truncation window");
    }
    const Rational qc = top->second / lead.coefficient;
    quotient.push_back(Term{qe, qc});
    for (const auto& t : y.terms()) {
      Exponents e{};
      add_exponents(qe, t.exponents, e);
      auto [it, inserted] = rem.try_emplace(e, 0);
      it->second -= qc * t.coefficient;
      if (sgn(it->second) == 0) rem.erase(it);
    }
  }
  return MultiPoly::from_terms(x.context(), std::move(quotient));
}

MultiPoly pochhammer(const MultiPoly& a, const MultiPoly& base, std::uint32_t n) {
  require_same_context(a, base, "pochhammer");
  MultiPoly acc = MultiPoly::constant(a.context(), 1);
  MultiPoly term = a;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (!term.is_zero()) acc -= acc * term;
    if (i + 1 < n) term = term * base;
  }
  return acc;
}

MultiPoly pochhammer(const MultiPoly& a, std::string_view base_var, std::uint32_t n) {
  return pochhammer(a, MultiPoly::variable(a.context(), base_var), n);
}

namespace {

// Each term involves a capped variable, so powers eventually truncate to zero.
bool powers_vanish(const MultiPoly& base) {
  if (base.is_zero()) return true;
  const auto& ctx = *base.context();
  for (const auto& t : base.terms()) {
    bool capped = false;
    for (std::size_t i = 0; i < ctx.size() && !capped; ++i) {
      capped = t.exponents[i] > 0 && ctx.variable(i).cap.has_value();
    }
    if (!capped) return false;
  }
  return true;
}

}  // namespace

MultiPoly double_pochhammer(const MultiPoly& a, const MultiPoly& p_base, const MultiPoly& q_base,
                            std::optional<std::uint32_t> n, std::optional<std::uint32_t> m) {
  require_same_context(a, p_base, "double_pochhammer");
  require_same_context(a, q_base, "double_pochhammer");
  if ((!n && !powers_vanish(p_base) && !powers_vanish(a)) ||
      (!m && !powers_vanish(q_base) && !powers_vanish(a))) {
    throw InvalidInput("double_pochhammer: infinite product needs capped bases");
  }
  MultiPoly acc = MultiPoly::constant(a.context(), 1);
  if ((n && *n == 0) || (m && *m == 0)) return acc;
  MultiPoly row = a;  // a * p^i
  for (std::uint32_t i = 0; !n || i < *n; ++i) {
    if (row.is_zero()) break;
    MultiPoly term = row;  // a * p^i * q^j
    for (std::uint32_t j = 0; !m || j < *m; ++j) {
      if (term.is_zero()) break;
      acc -= acc * term;
      term = term * q_base;
    }
    row = row * p_base;
  }
  return acc;
}

MultiPoly q_int(const MultiPoly& base, std::uint32_t n) {
  MultiPoly acc(base.context());
  MultiPoly pw = MultiPoly::constant(base.context(), 1);
  for (std::uint32_t i = 0; i < n; ++i) {
    acc += pw;
    if (i + 1 < n) pw = pw * base;
  }
  return acc;
}

MultiPoly q_fact(const MultiPoly& base, std::uint32_t n) {
  MultiPoly acc = MultiPoly::constant(base.context(), 1);
  for (std::uint32_t i = 2; i <= n; ++i) acc = acc * q_int(base, i);
  return acc;
}

MultiPoly hat_fact(const MultiPoly& a, const MultiPoly& base, std::uint32_t n) {
  return pochhammer(-(a * base), base, n) * q_fact(base, n);
}

MultiPoly bracket_ab(const MultiPoly& a, const MultiPoly& b, std::uint32_t m) {
  require_same_context(a, b, "bracket_ab");
  MultiPoly acc(a.context());
  for (std::uint32_t h = 0; h < m; ++h) acc += power(a, h) * power(b, m - 1 - h);
  return acc;
}

MultiPoly hat_multinomial(std::span<const std::uint32_t> parts, const MultiPoly& a,
                          const MultiPoly& base) {
  if (parts.empty()) throw InvalidInput("hat_multinomial: empty composition");
  std::uint32_t n = 0;
  for (auto x : parts) n += x;
  MultiPoly denominator = hat_fact(a, base, parts[0]);
  for (std::size_t i = 1; i < parts.size(); ++i) denominator = denominator * q_fact(base, parts[i]);
  return divide_exact(hat_fact(a, base, n), denominator);
}

FractionSeries::FractionSeries(std::string u_var, std::vector<MultiPoly> numerators,
                               std::vector<MultiPoly> denominators)
    : u_var_(std::move(u_var)),
      numerators_(std::move(numerators)),
      denominators_(std::move(denominators)) {
  if (numerators_.empty() || numerators_.size() != denominators_.size()) {
    throw InvalidInput("FractionSeries: need matching, nonempty coefficient lists");
  }
  for (const auto& d : denominators_) {
    if (d.is_zero()) throw InvalidInput("FractionSeries: zero denominator");
  }
}

FractionSeries FractionSeries::substituted(std::string_view name, const MultiPoly& value) const {
  std::vector<MultiPoly> nums;
  nums.reserve(numerators_.size());
  for (const auto& num : numerators_) nums.push_back(substitute(num, name, value));
  return FractionSeries(u_var_, std::move(nums), denominators_);
}

MultiPoly FractionSeries::to_poly() const {
  MultiPoly out(numerators_.front().context());
  for (std::size_t m = 0; m < numerators_.size(); ++m) {
    const auto& den = denominators_[m];
    if (den.size() != 1 || den.terms()[0].exponents != Exponents{}) {
      throw InvalidInput("FractionSeries::to_poly: non-constant denominator");
    }
    out += numerators_[m] * (1 / den.terms()[0].coefficient);
  }
  return out;
}

FractionSeries exp_series(ExpKind kind, const ContextPtr& context, std::string_view u_var,
                          const MultiPoly& a, const MultiPoly& base,
                          std::optional<std::uint32_t> cap_u) {
  if (!cap_u) cap_u = context->variable(context->index_of(u_var)).cap;
  if (!cap_u) throw InvalidInput("exp_series: cap for '" + std::string(u_var) + "' missing");
  std::vector<MultiPoly> nums, dens;
  mpz_class factorial = 1;
  MultiPoly running(context);
  for (std::uint32_t m = 0; m <= *cap_u; ++m) {
    nums.push_back(MultiPoly::variable(context, u_var, m));
    switch (kind) {
      case ExpKind::classical:
        if (m > 0) factorial *= m;
        dens.push_back(MultiPoly::constant(context, Rational(factorial)));
        break;
      case ExpKind::p_analogue:
        dens.push_back(q_fact(base, m));
        break;
      case ExpKind::hat:
        dens.push_back(hat_fact(a, base, m));
        break;
    }
  }
  return FractionSeries(std::string(u_var), std::move(nums), std::move(dens));
}

MultiPoly cleared_coefficient(std::span<const FractionSeries> factors, std::uint32_t n,
                              const MultiPoly& clearing) {
  MultiPoly total(clearing.context());
  if (factors.empty()) {
    return n == 0 ? clearing : total;
  }
  const std::string& u = factors.front().u_var();
  for (const auto& f : factors) {
    if (f.u_var() != u) throw InvalidInput("cleared_coefficient: factors use different variables");
  }
  std::map<std::string, MultiPoly> quotient_cache;
  std::vector<std::uint32_t> parts(factors.size(), 0);
  // Enumerate compositions of n into factors.size() parts, each within its factor's cap.
  auto visit = [&]() {
    MultiPoly num = MultiPoly::constant(clearing.context(), 1);
    MultiPoly den = MultiPoly::constant(clearing.context(), 1);
    for (std::size_t i = 0; i < factors.size(); ++i) {
      num = num * factors[i].numerator(parts[i]);
      den = den * factors[i].denominator(parts[i]);
      if (num.is_zero()) return;
    }
    const std::string key = den.to_text();
    auto it = quotient_cache.find(key);
    if (it == quotient_cache.end()) {
      it = quotient_cache.emplace(key, divide_exact(clearing, den)).first;
    }
    total += num.coefficient_of(u, n) * it->second;
  };
  auto recurse = [&](auto&& self, std::size_t i, std::uint32_t left) -> void {
    if (i + 1 == factors.size()) {
      if (left > factors[i].cap()) return;
      parts[i] = left;
      visit();
      return;
    }
    for (std::uint32_t m = 0; m <= std::min(left, factors[i].cap()); ++m) {
      parts[i] = m;
      self(self, i + 1, left - m);
    }
  };
  recurse(recurse, 0, n);
  return total;
}

}  // namespace wreath
