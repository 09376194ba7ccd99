#include "wreath/identities.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

#include "wreath/biword.hpp"
#include "wreath/encode.hpp"
#include "wreath/parabolic.hpp"

namespace wreath {

namespace {

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

using CountMap = std::unordered_map<Exponents, std::uint64_t, ExponentsHash>;

struct StatSlot {
  Stat stat;
  std::size_t var;
};

bool needs_inverse(Stat s) {
  return s == Stat::ides || s == Stat::imaj || s == Stat::icol || s == Stat::ifmaj;
}

std::uint64_t stat_bound(Stat s, std::uint64_t r, std::uint64_t n) {
  switch (s) {
    case Stat::des:
    case Stat::ides:
      return n;
    case Stat::maj:
    case Stat::imaj:
    case Stat::inv:
      return n * n;
    case Stat::col:
    case Stat::icol:
      return n * r;
    case Stat::length:
      return n * n + n * r;
    case Stat::fmaj:
    case Stat::ifmaj:
      return r * n * n + n * r;
  }
  return 0;
}

std::vector<StatSlot> resolve(const StatVector& stats, const SeriesContext& ctx, std::uint32_t r,
                              std::size_t n) {
  std::vector<StatSlot> slots;
  std::vector<std::uint64_t> bound(ctx.size(), 0);
  for (const auto& b : stats) {
    const std::size_t var = ctx.index_of(b.variable);
    slots.push_back({b.stat, var});
    bound[var] += stat_bound(b.stat, r, n);
  }
  for (auto x : bound) {
    if (x > 0xFFFF) throw BudgetExceeded("statistic values exceed the exponent range");
  }
  return slots;
}

class Evaluator {
 public:
  Evaluator(std::uint32_t r, std::size_t n, const std::vector<StatSlot>& slots)
      : r_(r), slots_(slots), inv_sigma_(n), inv_colors_(n) {
    for (const auto& s : slots) inverse_ |= needs_inverse(s.stat);
  }

  Exponents operator()(std::span<const std::uint32_t> sigma, std::span<const Color> colors) {
    const auto s = detail::fast_stats(r_, sigma, colors);
    detail::FastStats si;
    if (inverse_) {
      for (std::size_t i = 0; i < sigma.size(); ++i) {
        inv_sigma_[sigma[i] - 1] = static_cast<std::uint32_t>(i + 1);
        inv_colors_[sigma[i] - 1] = (r_ - colors[i]) % r_;
      }
      si = detail::fast_stats(r_, inv_sigma_, inv_colors_);
    }
    Exponents e{};
    for (const auto& slot : slots_) {
      std::uint32_t v = 0;
      switch (slot.stat) {
        case Stat::des: v = s.des; break;
        case Stat::maj: v = s.maj; break;
        case Stat::length: v = s.length; break;
        case Stat::col: v = s.col; break;
        case Stat::inv: v = s.inv; break;
        case Stat::fmaj: v = r_ * s.maj + s.col; break;
        case Stat::ides: v = si.des; break;
        case Stat::imaj: v = si.maj; break;
        case Stat::icol: v = si.col; break;
        case Stat::ifmaj: v = r_ * si.maj + si.col; break;
      }
      e[slot.var] = static_cast<std::uint16_t>(e[slot.var] + v);
    }
    return e;
  }

 private:
  std::uint32_t r_;
  const std::vector<StatSlot>& slots_;
  bool inverse_ = false;
  std::vector<std::uint32_t> inv_sigma_;
  std::vector<Color> inv_colors_;
};

MultiPoly counts_to_poly(const CountMap& counts, const ContextPtr& ctx) {
  std::vector<Term> terms;
  terms.reserve(counts.size());
  for (const auto& [e, c] : counts) {
    if (!ctx->within_caps(e)) continue;
    terms.push_back(Term{e, Rational(mpz_class(static_cast<unsigned long>(c)))});
  }
  if (terms.size() > ctx->max_terms()) {
    throw BudgetExceeded("distribution polynomial exceeds the term budget");
  }
  return MultiPoly::from_terms(ctx, std::move(terms));
}

}  // namespace

std::string_view stat_name(Stat s) {
  switch (s) {
    case Stat::des: return "des";
    case Stat::maj: return "maj";
    case Stat::length: return "length";
    case Stat::col: return "col";
    case Stat::ides: return "ides";
    case Stat::imaj: return "imaj";
    case Stat::icol: return "icol";
    case Stat::fmaj: return "fmaj";
    case Stat::ifmaj: return "ifmaj";
    case Stat::inv: return "inv";
  }
  return "?";
}

MultiPoly dist_polynomial_serial(std::uint32_t r, std::size_t n, const StatVector& stats,
                                 const ContextPtr& ctx, std::uint64_t max_elements) {
  const GroupEnumeration group(r, n, max_elements);
  const auto slots = resolve(stats, *ctx, r, n);
  Evaluator eval(r, n, slots);
  CountMap counts;
  group.for_range_raw(0, group.size(), [&](auto sigma, auto colors) { ++counts[eval(sigma, colors)]; });
  return counts_to_poly(counts, ctx);
}

MultiPoly dist_polynomial(std::uint32_t r, std::size_t n, const StatVector& stats,
                          const ContextPtr& ctx, std::uint64_t max_elements, int threads) {
  const GroupEnumeration group(r, n, max_elements);
  const auto slots = resolve(stats, *ctx, r, n);
  const std::uint64_t size = group.size();
  if (threads <= 1 || size < 4096) return dist_polynomial_serial(r, n, stats, ctx, max_elements);

  const std::int64_t chunks = static_cast<std::int64_t>(threads) * 16;
  CountMap counts;
#pragma omp parallel num_threads(threads)
  {
    Evaluator eval(r, n, slots);
    CountMap local;
#pragma omp for schedule(dynamic)
    for (std::int64_t c = 0; c < chunks; ++c) {
      const std::uint64_t begin = size * static_cast<std::uint64_t>(c) / chunks;
      const std::uint64_t end = size * static_cast<std::uint64_t>(c + 1) / chunks;
      group.for_range_raw(begin, end, [&](auto sigma, auto colors) { ++local[eval(sigma, colors)]; });
    }
#pragma omp critical
    for (const auto& [e, v] : local) counts[e] += v;
  }
  return counts_to_poly(counts, ctx);
}

// ---------------------------------------------------------------------------
// Reports

namespace {

std::string coefficient_text(const Rational& c) {
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

std::string params_text(const VerificationReport& r) {
  std::string out;
  for (const auto& [k, v] : r.params) out += " " + k + "=" + std::to_string(v);
  return out;
}

}  // namespace

std::string VerificationReport::to_text() const {
  std::string out = (skipped ? "SKIP " : pass ? "PASS " : "FAIL ") + identity + params_text(*this);
  if (!skipped) {
    out += " checks=" + std::to_string(checks) + " lhs_terms=" + std::to_string(lhs_terms) +
           " rhs_terms=" + std::to_string(rhs_terms);
  }
  if (mismatch) {
    out += " first mismatch [" + mismatch->label + "]";
    if (mismatch->detail.empty()) {
      out += " at " + mismatch->monomial + ": lhs=" + mismatch->lhs + " rhs=" + mismatch->rhs;
    } else {
      out += ": " + mismatch->detail;
    }
  }
  for (const auto& w : warnings) out += " (warning: " + w + ")";
  return out;
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json params_json = nlohmann::json::object();
  for (const auto& [k, v] : params) params_json[k] = v;
  nlohmann::json out = {{"identity", identity}, {"params", params_json},
                        {"pass", pass},         {"millis", millis},
                        {"lhs_terms", lhs_terms}, {"rhs_terms", rhs_terms},
                        {"checks", checks}};
  if (skipped) out["skipped"] = true;
  if (mismatch) {
    nlohmann::json m = {{"label", mismatch->label}};
    if (mismatch->detail.empty()) {
      m["monomial"] = mismatch->monomial;
      m["lhs"] = mismatch->lhs;
      m["rhs"] = mismatch->rhs;
    } else {
      m["detail"] = mismatch->detail;
    }
    out["mismatch"] = m;
  }
  if (injected) out["injected"] = *injected;
  if (!warnings.empty()) out["warnings"] = warnings;
  return out;
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

constexpr CatalogEntry kCatalog[] = {
    {"length_gf", "sum p^length over G(r,n) equals [n^]_{[r-1]_p,p}!"},
    {"ell_col", "sum p^length a^col equals [n]_p! prod (1 + a p^i [r-1]_{ap})"},
    {"projection", "descent sets and length/color sums under the projection to B_n"},
    {"desmaj", "per-gamma sum over associated sequences vs t^des q^maj / (t;q)_n"},
    {"keylem", "sequences with a fixed value profile vs the hat-multinomial"},
    {"theorem_A", "(des, maj, length, col) generating function"},
    {"theorem_B", "(des, ides, maj, imaj, col, icol) generating function"},
    {"chow_gessel", "(des, maj, col) over (t;q)_{n+1}"},
    {"carlitz", "(des, fmaj) over (t;q^r)_{n+1}"},
    {"reiner", "(des, length) exponential generating function"},
    {"brenti", "(des, col) exponential generating function"},
    {"gessel_roselle", "(maj, length) vs 1/(u;p,q)_{inf,inf}"},
    {"adin_roichman", "(fmaj, ifmaj) vs the diagonal invariant Hilbert series"},
    {"gg1", "theorem_A at r = 1 with inv in place of length"},
    {"gg2", "theorem_B at r = 1"},
    {"bijection_stats", "round trips of f <-> (pi(f), lambda(f)) and the max/sum relations"},
    {"biword_count", "biword <-> triple bijection, column multisets, weighted count"},
};

// Comparison bookkeeping shared by every catalog entry.
class Checker {
 public:
  Checker(VerificationReport& report, std::optional<Corruption> corruption)
      : report_(report), corruption_(corruption) {}

  void compare(const std::string& label, MultiPoly lhs, MultiPoly rhs) {
    if (corruption_) {
      MultiPoly& side = corruption_->side == Corruption::Side::lhs ? lhs : rhs;
      if (side.is_zero()) {
        side = MultiPoly::constant(side.context(), 1);
        report_.injected = "1";
      } else {
        const std::size_t index = corruption_->term % side.size();
        report_.injected = side.monomial_text(side.terms()[index].exponents);
        side.perturb_term(index, 1);
      }
      corruption_.reset();
    }
    ++report_.checks;
    report_.lhs_terms += lhs.size();
    report_.rhs_terms += rhs.size();
    if (lhs == rhs) return;
    report_.pass = false;
    if (report_.mismatch) return;
    const MultiPoly diff = lhs - rhs;
    const Exponents& e = diff.terms().front().exponents;
    report_.mismatch = Mismatch{label, lhs.monomial_text(e), coefficient_text(lhs.coefficient(e)),
                                coefficient_text(rhs.coefficient(e)), ""};
  }

  void expect(bool ok, const std::string& label, const std::string& detail) {
    ++report_.checks;
    if (ok) return;
    report_.pass = false;
    if (!report_.mismatch) report_.mismatch = Mismatch{label, "", "", "", detail};
  }

  void count(const std::string& label, std::uint64_t lhs, std::uint64_t rhs) {
    expect(lhs == rhs, label,
           "counts differ: lhs=" + std::to_string(lhs) + " rhs=" + std::to_string(rhs));
  }

 private:
  VerificationReport& report_;
  std::optional<Corruption> corruption_;
};

using Var = SeriesContext::Variable;

MultiPoly var(const ContextPtr& ctx, std::string_view name, std::uint32_t exp = 1) {
  return MultiPoly::variable(ctx, name, exp);
}

MultiPoly one(const ContextPtr& ctx) { return MultiPoly::constant(ctx, 1); }

std::string n_label(std::uint32_t n) { return "n=" + std::to_string(n); }

struct Run {
  const VerifyParams& params;
  VerificationReport& report;
  Checker& check;

  void param(const std::string& key, std::uint64_t value) { report.params.emplace_back(key, value); }

  MultiPoly dist(std::uint32_t r, std::size_t n, const StatVector& stats, const ContextPtr& ctx) {
    return dist_polynomial(r, n, stats, ctx, params.max_elements);
  }

  std::uint32_t cap(std::optional<std::uint32_t> given, std::uint32_t fallback,
                    const std::string& key) {
    const std::uint32_t value = given.value_or(fallback);
    param(key, value);
    if (value == 0) report.warnings.push_back(key + " = 0 makes the check nearly vacuous");
    return value;
  }
};

// ---- group-level identities -------------------------------------------------

void length_gf(Run& run) {
  const auto& P = run.params;
  run.param("r", P.r);
  run.param("n", P.n);
  auto ctx = SeriesContext::make({Var{"p", {}}}, P.max_terms);
  const auto p = var(ctx, "p");
  const auto lhs = run.dist(P.r, P.n, {{Stat::length, "p"}}, ctx);
  run.check.compare(n_label(P.n), lhs, hat_fact(q_int(p, P.r - 1), p, P.n));
}

void ell_col(Run& run) {
  const auto& P = run.params;
  run.param("r", P.r);
  run.param("n", P.n);
  auto ctx = SeriesContext::make({Var{"p", {}}, Var{"a", {}}}, P.max_terms);
  const auto p = var(ctx, "p");
  const auto a = var(ctx, "a");
  const auto lhs = run.dist(P.r, P.n, {{Stat::length, "p"}, {Stat::col, "a"}}, ctx);
  MultiPoly rhs = q_fact(p, P.n);
  const auto bracket = q_int(a * p, P.r - 1);
  for (std::uint32_t i = 1; i <= P.n; ++i) rhs = rhs * (one(ctx) + a * var(ctx, "p", i) * bracket);
  run.check.compare(n_label(P.n), lhs, rhs);
}

void projection(Run& run) {
  const auto& P = run.params;
  run.param("r", P.r);
  run.param("n", P.n);
  if (P.r < 2) {
    run.report.skipped = true;
    run.report.warnings.push_back("the projection onto B_n needs r >= 2");
    return;
  }
  auto ctx = SeriesContext::make({Var{"p", {}}, Var{"a", {}}}, P.max_terms);
  std::map<ColoredPermutation, std::vector<Term>> fibres;
  const GroupEnumeration group(P.r, P.n, P.max_elements);
  group.for_each([&](const ColoredPermutation& g) {
    const auto phi = project_to_B(g);
    const auto label = "gamma=" + g.to_string();
    run.check.expect(descent_set(g) == descent_set(phi), label, "Des(gamma) != Des(phi(gamma))");
    run.check.expect(descent_set(inverse(g)) == descent_set(inverse(phi)), label,
                     "Des(gamma^-1) != Des(phi(gamma)^-1)");
    run.check.expect(project_to_B(inverse(g)) == inverse(phi) &&
                         project_to_B(skew_inverse(g)) == inverse(phi),
                     label, "phi does not commute with the (skew) inverse");
    const auto s = detail::fast_stats(P.r, g.sigma(), g.colors());
    Exponents e{};
    e[0] = static_cast<std::uint16_t>(s.length);
    e[1] = static_cast<std::uint16_t>(s.col);
    fibres[phi].push_back(Term{e, 1});
  });
  const auto p = var(ctx, "p");
  const auto a = var(ctx, "a");
  const auto weight = a * q_int(a * p, P.r - 1);
  for (const auto& b : enumerate_group(2, P.n, P.max_elements)) {
    const auto s = statistics(b);
    auto it = fibres.find(b);
    MultiPoly lhs = it == fibres.end() ? MultiPoly(ctx) : MultiPoly::from_terms(ctx, it->second);
    MultiPoly rhs = var(ctx, "p", static_cast<std::uint32_t>(s.length)) *
                    power(weight, static_cast<std::uint32_t>(s.col));
    run.check.compare("fibre over " + b.to_string(), std::move(lhs), std::move(rhs));
  }
}

// ---- sequence-level identities ----------------------------------------------

void check_pro_ass(Run& run, const ColoredSequence& f, const ColoredPermutation& g) {
  const auto sigma = g.sigma();
  for (auto i : descent_set(g)) {
    const std::uint32_t left = i == 0 ? 0 : f.values()[sigma[i - 1] - 1];
    const std::uint32_t right = f.values()[sigma[i] - 1];
    run.check.expect(left < right, "f=" + f.to_string(),
                     "descent " + std::to_string(i) + " without a strict increase");
  }
}

void desmaj(Run& run) {
  const auto& P = run.params;
  run.param("r", P.r);
  run.param("n", P.n);
  const std::uint32_t K = run.cap(P.tmax, 4, "tmax");
  auto ctx = SeriesContext::make({Var{"t", K}, Var{"q", {}}}, P.max_terms);

  auto associated_sums = [&](std::uint32_t r) {
    std::map<ColoredPermutation, std::vector<Term>> sums;
    SequenceQuery query;
    query.r = r;
    query.n = P.n;
    query.max_cap = K;
    query.restrict_N0 = true;
    query.max_sequences = P.max_elements;
    enumerate_sequences(query, [&](const ColoredSequence& f) {
      const auto g = pi_of(f);
      check_pro_ass(run, f, g);
      const auto st = seq_statistics(f);
      Exponents e{};
      e[0] = static_cast<std::uint16_t>(st.max);
      e[1] = static_cast<std::uint16_t>(st.max * P.n - st.sum);
      sums[g].push_back(Term{e, 1});
    });
    return sums;
  };

  const auto sums = associated_sums(P.r);
  const auto t = var(ctx, "t");
  const auto expansion = reciprocal(pochhammer(t, "q", P.n));
  auto lookup = [&](const auto& table, const ColoredPermutation& g) {
    auto it = table.find(g);
    return it == table.end() ? MultiPoly(ctx) : MultiPoly::from_terms(ctx, it->second);
  };
  std::map<ColoredPermutation, std::vector<Term>> sums_b;
  if (P.r >= 2) sums_b = associated_sums(2);
  for (const auto& g : enumerate_group(P.r, P.n, P.max_elements)) {
    const auto s = statistics(g);
    const auto lhs = lookup(sums, g);
    const auto rhs = var(ctx, "t", static_cast<std::uint32_t>(s.des)) *
                     var(ctx, "q", static_cast<std::uint32_t>(s.maj)) * expansion;
    run.check.compare("gamma=" + g.to_string(), lhs, rhs);
    if (P.r >= 2) {
      run.check.compare("projected gamma=" + g.to_string(), lookup(sums_b, project_to_B(g)), lhs);
    }
  }
}

void compositions(std::uint32_t n, std::size_t parts,
                  const std::function<void(const std::vector<std::uint32_t>&)>& fn) {
  std::vector<std::uint32_t> current(parts, 0);
  auto rec = [&](auto&& self, std::size_t i, std::uint32_t left) -> void {
    if (i + 1 == parts) {
      current[i] = left;
      fn(current);
      return;
    }
    for (std::uint32_t m = 0; m <= left; ++m) {
      current[i] = m;
      self(self, i + 1, left - m);
    }
  };
  rec(rec, 0, n);
}

std::string composition_text(const std::vector<std::uint32_t>& c) {
  std::string out = "(";
  for (std::size_t i = 0; i < c.size(); ++i) out += (i ? "," : "") + std::to_string(c[i]);
  return out + ")";
}

void keylem(Run& run) {
  const auto& P = run.params;
  run.param("r", P.r);
  run.param("n", P.n);
  const std::uint32_t k = run.cap(P.tmax, 3, "tmax");
  auto ctx = SeriesContext::make({Var{"p", {}}, Var{"a", {}}}, P.max_terms);
  const auto p = var(ctx, "p");
  const auto a = var(ctx, "a");
  const auto weight = a * q_int(a * p, P.r - 1);
  std::map<std::vector<std::uint32_t>, std::set<ColoredPermutation>> quotients;

  for (std::size_t parts = 1; parts <= k + 1; ++parts) {
    compositions(P.n, parts, [&](const std::vector<std::uint32_t>& comp) {
      const std::string label = "composition " + composition_text(comp);
      SequenceQuery query;
      query.r = P.r;
      query.n = P.n;
      query.restrict_N0 = true;
      query.composition = comp;
      query.max_sequences = P.max_elements;
      std::vector<Term> terms;
      std::set<ColoredPermutation> image;
      std::uint64_t sequences = 0;
      enumerate_sequences(query, [&](const ColoredSequence& f) {
        const auto g = pi_of(f);
        const auto s = detail::fast_stats(P.r, g.sigma(), g.colors());
        Exponents e{};
        e[0] = static_cast<std::uint16_t>(s.length);
        e[1] = static_cast<std::uint16_t>(s.col);
        terms.push_back(Term{e, 1});
        image.insert(g);
        ++sequences;
      });
      run.check.compare(label, MultiPoly::from_terms(ctx, std::move(terms)),
                        hat_multinomial(comp, weight, p));

      std::vector<std::uint32_t> cuts;
      std::uint32_t partial = 0;
      for (std::size_t j = 0; j + 1 < comp.size(); ++j) {
        partial += comp[j];
        if (partial < P.n && (cuts.empty() || cuts.back() != partial)) cuts.push_back(partial);
      }
      auto it = quotients.find(cuts);
      if (it == quotients.end()) {
        std::set<ColoredPermutation> q;
        quotient_set(DescentClass::from_complement(P.r, P.n, cuts), P.max_elements,
                     [&](const ColoredPermutation& g) { q.insert(g); });
        it = quotients.emplace(cuts, std::move(q)).first;
      }
      run.check.count(label + " injectivity of pi", image.size(), sequences);
      run.check.expect(image == it->second, label, "pi does not map onto the quotient G^J");
    });
  }
}

// ---- series identities --------------------------------------------------------

void theorem_a(Run& run, Stat length_stat) {
  const auto& P = run.params;
  run.param("r", P.r);
  run.param("n", P.n);
  const std::uint32_t K = run.cap(P.tmax, 5, "tmax");
  auto ctx = SeriesContext::make(
      {Var{"u", P.n}, Var{"t", K}, Var{"q", {}}, Var{"p", {}}, Var{"a", {}}}, P.max_terms);
  const auto t = var(ctx, "t");
  const auto q = var(ctx, "q");
  const auto p = var(ctx, "p");
  const auto a = var(ctx, "a");
  const auto u = var(ctx, "u");

  const auto dist = run.dist(
      P.r, P.n, {{Stat::des, "t"}, {Stat::maj, "q"}, {length_stat, "p"}, {Stat::col, "a"}}, ctx);
  const auto lhs = dist * reciprocal(pochhammer(t, q, P.n + 1));

  const auto weight = a * q_int(a * p, P.r - 1);
  const auto clearing = hat_fact(weight, p, P.n);
  const auto e_p = exp_series(ExpKind::p_analogue, ctx, "u", weight, p, P.n);
  const auto e_hat = exp_series(ExpKind::hat, ctx, "u", weight, p, P.n);
  MultiPoly rhs(ctx);
  std::vector<FractionSeries> factors;
  for (std::uint32_t k = 0; k <= K; ++k) {
    auto current = factors;
    current.push_back(e_hat.substituted("u", power(q, k) * u));
    rhs += var(ctx, "t", k) * cleared_coefficient(current, P.n, clearing);
    factors.push_back(e_p.substituted("u", power(q, k) * u));
  }
  run.check.compare(n_label(P.n), lhs, rhs);
}

MultiPoly biword_series(const ContextPtr& ctx, std::uint32_t r, std::uint32_t k1, std::uint32_t k2,
                        std::uint32_t n) {
  const auto u = var(ctx, "u");
  const auto q1 = var(ctx, "q1");
  const auto q2 = var(ctx, "q2");
  const auto a = var(ctx, "a");
  const auto b = var(ctx, "b");
  const auto colored = a * b * bracket_ab(a, b, r - 1) * u;
  const auto denominator =
      double_pochhammer(u, q1, q2, k1 + 1, k2 + 1) * double_pochhammer(colored, q1, q2, k1, k2);
  return reciprocal(denominator).coefficient_of("u", n);
}

void theorem_b(Run& run) {
  const auto& P = run.params;
  run.param("r", P.r);
  run.param("n", P.n);
  const std::uint32_t K1 = run.cap(P.t1max, 3, "t1max");
  const std::uint32_t K2 = run.cap(P.t2max, 3, "t2max");
  auto ctx = SeriesContext::make({Var{"t1", K1}, Var{"t2", K2}, Var{"q1", {}}, Var{"q2", {}},
                                  Var{"a", {}}, Var{"b", {}}, Var{"u", P.n}},
                                 P.max_terms);
  const auto dist = run.dist(P.r, P.n,
                             {{Stat::des, "t1"},
                              {Stat::ides, "t2"},
                              {Stat::maj, "q1"},
                              {Stat::imaj, "q2"},
                              {Stat::col, "a"},
                              {Stat::icol, "b"}},
                             ctx);
  const auto lhs = dist * reciprocal(pochhammer(var(ctx, "t1"), "q1", P.n + 1) *
                                     pochhammer(var(ctx, "t2"), "q2", P.n + 1));
  MultiPoly rhs(ctx);
  for (std::uint32_t k1 = 0; k1 <= K1; ++k1) {
    for (std::uint32_t k2 = 0; k2 <= K2; ++k2) {
      rhs += var(ctx, "t1", k1) * var(ctx, "t2", k2) * biword_series(ctx, P.r, k1, k2, P.n);
    }
  }
  run.check.compare(n_label(P.n), lhs, rhs);

  // Descents of the inverse agree with those of the skew inverse.
  GroupEnumeration(P.r, P.n, P.max_elements).for_each([&](const ColoredPermutation& g) {
    run.check.expect(descent_set(inverse(g)) == descent_set(skew_inverse(g)),
                     "gamma=" + g.to_string(), "Des(gamma^-1) != Des(skew inverse)");
  });
}

void chow_gessel(Run& run) {
  const auto& P = run.params;
  run.param("r", P.r);
  run.param("n", P.n);
  const std::uint32_t K = run.cap(P.tmax, 5, "tmax");
  auto ctx = SeriesContext::make({Var{"t", K}, Var{"q", {}}, Var{"a", {}}}, P.max_terms);
  const auto t = var(ctx, "t");
  const auto q = var(ctx, "q");
  const auto a = var(ctx, "a");
  const auto dist = run.dist(P.r, P.n, {{Stat::des, "t"}, {Stat::maj, "q"}, {Stat::col, "a"}}, ctx);
  const auto lhs = dist * reciprocal(pochhammer(t, q, P.n + 1));
  MultiPoly rhs(ctx);
  const auto colored = a * q_int(a, P.r - 1);
  for (std::uint32_t k = 0; k <= K; ++k) {
    rhs += var(ctx, "t", k) * power(q_int(q, k + 1) + colored * q_int(q, k), P.n);
  }
  run.check.compare(n_label(P.n), lhs, rhs);
}

void carlitz(Run& run) {
  const auto& P = run.params;
  run.param("r", P.r);
  run.param("n", P.n);
  const std::uint32_t K = run.cap(P.tmax, 6, "tmax");
  auto ctx = SeriesContext::make({Var{"t", K}, Var{"q", {}}}, P.max_terms);
  const auto t = var(ctx, "t");
  const auto q = var(ctx, "q");
  const auto dist = run.dist(P.r, P.n, {{Stat::des, "t"}, {Stat::fmaj, "q"}}, ctx);
  const auto lhs = dist * reciprocal(pochhammer(t, var(ctx, "q", P.r), P.n + 1));
  MultiPoly rhs(ctx);
  for (std::uint32_t k = 0; k <= K; ++k) rhs += var(ctx, "t", k) * power(q_int(q, P.r * k + 1), P.n);
  run.check.compare(n_label(P.n), lhs, rhs);
}

void reiner(Run& run) {
  const auto& P = run.params;
  run.param("r", P.r);
  const std::uint32_t N = run.cap(P.ucap, 5, "ucap");
  const std::uint32_t T = run.cap(P.tmax, N, "tmax");
  auto ctx = SeriesContext::make({Var{"u", N}, Var{"t", T}, Var{"p", {}}}, P.max_terms);
  const auto t = var(ctx, "t");
  const auto p = var(ctx, "p");
  const auto shrink = (one(ctx) - t) * var(ctx, "u");
  const auto weight = q_int(p, P.r - 1);
  const auto e_hat = exp_series(ExpKind::hat, ctx, "u", weight, p).substituted("u", shrink);
  const auto e_p = exp_series(ExpKind::p_analogue, ctx, "u", weight, p).substituted("u", shrink);
  for (std::uint32_t n = 0; n <= N; ++n) {
    const auto lhs = run.dist(P.r, n, {{Stat::des, "t"}, {Stat::length, "p"}}, ctx);
    const auto clearing = hat_fact(weight, p, n);
    MultiPoly inner(ctx);
    std::vector<FractionSeries> factors{e_hat};
    for (std::uint32_t j = 0; j <= T; ++j) {
      inner += var(ctx, "t", j) * cleared_coefficient(factors, n, clearing);
      factors.push_back(e_p);
    }
    run.check.compare(n_label(n), lhs, (one(ctx) - t) * inner);
  }
}

void brenti(Run& run) {
  const auto& P = run.params;
  run.param("r", P.r);
  const std::uint32_t N = run.cap(P.ucap, 5, "ucap");
  const std::uint32_t T = run.cap(P.tmax, N, "tmax");
  auto ctx = SeriesContext::make({Var{"u", N}, Var{"t", T}, Var{"a", {}}}, P.max_terms);
  const auto t = var(ctx, "t");
  const auto a = var(ctx, "a");
  const auto u = var(ctx, "u");
  const auto e = exp_series(ExpKind::classical, ctx, "u", a, a).to_poly();
  const auto one_minus_t = one(ctx) - t;
  const auto numerator = substitute(e, "u", one_minus_t * u);
  const auto inner = substitute(e, "u", q_int(a, P.r) * one_minus_t * u);
  const auto rhs = one_minus_t * numerator * reciprocal(one(ctx) - t * inner);
  mpz_class factorial = 1;
  for (std::uint32_t n = 0; n <= N; ++n) {
    if (n > 0) factorial *= n;
    const auto dist = run.dist(P.r, n, {{Stat::des, "t"}, {Stat::col, "a"}}, ctx);
    run.check.compare(n_label(n), dist * Rational(1, factorial), rhs.coefficient_of("u", n));
  }
}

void gessel_roselle(Run& run) {
  const auto& P = run.params;
  run.param("r", P.r);
  const std::uint32_t U = run.cap(P.ucap, 4, "ucap");
  const std::uint32_t Pc = run.cap(P.pcap, 8, "pcap");
  const std::uint32_t Qc = run.cap(P.qcap, 8, "qcap");
  auto ctx = SeriesContext::make({Var{"u", U}, Var{"p", Pc}, Var{"q", Qc}}, P.max_terms);
  const auto p = var(ctx, "p");
  const auto q = var(ctx, "q");
  const auto series = reciprocal(double_pochhammer(var(ctx, "u"), p, q, std::nullopt, std::nullopt));
  const auto negative = -(p * q_int(p, P.r - 1));
  for (std::uint32_t n = 0; n <= U; ++n) {
    const auto lhs = run.dist(P.r, n, {{Stat::maj, "q"}, {Stat::length, "p"}}, ctx);
    const auto rhs = series.coefficient_of("u", n) * pochhammer(q, q, n) *
                     pochhammer(negative, p, n) * pochhammer(p, p, n);
    run.check.compare(n_label(n), lhs, rhs);
  }
}

void adin_roichman(Run& run) {
  const auto& P = run.params;
  run.param("r", P.r);
  const std::uint32_t U = run.cap(P.ucap, 3, "ucap");
  const std::uint32_t Qc = run.cap(P.qcap, 8, "qcap");
  auto ctx = SeriesContext::make({Var{"u", U}, Var{"q1", Qc}, Var{"q2", Qc}}, P.max_terms);
  const auto q1 = var(ctx, "q1");
  const auto q2 = var(ctx, "q2");
  const auto q1r = var(ctx, "q1", P.r);
  const auto q2r = var(ctx, "q2", P.r);
  const auto u = var(ctx, "u");
  const auto colored = q1 * q2 * bracket_ab(q1, q2, P.r - 1) * u;
  const auto series =
      reciprocal(double_pochhammer(u, q1r, q2r, std::nullopt, std::nullopt) *
                 double_pochhammer(colored, q1r, q2r, std::nullopt, std::nullopt));
  for (std::uint32_t n = 0; n <= U; ++n) {
    const auto lhs = run.dist(P.r, n, {{Stat::fmaj, "q1"}, {Stat::ifmaj, "q2"}}, ctx);
    const auto rhs =
        series.coefficient_of("u", n) * pochhammer(q1r, q1r, n) * pochhammer(q2r, q2r, n);
    run.check.compare(n_label(n), lhs, rhs);
  }
}

// ---- bijections ---------------------------------------------------------------

void bijection_stats(Run& run) {
  const auto& P = run.params;
  run.param("r", P.r);
  run.param("n", P.n);
  const std::uint32_t cap = run.cap(P.tmax, 3, "tmax");
  SequenceQuery query;
  query.r = P.r;
  query.n = P.n;
  query.max_cap = cap;
  query.restrict_N0 = true;
  query.max_sequences = P.max_elements;
  enumerate_sequences(query, [&](const ColoredSequence& f) {
    const auto g = pi_of(f);
    const auto lam = lambda_of(f);
    const auto s = statistics(g);
    const auto st = seq_statistics(f);
    const std::string label = "f=" + f.to_string();
    run.check.expect(sequence_from(g, lam) == f, label, "sequence_from(pi(f), lambda(f)) != f");
    run.check.expect(st.max == lam.max() + s.des, label, "max(f) != max(lambda) + des");
    run.check.expect(st.sum + s.maj == lam.sum() + P.n * s.des, label,
                     "|f| != |lambda| + n des - maj");
    check_pro_ass(run, f, g);
  });
  std::vector<Partition> partitions;
  enumerate_partitions(P.n, cap, [&](const Partition& lam) { partitions.push_back(lam); });
  GroupEnumeration(P.r, P.n, P.max_elements).for_each([&](const ColoredPermutation& g) {
    const auto skew = skew_inverse(g);
    for (const auto& lam : partitions) {
      const std::string label = "gamma=" + g.to_string() + " lambda=" + lam.to_string();
      const auto f = sequence_from(g, lam);
      run.check.expect(f.in_N0() && pi_of(f) == g && lambda_of(f) == lam, label,
                       "(pi, lambda) does not invert sequence_from");
      const auto associated = lambda_gamma(lam, skew);
      run.check.expect(is_compatible(lam, g) == (associated.in_N0() && pi_of(associated) == g),
                       label, "compatibility differs from association");
    }
  });
}

std::uint64_t multinomial(const std::vector<std::uint32_t>& parts) {
  std::uint64_t result = 1;
  std::uint32_t total = 0;
  for (auto k : parts) {
    for (std::uint32_t i = 1; i <= k; ++i) {
      ++total;
      result = result * total / i;
    }
  }
  return result;
}

void biword_count(Run& run) {
  const auto& P = run.params;
  run.param("r", P.r);
  run.param("n", P.n);
  const std::uint32_t cap_f = run.cap(P.t1max, 3, "t1max");
  const std::uint32_t cap_g = run.cap(P.t2max, 3, "t2max");
  const std::uint32_t r = P.r;
  const std::uint32_t n = P.n;

  using Column = std::tuple<std::uint32_t, std::uint32_t, Color>;  // (g_i, f_i, c_i)
  using TripleKey = std::tuple<ColoredPermutation, Partition, Partition>;
  struct Weighted {
    std::uint32_t max_f, max_g;
    std::uint64_t sum_f, sum_g, col, icol;
  };
  std::set<TripleKey> images;
  std::map<std::vector<Column>, std::uint64_t> column_counts;
  std::vector<Weighted> weights;
  std::uint64_t biwords = 0;
  enumerate_biwords(r, n, cap_f, cap_g, P.max_elements, [&](const Biword& b) {
    ++biwords;
    const std::string label = "g=" + b.g.to_string() + " f=" + b.f.to_string();
    const auto t = to_triple(b);
    run.check.expect(is_valid_triple(t), label, "image triple violates compatibility");
    run.check.expect(from_triple(t) == b, label, "from_triple(to_triple(b)) != b");
    images.emplace(t.gamma, t.lam, t.mu);
    std::vector<Column> cols;
    for (std::size_t i = 0; i < n; ++i) cols.emplace_back(b.g[i], b.f.values()[i], b.f.colors()[i]);
    std::sort(cols.begin(), cols.end());
    ++column_counts[cols];
    const auto s = detail::fast_stats(r, t.gamma.sigma(), t.gamma.colors());
    const auto inv = inverse(t.gamma);
    const auto si = detail::fast_stats(r, inv.sigma(), inv.colors());
    weights.push_back({t.mu.max(), b.g.max(), t.mu.sum(), b.g.sum(), s.col, si.col});
  });
  run.check.count("biwords vs distinct triples", images.size(), biwords);

  std::set<TripleKey> triples;
  std::vector<Partition> lams, mus;
  enumerate_partitions(n, cap_g, [&](const Partition& p) { lams.push_back(p); });
  enumerate_partitions(n, cap_f, [&](const Partition& p) { mus.push_back(p); });
  GroupEnumeration(r, n, P.max_elements).for_each([&](const ColoredPermutation& g) {
    const auto skew = skew_inverse(g);
    for (const auto& lam : lams) {
      if (!is_compatible(lam, skew)) continue;
      const auto lg = lambda_gamma(lam, g);
      run.check.expect(lg.in_N0() && pi_of(lg) == skew, "gamma=" + g.to_string(),
                       "pi(lambda^gamma) != skew inverse of gamma");
      for (const auto& mu : mus) {
        if (!is_compatible(mu, g)) continue;
        run.check.expect(pi_of(lambda_gamma(mu, skew)) == g, "gamma=" + g.to_string(),
                         "pi(mu^{skew inverse}) != gamma");
        triples.emplace(g, lam, mu);
      }
    }
  });
  run.check.count("valid triples vs biwords", triples.size(), biwords);
  run.check.expect(triples == images, "triple sets", "image of to_triple != valid triples");

  // Column multisets: every multiset of admissible columns is realized by the
  // product of multinomials over its colored columns.
  std::vector<Column> admissible;
  for (std::uint32_t g = 0; g <= cap_g; ++g) {
    for (std::uint32_t f = 0; f <= cap_f; ++f) {
      admissible.emplace_back(g, f, 0);
      if (g > 0 && f > 0) {
        for (Color c = 1; c < r; ++c) admissible.emplace_back(g, f, c);
      }
    }
  }
  std::sort(admissible.begin(), admissible.end());
  std::vector<std::size_t> pick(n, 0);
  std::uint64_t multisets = 0;
  auto visit = [&]() {
    std::vector<Column> cols;
    for (auto i : pick) cols.push_back(admissible[i]);
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> by_cell;
    for (const auto& [g, f, c] : cols) {
      if (c == 0) continue;
      auto& v = by_cell[{g, f}];
      v.resize(r - 1, 0);
      ++v[c - 1];
    }
    std::uint64_t expected = 1;
    for (const auto& [cell, split] : by_cell) expected *= multinomial(split);
    auto it = column_counts.find(cols);
    const std::uint64_t got = it == column_counts.end() ? 0 : it->second;
    std::string label = "columns";
    for (const auto& [g, f, c] : cols) label += " " + std::to_string(g) + "/" + detail::format_colored(f, c);
    run.check.count(label, got, expected);
    ++multisets;
  };
  auto rec = [&](auto&& self, std::size_t i, std::size_t from) -> void {
    if (i == n) {
      visit();
      return;
    }
    for (std::size_t j = from; j < admissible.size(); ++j) {
      pick[i] = j;
      self(self, i + 1, j);
    }
  };
  rec(rec, 0, 0);
  run.check.count("column multisets covered", column_counts.size(), multisets);

  // Weighted count against the biword product formula.
  auto ctx = SeriesContext::make(
      {Var{"q1", {}}, Var{"q2", {}}, Var{"a", {}}, Var{"b", {}}, Var{"u", n}}, P.max_terms);
  for (std::uint32_t k1 = 0; k1 <= cap_f; ++k1) {
    for (std::uint32_t k2 = 0; k2 <= cap_g; ++k2) {
      std::vector<Term> terms;
      for (const auto& w : weights) {
        if (w.max_f > k1 || w.max_g > k2) continue;
        Exponents e{};
        e[0] = static_cast<std::uint16_t>(std::uint64_t{n} * k1 - w.sum_f);
        e[1] = static_cast<std::uint16_t>(std::uint64_t{n} * k2 - w.sum_g);
        e[2] = static_cast<std::uint16_t>(w.col);
        e[3] = static_cast<std::uint16_t>(w.icol);
        terms.push_back(Term{e, 1});
      }
      run.check.compare("k1=" + std::to_string(k1) + " k2=" + std::to_string(k2),
                        MultiPoly::from_terms(ctx, std::move(terms)),
                        biword_series(ctx, r, k1, k2, n));
    }
  }
}

}  // namespace

std::span<const CatalogEntry> catalog() { return kCatalog; }

bool is_known_identity(std::string_view name) {
  return std::any_of(std::begin(kCatalog), std::end(kCatalog),
                     [&](const CatalogEntry& e) { return e.name == name; });
}

VerificationReport verify_identity(std::string_view name, const VerifyParams& params) {
  if (!is_known_identity(name)) throw InvalidInput("unknown identity '" + std::string(name) + "'");
  if (params.r == 0) throw InvalidInput("r must be positive");
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.identity = std::string(name);
  Checker checker(report, params.corruption);

  VerifyParams effective = params;
  if (name == "gg1" || name == "gg2") {
    if (params.r != 1) report.warnings.push_back("r forced to 1");
    effective.r = 1;
  }
  Run run{effective, report, checker};
  if (name == "length_gf") length_gf(run);
  else if (name == "ell_col") ell_col(run);
  else if (name == "projection") projection(run);
  else if (name == "desmaj") desmaj(run);
  else if (name == "keylem") keylem(run);
  else if (name == "theorem_A") theorem_a(run, Stat::length);
  else if (name == "theorem_B") theorem_b(run);
  else if (name == "chow_gessel") chow_gessel(run);
  else if (name == "carlitz") carlitz(run);
  else if (name == "reiner") reiner(run);
  else if (name == "brenti") brenti(run);
  else if (name == "gessel_roselle") gessel_roselle(run);
  else if (name == "adin_roichman") adin_roichman(run);
  else if (name == "gg1") theorem_a(run, Stat::inv);
  else if (name == "gg2") theorem_b(run);
  else if (name == "bijection_stats") bijection_stats(run);
  else if (name == "biword_count") biword_count(run);

  report.millis =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<SelfTestResult> harness_self_test() {
  struct Case {
    std::string_view name;
    VerifyParams params;
  };
  auto make = [](std::uint32_t r, std::uint32_t n, std::optional<std::uint32_t> tmax) {
    VerifyParams p;
    p.r = r;
    p.n = n;
    p.tmax = tmax;
    return p;
  };
  const VerifyParams length = make(2, 3, std::nullopt);
  const VerifyParams theorem = make(2, 2, 3);
  const VerifyParams carlitz_params = make(2, 3, 4);
  const Case cases[] = {{"length_gf", length}, {"theorem_A", theorem}, {"carlitz", carlitz_params}};
  std::vector<SelfTestResult> out;
  for (const auto& c : cases) {
    for (auto side : {Corruption::Side::lhs, Corruption::Side::rhs}) {
      VerifyParams p = c.params;
      p.corruption = Corruption{side, 1};
      const auto report = verify_identity(c.name, p);
      SelfTestResult result{std::string(c.name), side, !report.pass, false, report.to_text()};
      result.localized = report.mismatch && report.injected &&
                         report.mismatch->monomial == *report.injected;
      out.push_back(std::move(result));
    }
  }
  return out;
}

}  // namespace wreath
