#pragma once

// Distribution polynomials over G(r,n) and the catalog of generating-function
// identities checked coefficient by coefficient against enumeration.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wreath/group.hpp"
#include "wreath/parallel.hpp"
#include "wreath/qseries.hpp"

namespace wreath {

enum class Stat { des, maj, length, col, ides, imaj, icol, fmaj, ifmaj, inv };

std::string_view stat_name(Stat s);

/// Assigns a statistic to a series variable. Statistics of the inverse use the
/// true inverse, not the skew inverse.
struct StatBinding {
  Stat stat;
  std::string variable;
};
using StatVector = std::vector<StatBinding>;

/// Sum over G(r,n) of prod x_s^{stat_s(gamma)}, truncated to the context caps.
/// OpenMP over index ranges of the enumeration with per-thread accumulators.
MultiPoly dist_polynomial(std::uint32_t r, std::size_t n, const StatVector& stats,
                          const ContextPtr& ctx, std::uint64_t max_elements = kDefaultMaxElements,
                          int threads = parallel::thread_count());

/// Single-threaded reference for dist_polynomial.
MultiPoly dist_polynomial_serial(std::uint32_t r, std::size_t n, const StatVector& stats,
                                 const ContextPtr& ctx,
                                 std::uint64_t max_elements = kDefaultMaxElements);

/// Harness test hook: perturbs one coefficient of the first comparison.
struct Corruption {
  enum class Side { lhs, rhs };
  Side side = Side::lhs;
  std::size_t term = 0;
};

struct VerifyParams {
  std::uint32_t r = 1;
  std::uint32_t n = 1;
  std::optional<std::uint32_t> tmax;
  std::optional<std::uint32_t> t1max;
  std::optional<std::uint32_t> t2max;
  std::optional<std::uint32_t> ucap;
  std::optional<std::uint32_t> pcap;
  std::optional<std::uint32_t> qcap;
  std::uint64_t max_elements = kDefaultMaxElements;
  std::size_t max_terms = kDefaultMaxTerms;
  std::optional<Corruption> corruption;
};

struct Mismatch {
  std::string label;     // which comparison, e.g. "n=3" or "gamma=[2,1^1]"
  std::string monomial;  // "1" for the constant monomial
  std::string lhs;       // coefficients as num/den
  std::string rhs;
  std::string detail;    // set instead of the coefficients for non-polynomial checks
};

struct VerificationReport {
  std::string identity;
  std::vector<std::pair<std::string, std::uint64_t>> params;  // in display order
  bool pass = true;
  bool skipped = false;
  std::optional<Mismatch> mismatch;
  std::optional<std::string> injected;  // monomial perturbed by a Corruption
  std::vector<std::string> warnings;
  std::uint64_t checks = 0;
  std::uint64_t lhs_terms = 0;
  std::uint64_t rhs_terms = 0;
  double millis = 0;

  /// One deterministic line (no timing).
  std::string to_text() const;
  nlohmann::json to_json() const;
};

struct CatalogEntry {
  std::string_view name;
  std::string_view summary;
};

/// Catalog order is the output order of verify --all.
std::span<const CatalogEntry> catalog();
bool is_known_identity(std::string_view name);

/// Throws InvalidInput for an unknown name or parameters outside an entry's
/// domain, BudgetExceeded when an enumeration or polynomial outgrows its budget.
VerificationReport verify_identity(std::string_view name, const VerifyParams& params);

/// Runs length_gf, theorem_A and carlitz with a corrupted coefficient on each
/// side and checks that the failure is reported at the corrupted monomial.
struct SelfTestResult {
  std::string identity;
  Corruption::Side side;
  bool detected = false;
  bool localized = false;
  std::string detail;
};
std::vector<SelfTestResult> harness_self_test();

}  // namespace wreath
