#include "wreath/encode.hpp"

#include <algorithm>
#include <numeric>

namespace wreath {

ColoredSequence::ColoredSequence(std::uint32_t r, std::vector<std::uint32_t> values,
                                 std::vector<Color> colors)
    : r_(r), values_(std::move(values)), colors_(std::move(colors)) {
  if (r_ == 0) throw InvalidInput("r must be positive");
  if (values_.size() != colors_.size()) throw InvalidInput("values and colors differ in length");
  for (Color c : colors_) {
    if (c >= r_) {
      throw InvalidInput("color " + std::to_string(c) + " out of range for r = " +
                         std::to_string(r_));
    }
  }
}

ColoredSequence ColoredSequence::parse(std::string_view text, std::uint32_t r) {
  std::vector<std::uint32_t> values;
  std::vector<Color> colors;
  for (const auto& e : detail::parse_colored_list(text)) {
    values.push_back(e.value);
    colors.push_back(e.color);
  }
  return ColoredSequence(r, std::move(values), std::move(colors));
}

bool ColoredSequence::in_N0() const noexcept {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] == 0 && colors_[i] != 0) return false;
  }
  return true;
}

std::string ColoredSequence::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) out += ",";
    out += detail::format_colored(values_[i], colors_[i]);
  }
  return out;
}

Partition::Partition(std::vector<std::uint32_t> parts) : parts_(std::move(parts)) {
  if (!std::is_sorted(parts_.begin(), parts_.end())) {
    throw InvalidInput("partition parts must be nondecreasing: " + to_string());
  }
}

Partition Partition::parse(std::string_view text) {
  std::vector<std::uint32_t> parts;
  for (const auto& e : detail::parse_colored_list(text)) {
    if (e.color != 0) throw InvalidInput("partition parts carry no color");
    parts.push_back(e.value);
  }
  return Partition(std::move(parts));
}

std::uint64_t Partition::sum() const noexcept {
  return std::accumulate(parts_.begin(), parts_.end(), std::uint64_t{0});
}

std::string Partition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(parts_[i]);
  }
  return out;
}

ColoredPermutation pi_of(const ColoredSequence& f) {
  const std::size_t n = f.n();
  const std::uint32_t r = f.r();
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0U);
  // Within a bloc the entries are the colored indices i^{c_i}, i >= 1.
  auto key = [&](std::uint32_t i) { return order_key({i + 1, f.colors()[i]}, r); };
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (f.values()[a] != f.values()[b]) return f.values()[a] < f.values()[b];
    return key(a) < key(b);
  });
  std::vector<std::uint32_t> sigma(n);
  std::vector<Color> colors(n);
  for (std::size_t k = 0; k < n; ++k) {
    sigma[k] = order[k] + 1;
    colors[k] = f.colors()[order[k]];
  }
  return ColoredPermutation(r, std::move(sigma), std::move(colors));
}

std::vector<std::uint32_t> descent_prefix_counts(const ColoredPermutation& gamma) {
  const auto des = descent_set(gamma);
  std::vector<std::uint32_t> prefix(gamma.n(), 0);
  std::size_t next = 0;
  std::uint32_t count = 0;
  for (std::size_t i = 1; i <= gamma.n(); ++i) {
    while (next < des.size() && des[next] <= i - 1) {
      ++count;
      ++next;
    }
    prefix[i - 1] = count;
  }
  return prefix;
}

Partition lambda_of(const ColoredSequence& f) {
  if (!f.in_N0()) throw InvalidInput("lambda_of needs a sequence in N_0: " + f.to_string());
  const auto gamma = pi_of(f);
  const auto prefix = descent_prefix_counts(gamma);
  std::vector<std::uint32_t> parts(f.n());
  for (std::size_t i = 0; i < f.n(); ++i) {
    parts[i] = f.values()[gamma.sigma()[i] - 1] - prefix[i];
  }
  return Partition(std::move(parts));
}

ColoredSequence sequence_from(const ColoredPermutation& gamma, const Partition& lam) {
  if (gamma.n() != lam.size()) throw InvalidInput("sequence_from: length mismatch");
  const auto prefix = descent_prefix_counts(gamma);
  const std::size_t n = gamma.n();
  std::vector<std::uint32_t> values(n);
  std::vector<Color> colors(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint32_t i = gamma.sigma()[k] - 1;
    values[i] = lam[k] + prefix[k];
    colors[i] = gamma.colors()[k];
  }
  return ColoredSequence(gamma.r(), std::move(values), std::move(colors));
}

ColoredSequence lambda_gamma(const Partition& lam, const ColoredPermutation& gamma) {
  if (gamma.n() != lam.size()) throw InvalidInput("lambda_gamma: length mismatch");
  std::vector<std::uint32_t> values(gamma.n());
  for (std::size_t k = 0; k < gamma.n(); ++k) values[k] = lam[gamma.sigma()[k] - 1];
  return ColoredSequence(gamma.r(), std::move(values),
                         {gamma.colors().begin(), gamma.colors().end()});
}

bool is_compatible(const Partition& lam, const ColoredPermutation& gamma) {
  if (gamma.n() != lam.size()) throw InvalidInput("is_compatible: length mismatch");
  for (std::uint32_t i : descent_set(gamma)) {
    const std::uint32_t left = i == 0 ? 0 : lam[i - 1];
    if (!(left < lam[i])) return false;
  }
  return true;
}

SequenceStats seq_statistics(const ColoredSequence& f) {
  SequenceStats s;
  for (std::uint32_t v : f.values()) {
    s.max = std::max(s.max, v);
    s.sum += v;
  }
  const auto gamma = pi_of(f);
  const auto fast = detail::fast_stats(gamma.r(), gamma.sigma(), gamma.colors());
  s.inv = fast.length;
  s.col = fast.col;
  return s;
}

namespace {

std::uint64_t checked_power(std::uint64_t base, std::size_t exp, std::uint64_t limit) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(out, base, &out) || out > limit) return limit + 1;
  }
  return out;
}

}  // namespace

void enumerate_sequences(const SequenceQuery& query,
                         const std::function<void(const ColoredSequence&)>& fn) {
  const std::uint32_t r = query.r;
  const std::size_t n = query.n;
  if (r == 0) throw InvalidInput("r must be positive");

  if (query.composition) {
    const auto& comp = *query.composition;
    const std::uint64_t total = std::accumulate(comp.begin(), comp.end(), std::uint64_t{0});
    if (total != n) {
      throw InvalidInput("composition sums to " + std::to_string(total) + ", expected " +
                         std::to_string(n));
    }
    if (checked_power(r, n, query.max_sequences) > query.max_sequences) {
      throw BudgetExceeded("sequence enumeration exceeds budget");
    }
    std::vector<std::uint32_t> values;
    for (std::uint32_t j = 0; j < comp.size(); ++j) values.insert(values.end(), comp[j], j);
    std::vector<Color> colors(n, 0);
    do {
      std::fill(colors.begin(), colors.end(), 0);
      while (true) {
        fn(ColoredSequence(r, values, colors));
        std::size_t i = n;
        bool carried_out = true;
        while (i-- > 0) {
          if (query.restrict_N0 && values[i] == 0) continue;
          if (++colors[i] < r) {
            carried_out = false;
            break;
          }
          colors[i] = 0;
        }
        if (carried_out) break;
      }
    } while (std::next_permutation(values.begin(), values.end()));
    return;
  }

  const std::uint64_t per_entry = static_cast<std::uint64_t>(query.max_cap + 1) * r;
  if (checked_power(per_entry, n, query.max_sequences) > query.max_sequences) {
    throw BudgetExceeded("sequence enumeration exceeds budget");
  }
  std::vector<std::uint32_t> values(n, 0);
  std::vector<Color> colors(n, 0);
  while (true) {
    fn(ColoredSequence(r, values, colors));
    // Odometer over (value, color) pairs, last entry fastest.
    std::size_t i = n;
    bool done = true;
    while (i-- > 0) {
      const bool colorable = values[i] != 0 || !query.restrict_N0;
      if (colorable && colors[i] + 1 < r) {
        ++colors[i];
        done = false;
        break;
      }
      colors[i] = 0;
      if (values[i] < query.max_cap) {
        ++values[i];
        done = false;
        break;
      }
      values[i] = 0;
    }
    if (done) break;
  }
}

std::vector<ColoredSequence> collect_sequences(const SequenceQuery& query) {
  std::vector<ColoredSequence> out;
  enumerate_sequences(query, [&](const ColoredSequence& f) { out.push_back(f); });
  return out;
}

void enumerate_partitions(std::size_t n, std::uint32_t cap,
                          const std::function<void(const Partition&)>& fn) {
  std::vector<std::uint32_t> parts(n, 0);
  while (true) {
    fn(Partition(parts));
    // Next nondecreasing sequence: bump the last part below cap, reset the tail to it.
    std::size_t i = n;
    while (i > 0 && parts[i - 1] == cap) --i;
    if (i == 0) break;
    const std::uint32_t v = parts[i - 1] + 1;
    for (std::size_t k = i - 1; k < n; ++k) parts[k] = v;
  }
}

}  // namespace wreath
