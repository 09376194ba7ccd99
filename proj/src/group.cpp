#include "wreath/group.hpp"

#include <cctype>
#include <charconv>

namespace wreath {

std::int64_t order_key(ColoredInteger x, std::uint32_t r) {
  if (x.color >= r) {
    throw InvalidInput("color " + std::to_string(x.color) + " out of range for r = " +
                       std::to_string(r));
  }
  if (x.color == 0) return static_cast<std::int64_t>(x.value);
  if (x.value == 0) throw InvalidInput("a zero entry cannot carry a color");
  return -(static_cast<std::int64_t>(x.value) * r + x.color);
}

std::strong_ordering compare_colored(ColoredInteger a, ColoredInteger b, std::uint32_t r) {
  return order_key(a, r) <=> order_key(b, r);
}

ColoredPermutation::ColoredPermutation(std::uint32_t r, std::vector<std::uint32_t> sigma,
                                       std::vector<Color> colors)
    : r_(r), sigma_(std::move(sigma)), colors_(std::move(colors)) {
  if (r_ == 0) throw InvalidInput("r must be positive");
  if (sigma_.size() != colors_.size()) throw InvalidInput("sigma and colors differ in length");
  const std::size_t n = sigma_.size();
  std::vector<bool> seen(n + 1, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (sigma_[i] == 0 || sigma_[i] > n) {
      throw InvalidInput("entry " + std::to_string(sigma_[i]) + " outside [1," +
                         std::to_string(n) + "]");
    }
    if (seen[sigma_[i]]) throw InvalidInput("repeated value " + std::to_string(sigma_[i]));
    seen[sigma_[i]] = true;
    if (colors_[i] >= r_) {
      throw InvalidInput("color " + std::to_string(colors_[i]) + " out of range for r = " +
                         std::to_string(r_));
    }
  }
}

ColoredPermutation ColoredPermutation::identity(std::uint32_t r, std::size_t n) {
  std::vector<std::uint32_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 1U);
  return ColoredPermutation(r, std::move(sigma), std::vector<Color>(n, 0));
}

bool ColoredPermutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < sigma_.size(); ++i) {
    if (sigma_[i] != i + 1 || colors_[i] != 0) return false;
  }
  return true;
}

namespace detail {

std::string format_colored(std::uint32_t value, Color color) {
  std::string out = std::to_string(value);
  if (color != 0) out += "^" + std::to_string(color);
  return out;
}

namespace {

std::uint32_t parse_number(std::string_view token, std::string_view whole) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw InvalidInput("cannot parse '" + std::string(token) + "' in '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

std::vector<ColoredInteger> parse_colored_list(std::string_view text) {
  std::string compact;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) compact.push_back(ch);
  }
  std::vector<ColoredInteger> out;
  if (compact.empty()) return out;
  std::string_view rest = compact;
  while (true) {
    auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    auto caret = item.find('^');
    ColoredInteger entry;
    entry.value = parse_number(item.substr(0, caret), text);
    if (caret != std::string_view::npos) {
      entry.color = parse_number(item.substr(caret + 1), text);
      if (entry.color == 0) throw InvalidInput("explicit color 0 in '" + std::string(text) + "'");
    }
    out.push_back(entry);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace detail

ColoredPermutation ColoredPermutation::parse(std::string_view window, std::uint32_t r) {
  std::string compact;
  for (char ch : window) {
    if (!std::isspace(static_cast<unsigned char>(ch))) compact.push_back(ch);
  }
  if (compact.size() < 2 || compact.front() != '[' || compact.back() != ']') {
    throw InvalidInput("window must be enclosed in brackets: '" + std::string(window) + "'");
  }
  auto entries = detail::parse_colored_list(std::string_view(compact).substr(1, compact.size() - 2));
  std::vector<std::uint32_t> sigma;
  std::vector<Color> colors;
  for (const auto& e : entries) {
    sigma.push_back(e.value);
    colors.push_back(e.color);
  }
  return ColoredPermutation(r, std::move(sigma), std::move(colors));
}

std::string ColoredPermutation::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < sigma_.size(); ++i) {
    if (i) out += ",";
    out += detail::format_colored(sigma_[i], colors_[i]);
  }
  return out + "]";
}

ColoredPermutation multiply(const ColoredPermutation& alpha, const ColoredPermutation& beta) {
  if (alpha.r() != beta.r() || alpha.n() != beta.n()) {
    throw InvalidInput("multiply: operands live in different groups");
  }
  const std::uint32_t r = alpha.r();
  const std::size_t n = alpha.n();
  std::vector<std::uint32_t> sigma(n);
  std::vector<Color> colors(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t b = beta.sigma()[i];
    sigma[i] = alpha.sigma()[b - 1];
    colors[i] = (beta.colors()[i] + alpha.colors()[b - 1]) % r;
  }
  return ColoredPermutation(r, std::move(sigma), std::move(colors));
}

ColoredPermutation inverse(const ColoredPermutation& gamma) {
  const std::uint32_t r = gamma.r();
  const std::size_t n = gamma.n();
  std::vector<std::uint32_t> sigma(n);
  std::vector<Color> colors(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t v = gamma.sigma()[i];
    sigma[v - 1] = static_cast<std::uint32_t>(i + 1);
    colors[v - 1] = (r - gamma.colors()[i]) % r;
  }
  return ColoredPermutation(r, std::move(sigma), std::move(colors));
}

ColoredPermutation skew_inverse(const ColoredPermutation& gamma) {
  const std::size_t n = gamma.n();
  std::vector<std::uint32_t> sigma(n);
  std::vector<Color> colors(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t v = gamma.sigma()[i];
    sigma[v - 1] = static_cast<std::uint32_t>(i + 1);
    colors[v - 1] = gamma.colors()[i];
  }
  return ColoredPermutation(gamma.r(), std::move(sigma), std::move(colors));
}

namespace detail {

FastStats fast_stats(std::uint32_t r, std::span<const std::uint32_t> sigma,
                     std::span<const Color> colors) {
  FastStats s;
  const std::size_t n = sigma.size();
  auto key = [&](std::size_t i) -> std::int64_t {
    return colors[i] == 0 ? static_cast<std::int64_t>(sigma[i])
                          : -(static_cast<std::int64_t>(sigma[i]) * r + colors[i]);
  };
  std::int64_t previous = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t ki = key(i);
    if (previous > ki) {
      ++s.des;
      s.maj += static_cast<std::uint32_t>(i);
    }
    previous = ki;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (ki > key(j)) ++s.inv;
    }
    if (colors[i] != 0) {
      s.col += colors[i];
      s.length += sigma[i] + colors[i] - 1;
    }
  }
  s.length += s.inv;
  return s;
}

}  // namespace detail

std::vector<std::uint32_t> descent_set(const ColoredPermutation& gamma) {
  std::vector<std::uint32_t> out;
  std::int64_t previous = 0;
  for (std::size_t i = 0; i < gamma.n(); ++i) {
    const std::int64_t k = order_key(gamma[i], gamma.r());
    if (previous > k) out.push_back(static_cast<std::uint32_t>(i));
    previous = k;
  }
  return out;
}

StatRecord statistics(const ColoredPermutation& gamma) {
  const auto fast = detail::fast_stats(gamma.r(), gamma.sigma(), gamma.colors());
  StatRecord rec;
  rec.inv = fast.inv;
  rec.length = fast.length;
  rec.des_set = descent_set(gamma);
  rec.des = fast.des;
  rec.maj = fast.maj;
  rec.col = fast.col;
  rec.fmaj = static_cast<std::uint64_t>(gamma.r()) * rec.maj + rec.col;
  rec.col_vector.assign(gamma.colors().begin(), gamma.colors().end());
  return rec;
}

ColoredPermutation project_to_B(const ColoredPermutation& gamma) {
  if (gamma.r() < 2) throw InvalidInput("projection to B_n needs r >= 2");
  std::vector<Color> colors(gamma.colors().begin(), gamma.colors().end());
  for (auto& c : colors) c = c == 0 ? 0 : 1;
  return ColoredPermutation(2, {gamma.sigma().begin(), gamma.sigma().end()}, std::move(colors));
}

std::uint64_t group_order(std::uint32_t r, std::size_t n) {
  std::uint64_t total = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    if (__builtin_mul_overflow(total, static_cast<std::uint64_t>(i), &total)) return 0;
    if (__builtin_mul_overflow(total, static_cast<std::uint64_t>(r), &total)) return 0;
  }
  return total;
}

GroupEnumeration::GroupEnumeration(std::uint32_t r, std::size_t n, std::uint64_t max_elements)
    : r_(r), n_(n) {
  if (r == 0) throw InvalidInput("r must be positive");
  size_ = group_order(r, n);
  if (size_ == 0 || size_ > max_elements) {
    throw BudgetExceeded("G(" + std::to_string(r) + "," + std::to_string(n) +
                         ") exceeds the element budget of " + std::to_string(max_elements));
  }
  colorings_ = 1;
  for (std::size_t i = 0; i < n; ++i) colorings_ *= r;
}

void GroupEnumeration::unrank(std::uint64_t index, std::vector<std::uint32_t>& sigma,
                              std::vector<Color>& colors) const {
  std::uint64_t perm_rank = index / colorings_;
  std::uint64_t color_rank = index % colorings_;
  colors.assign(n_, 0);
  for (std::size_t i = n_; i-- > 0;) {
    colors[i] = static_cast<Color>(color_rank % r_);
    color_rank /= r_;
  }
  // Lehmer code, most significant digit first.
  std::vector<std::uint32_t> pool(n_);
  std::iota(pool.begin(), pool.end(), 1U);
  std::vector<std::uint64_t> factorial(n_ + 1, 1);
  for (std::size_t i = 1; i <= n_; ++i) factorial[i] = factorial[i - 1] * i;
  sigma.clear();
  for (std::size_t i = 0; i < n_; ++i) {
    const std::uint64_t f = factorial[n_ - 1 - i];
    const std::uint64_t digit = perm_rank / f;
    perm_rank %= f;
    sigma.push_back(pool[digit]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
  }
}

void GroupEnumeration::advance(std::vector<std::uint32_t>& sigma,
                               std::vector<Color>& colors) const {
  for (std::size_t i = n_; i-- > 0;) {
    if (++colors[i] < r_) return;
    colors[i] = 0;
  }
  std::next_permutation(sigma.begin(), sigma.end());
}

ColoredPermutation GroupEnumeration::at(std::uint64_t index) const {
  if (index >= size_) throw std::out_of_range("group index out of range");
  std::vector<std::uint32_t> sigma;
  std::vector<Color> colors;
  unrank(index, sigma, colors);
  return ColoredPermutation(r_, std::move(sigma), std::move(colors));
}

std::vector<ColoredPermutation> enumerate_group(std::uint32_t r, std::size_t n,
                                                std::uint64_t max_elements) {
  GroupEnumeration group(r, n, max_elements);
  std::vector<ColoredPermutation> out;
  out.reserve(group.size());
  group.for_each([&](ColoredPermutation g) { out.push_back(std::move(g)); });
  return out;
}

}  // namespace wreath
