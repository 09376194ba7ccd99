#include "wreath/parabolic.hpp"

#include <algorithm>

namespace wreath {

namespace {

std::vector<std::uint32_t> normalized(std::vector<std::uint32_t> set, std::size_t n) {
  std::sort(set.begin(), set.end());
  if (std::adjacent_find(set.begin(), set.end()) != set.end()) {
    throw InvalidInput("repeated index in generator set");
  }
  for (auto i : set) {
    if (i >= n) {
      throw InvalidInput("generator index " + std::to_string(i) + " outside [0," +
                         std::to_string(n == 0 ? 0 : n - 1) + "]");
    }
  }
  return set;
}

}  // namespace

DescentClass::DescentClass(std::uint32_t r, std::size_t n, std::vector<std::uint32_t> J)
    : r_(r), n_(n), J_(normalized(std::move(J), n)) {
  if (r == 0) throw InvalidInput("r must be positive");
  for (std::uint32_t i = 0; i < n; ++i) {
    if (!std::binary_search(J_.begin(), J_.end(), i)) complement_.push_back(i);
  }
}

DescentClass DescentClass::from_complement(std::uint32_t r, std::size_t n,
                                           std::vector<std::uint32_t> complement) {
  complement = normalized(std::move(complement), n);
  std::vector<std::uint32_t> J;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (!std::binary_search(complement.begin(), complement.end(), i)) J.push_back(i);
  }
  return DescentClass(r, n, std::move(J));
}

bool DescentClass::contains(std::uint32_t i) const {
  return std::binary_search(J_.begin(), J_.end(), i);
}

std::vector<std::pair<std::size_t, std::size_t>> DescentClass::blocks() const {
  std::vector<std::size_t> cuts{0};
  for (auto d : complement_) {
    if (d != 0) cuts.push_back(d);
  }
  cuts.push_back(n_);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i] < cuts[i + 1]) out.emplace_back(cuts[i], cuts[i + 1]);
  }
  return out;
}

bool in_quotient(const ColoredPermutation& gamma, const DescentClass& J) {
  for (auto d : descent_set(gamma)) {
    if (J.contains(d)) return false;
  }
  return true;
}

bool in_parabolic(const ColoredPermutation& gamma, const DescentClass& J) {
  if (gamma.r() != J.r() || gamma.n() != J.n()) return false;
  const bool colored_head = J.contains(0);
  const auto blocks = J.blocks();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto [start, end] = blocks[b];
    for (std::size_t i = start; i < end; ++i) {
      const std::uint32_t v = gamma.sigma()[i];
      if (v <= start || v > end) return false;
      if (gamma.colors()[i] != 0 && !(b == 0 && colored_head)) return false;
    }
  }
  return true;
}

Factorization decompose(const ColoredPermutation& gamma, const DescentClass& J) {
  if (gamma.r() != J.r() || gamma.n() != J.n()) {
    throw InvalidInput("decompose: gamma and J live in different groups");
  }
  const std::uint32_t r = gamma.r();
  const std::size_t n = gamma.n();
  std::vector<std::uint32_t> tau_sigma(n), delta_sigma(n);
  std::vector<Color> tau_colors(n, 0), delta_colors(n, 0);

  const auto blocks = J.blocks();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto [start, end] = blocks[b];
    std::vector<std::size_t> order;
    for (std::size_t i = start; i < end; ++i) order.push_back(i);
    const bool reduce_colors = b == 0 && J.contains(0);
    if (reduce_colors) {
      std::sort(order.begin(), order.end(),
                [&](std::size_t x, std::size_t y) { return gamma.sigma()[x] < gamma.sigma()[y]; });
    } else {
      std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return order_key(gamma[x], r) < order_key(gamma[y], r);
      });
    }
    for (std::size_t k = 0; k < order.size(); ++k) {
      const std::size_t pos = start + k;   // position in tau
      const std::size_t from = order[k];   // position in gamma
      tau_sigma[pos] = gamma.sigma()[from];
      tau_colors[pos] = reduce_colors ? 0 : gamma.colors()[from];
      delta_sigma[from] = static_cast<std::uint32_t>(pos + 1);
      delta_colors[from] = reduce_colors ? gamma.colors()[from] : 0;
    }
  }
  return {ColoredPermutation(r, std::move(tau_sigma), std::move(tau_colors)),
          ColoredPermutation(r, std::move(delta_sigma), std::move(delta_colors))};
}

void quotient_set(const DescentClass& J, std::uint64_t max_elements,
                  const std::function<void(const ColoredPermutation&)>& fn) {
  GroupEnumeration group(J.r(), J.n(), max_elements);
  group.for_each([&](const ColoredPermutation& g) {
    if (in_quotient(g, J)) fn(g);
  });
}

std::vector<std::uint32_t> parse_index_set(std::string_view text, std::size_t n) {
  std::vector<std::uint32_t> out;
  for (const auto& e : detail::parse_colored_list(text)) {
    if (e.color != 0) throw InvalidInput("generator indices carry no color");
    out.push_back(e.value);
  }
  return normalized(std::move(out), n);
}

}  // namespace wreath
