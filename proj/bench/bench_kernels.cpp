// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include <random>

#include "wreath/identities.hpp"

using namespace wreath;

namespace {

const StatVector kStats{{Stat::des, "t"}, {Stat::maj, "q"}, {Stat::length, "p"}, {Stat::col, "a"}};

ContextPtr stat_context() {
  return SeriesContext::make({{"t", std::nullopt}, {"q", std::nullopt}, {"p", std::nullopt}, {"a", std::nullopt}});
}

MultiPoly random_poly(const ContextPtr& c, int terms, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<Term> out;
  for (int k = 0; k < terms; ++k) {
    Term t;
    t.exponents[0] = static_cast<std::uint16_t>(rng() % 9);
    t.exponents[1] = static_cast<std::uint16_t>(rng() % 41);
    t.exponents[2] = static_cast<std::uint16_t>(rng() % 9);
    t.coefficient = static_cast<long>(rng() % 201) - 100;
    out.push_back(t);
  }
  return MultiPoly::from_terms(c, std::move(out));
}

void BM_dist_serial(benchmark::State& state) {
  const auto c = stat_context();
  const auto r = static_cast<std::uint32_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(dist_polynomial_serial(r, n, kStats, c));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(group_order(r, n)));
}

void BM_dist_parallel(benchmark::State& state) {
  const auto c = stat_context();
  const auto r = static_cast<std::uint32_t>(state.range(0));
  const auto n = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dist_polynomial(r, n, kStats, c, kDefaultMaxElements, parallel::thread_count()));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(group_order(r, n)));
}

void BM_mul_serial(benchmark::State& state) {
  const auto c = SeriesContext::make({{"t", 8}, {"q", 40}, {"a", 8}});
  const auto x = random_poly(c, static_cast<int>(state.range(0)), 1);
  const auto y = random_poly(c, static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(mul_truncated(x, y));
}

void BM_mul_parallel(benchmark::State& state) {
  const auto c = SeriesContext::make({{"t", 8}, {"q", 40}, {"a", 8}});
  const auto x = random_poly(c, static_cast<int>(state.range(0)), 1);
  const auto y = random_poly(c, static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(mul_truncated_parallel(x, y, parallel::thread_count()));
}

}  // namespace

BENCHMARK(BM_dist_serial)->Args({2, 6})->Args({3, 5})->Args({4, 5})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_dist_parallel)->Args({2, 6})->Args({3, 5})->Args({4, 5})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mul_serial)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mul_parallel)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
