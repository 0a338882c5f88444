#include <benchmark/benchmark.h>

#include "etale/random.hpp"
#include "etale/region.hpp"

namespace {

std::vector<etale::Region> sample_opens(std::size_t n, int depth) {
  etale::random::Rng rng(1);
  const auto X = etale::Space::cantor("01");
  std::vector<etale::Region> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(etale::random::open(rng, X, depth));
  return out;
}

void BM_BooleanOps(benchmark::State& state) {
  const auto sets = sample_opens(64, static_cast<int>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& a = sets[i % sets.size()];
    const auto& b = sets[(i + 1) % sets.size()];
    benchmark::DoNotOptimize((a | b) - (a & b));
    ++i;
  }
}
BENCHMARK(BM_BooleanOps)->Arg(3)->Arg(5);

void BM_ClosureInterior(benchmark::State& state) {
  const auto sets = sample_opens(64, static_cast<int>(state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sets[i++ % sets.size()].closure().interior());
  }
}
BENCHMARK(BM_ClosureInterior)->Arg(3)->Arg(5);

// The three routes to "small", each on region boundaries.
void BM_SmallnessRoutes(benchmark::State& state) {
  std::vector<etale::Region> boundaries;
  for (const auto& u : sample_opens(64, 4)) boundaries.push_back(u.closure() - u);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& r = boundaries[i++ % boundaries.size()];
    switch (state.range(0)) {
      case 0: benchmark::DoNotOptimize(r.has_empty_interior()); break;
      case 1: benchmark::DoNotOptimize(r.is_nowhere_dense()); break;
      default: benchmark::DoNotOptimize(r.is_meagre()); break;
    }
  }
}
BENCHMARK(BM_SmallnessRoutes)->Arg(0)->Arg(1)->Arg(2);

}  // namespace
