#include <benchmark/benchmark.h>

#include "etale/freeness.hpp"
#include "etale/orbit.hpp"
#include "etale/random.hpp"
#include "etale/workbench/gallery.hpp"

namespace {

etale::GermSystem gallery(const std::string& name) {
  return etale::workbench::load_json(etale::workbench::gallery_scenario(name), name).system;
}

const char* const kSystems[] = {"dbl", "cuntz2", "pair4"};

void BM_LoadClosure(benchmark::State& state) {
  const auto j = etale::workbench::gallery_scenario("pair" + std::to_string(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(etale::workbench::load_json(j).system.label_count());
}
BENCHMARK(BM_LoadClosure)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_FreenessReport(benchmark::State& state) {
  const auto gs = gallery(kSystems[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(etale::freeness_report(gs).hausdorff);
  state.SetLabel(kSystems[state.range(0)]);
}
BENCHMARK(BM_FreenessReport)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_ProductNormalForm(benchmark::State& state) {
  const auto gs = gallery(kSystems[state.range(0)]);
  const etale::SectionAlgebra a(gs);
  etale::random::Rng rng(3);
  std::vector<etale::Section> fs;
  for (int i = 0; i < 32; ++i) fs.push_back(etale::random::section(rng, gs, 4));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(a.normal_form(a.mul(fs[i % fs.size()], fs[(i + 1) % fs.size()])).cells.size());
    ++i;
  }
  state.SetLabel(kSystems[state.range(0)]);
}
BENCHMARK(BM_ProductNormalForm)->DenseRange(0, 2);

void BM_NormalFormByAtoms(benchmark::State& state) {
  const auto gs = gallery(kSystems[state.range(0)]);
  const etale::SectionAlgebra a(gs);
  etale::random::Rng rng(3);
  std::vector<etale::Section> fs;
  for (int i = 0; i < 32; ++i) fs.push_back(etale::random::section(rng, gs, 4));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(a.normal_form_by_atoms(fs[i++ % fs.size()]).cells.size());
  state.SetLabel(kSystems[state.range(0)]);
}
BENCHMARK(BM_NormalFormByAtoms)->DenseRange(0, 2);

void BM_ReducedNormProbe(benchmark::State& state) {
  const auto gs = gallery(kSystems[state.range(0)]);
  const etale::SectionAlgebra a(gs);
  etale::random::Rng rng(5);
  const auto f = etale::random::section(rng, gs, 4);
  for (auto _ : state) benchmark::DoNotOptimize(etale::reduced_norm_probe(a, f).value);
  state.SetLabel(kSystems[state.range(0)]);
}
BENCHMARK(BM_ReducedNormProbe)->DenseRange(0, 2);

}  // namespace
