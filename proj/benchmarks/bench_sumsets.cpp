#include <benchmark/benchmark.h>

#include "hsets/convolution.hpp"
#include "hsets/hset.hpp"
#include "hsets/sumset.hpp"

namespace {

using hsets::Int;
using hsets::IntSet;
using hsets::Window;

// Windowed h-fold sums of a sparse random-looking set; the window grows with range(0).
void BM_WindowedSum(benchmark::State& state) {
  const auto radius = state.range(0);
  const int h = static_cast<int>(state.range(1));
  const auto set = IntSet::unite({IntSet::congruence(97, {0, 5, 17, 40, 66}), IntSet::finite({1, 2, 3})});
  const Window w = Window::symmetric(radius);
  for (auto _ : state) {
    auto r = hsets::windowed_hfold_sum(set, h, w, radius);
    benchmark::DoNotOptimize(r.windowed().members.data());
  }
  state.SetItemsProcessed(state.iterations() * radius * 2);
}
BENCHMARK(BM_WindowedSum)->ArgsProduct({{1 << 10, 1 << 14, 1 << 18}, {2, 4}})->Unit(benchmark::kMicrosecond);

// The raw bitset convolution without set materialization.
void BM_ClippedConvolution(benchmark::State& state) {
  const auto n = state.range(0);
  std::vector<Int> members;
  for (std::int64_t x = -n; x <= n; x += 7) members.emplace_back(x);
  const auto base = hsets::OffsetBitset::from_members(members);
  for (auto _ : state) {
    auto s = hsets::hfold_clipped(base, 3, -n, n);
    benchmark::DoNotOptimize(s.count());
  }
}
BENCHMARK(BM_ClippedConvolution)->Range(1 << 10, 1 << 18)->Unit(benchmark::kMicrosecond);

// Closed-form sums through the periodic engine; range(0) is the modulus.
void BM_SymbolicSum(benchmark::State& state) {
  const Int m = state.range(0);
  const auto set = IntSet::unite({IntSet::congruence(m, {0, 1, 3}), IntSet::tail(0, 25)});
  for (auto _ : state) {
    auto r = hsets::closed_hfold_sum(set, 4);
    benchmark::DoNotOptimize(r.has_value());
  }
}
BENCHMARK(BM_SymbolicSum)->RangeMultiplier(4)->Range(8, 512)->Unit(benchmark::kMicrosecond);

void BM_ComputeH(benchmark::State& state) {
  const auto family = hsets::Family::congruence_chain({0, 1, 3}, 7, 2);
  hsets::HConfig config;
  config.Q = state.range(0);
  for (auto _ : state) {
    auto report = hsets::compute_H(family, 4, config);
    benchmark::DoNotOptimize(report.verdicts.size());
  }
}
BENCHMARK(BM_ComputeH)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
