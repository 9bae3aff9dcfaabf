#include "zsparse/exponent_arith.hpp"

#include <benchmark/benchmark.h>

using namespace zsparse;

static void BM_PowerResidueClass(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    for (std::uint64_t k = 0; k < n; ++k) benchmark::DoNotOptimize(power_residue_class(2, k, n));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_PowerResidueClass)->Arg(50)->Arg(1000)->Arg(10000);

static void BM_MultOrder(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mult_order(3, n));
}
BENCHMARK(BM_MultOrder)->Arg(1'000'003)->Arg(999'999'937);

static void BM_FacResidueClass(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(fac_residue_class(1, n));
}
BENCHMARK(BM_FacResidueClass)->Arg(97)->Arg(10007);
