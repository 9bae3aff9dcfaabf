#include "zsparse/formula.hpp"
#include "zsparse/induced_theory.hpp"

#include <benchmark/benchmark.h>

using namespace zsparse;

static void BM_ToDnf(benchmark::State& state) {
  const auto f = parse_formula(
      "NOT (x ≡_5 1 AND (y = 2 OR x + y != 3)) OR (z ≡_7 2 AND NOT (x - z = 0 OR y ≡_3 0))");
  for (auto _ : state) benchmark::DoNotOptimize(to_dnf(f));
}
BENCHMARK(BM_ToDnf);

static void BM_InducedQe(benchmark::State& state) {
  const auto f = parse_nformula(
      "ALL y. (y = s^2(x) OR EXISTS z. (z != y AND Q[1,6](z) AND s(z) != x AND NOT Q[2,4](s^-1(z))))");
  for (auto _ : state) benchmark::DoNotOptimize(qe(f));
}
BENCHMARK(BM_InducedQe);

static void BM_NEvaluate(benchmark::State& state) {
  const auto f = parse_nformula("ALL y. EXISTS z. (z = s(y) AND Q[1,12](z)) OR NOT Q[0,12](y)");
  const auto bound = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(n_evaluate(f, {}, bound));
}
BENCHMARK(BM_NEvaluate)->Arg(50)->Arg(200);

static void BM_CountTypes(benchmark::State& state) {
  std::vector<std::uint64_t> moduli;
  for (int d = 1; d <= state.range(0); ++d) moduli.push_back(std::uint64_t{1} << d);
  for (auto _ : state) benchmark::DoNotOptimize(count_types(moduli));
}
BENCHMARK(BM_CountTypes)->Arg(5)->Arg(10);
