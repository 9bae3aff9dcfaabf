#include "zsparse/abelian.hpp"
#include "zsparse/equation_solver.hpp"
#include "zsparse/gamma_solver.hpp"

#include <benchmark/benchmark.h>

using namespace zsparse;

static void BM_SolvePowers(benchmark::State& state) {
  const char* eqs[] = {"1,1,-1", "1,1,1,-1", "1,-1,1,-1,2"};
  const auto eq = EquationSpec::parse(eqs[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(solve_powers(eq, 2));
}
BENCHMARK(BM_SolvePowers)->DenseRange(0, 2);

static void BM_SolveFactorials(benchmark::State& state) {
  const char* eqs[] = {"1,1,-1", "1,2,-1,-2", "1,1,1,-1,-1"};
  const auto eq = EquationSpec::parse(eqs[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(solve_factorials(eq));
}
BENCHMARK(BM_SolveFactorials)->DenseRange(0, 2);

static void BM_BruteForce(benchmark::State& state) {
  const auto eq = EquationSpec::parse("1,1,-1");
  BruteForceOptions opt;
  opt.jobs = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_solutions(eq, SparseSet::powers(2), static_cast<std::size_t>(state.range(0)), opt));
  }
}
BENCHMARK(BM_BruteForce)->Args({12, 1})->Args({40, 1})->Args({40, 4});

static void BM_CoversCoset(benchmark::State& state) {
  std::vector<AffineFamily> fams;
  for (int i = 0; i < state.range(0); ++i) fams.push_back(AffineFamily{i - 3, i + 1});
  const auto p = SparseSet::powers(2);
  for (auto _ : state) benchmark::DoNotOptimize(covers_coset(fams, {7, 3}, p));
}
BENCHMARK(BM_CoversCoset)->Arg(1)->Arg(5)->Arg(20);

static void BM_GammaSat(benchmark::State& state) {
  const auto g = make_gamma_instance("y ≡_3 1 AND y != 2a AND y != a + 1 AND y != 5a - 7", "", SparseSet::powers(2));
  for (auto _ : state) benchmark::DoNotOptimize(gamma_sat(g));
}
BENCHMARK(BM_GammaSat);

static void BM_SmithBasis(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  IntegerLattice l;
  l.rank = n;
  for (std::size_t i = 0; i < n + 1; ++i) {
    IntVector v;
    for (std::size_t j = 0; j < n; ++j) v.push_back(static_cast<long>((i * 7 + j * 13 + i * j) % 23) - 11);
    l.generators.push_back(v);
  }
  for (auto _ : state) benchmark::DoNotOptimize(smith_basis(l));
}
BENCHMARK(BM_SmithBasis)->Arg(3)->Arg(8)->Arg(16);
