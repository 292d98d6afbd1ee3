#include <benchmark/benchmark.h>

#include <random>

#include "liecert/exactla.hpp"
#include "liecert/modular.hpp"
#include "liecert/operators.hpp"
#include "liecert/orbit.hpp"

using namespace liecert;

namespace {

SparseMat random_sparse(std::size_t n, double density, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> entry(-9, 9);
  SparseMatBuilder b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (u(rng) < density) b.add(i, j, entry(rng));
  return std::move(b).build();
}

LieAlgebra algebra(const char* label) { return LieAlgebra::chevalley(build_root_system(parse_type(label))); }

void BM_ExactRank(benchmark::State& state) {
  const SparseMat m = random_sparse(state.range(0), 0.05, 1);
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_ExactRank)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_ModularRank(benchmark::State& state) {
  const SparseMat m = random_sparse(state.range(0), 0.05, 1);
  const Residue p = PrimeSampler(0).next();
  for (auto _ : state) benchmark::DoNotOptimize(modular_rank(m, p));
}
BENCHMARK(BM_ModularRank)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_ChevalleyBuild(benchmark::State& state, const char* label) {
  const RootSystem rs = build_root_system(parse_type(label));
  for (auto _ : state) benchmark::DoNotOptimize(LieAlgebra::chevalley(rs));
}
BENCHMARK_CAPTURE(BM_ChevalleyBuild, G2, "G2")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ChevalleyBuild, D4, "D4")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_ChevalleyBuild, F4, "F4")->Unit(benchmark::kMillisecond);

void BM_OrbitSampling(benchmark::State& state, const char* label) {
  const LieAlgebra L = algebra(label);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_orbit(L, 8, seed++));
}
BENCHMARK_CAPTURE(BM_OrbitSampling, G2, "G2")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_OrbitSampling, B3, "B3")->Unit(benchmark::kMillisecond);

void BM_BianchiModular(benchmark::State& state, const char* label) {
  const LieAlgebra L = algebra(label);
  for (auto _ : state)
    benchmark::DoNotOptimize(formal_curvature_space(L, SolveMode::modular, Budget{}, PrimePolicy{0, 1}));
}
BENCHMARK_CAPTURE(BM_BianchiModular, A2, "A2")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_BianchiModular, G2, "G2")->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
