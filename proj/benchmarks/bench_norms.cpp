#include <benchmark/benchmark.h>

#include <random>

#include "capra/bounds.hpp"
#include "capra/conjugacy.hpp"
#include "capra/norms.hpp"
#include "capra/oracle.hpp"

using namespace capra;

namespace {

Vector random_vector(std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Vector v(d);
  for (double& x : v) x = g(rng);
  return v;
}

void BM_TopKDualNorm(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const Vector y = random_vector(d, 1);
  const SourceNorm src = SourceNorm::lp(1.5);
  for (auto _ : state) benchmark::DoNotOptimize(dual_coordinate_norm(y, d / 4 + 1, src));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TopKDualNorm)->RangeMultiplier(8)->Range(8, 1 << 15)->Complexity();

void BM_KSupportNorm(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const Vector x = random_vector(d, 2);
  for (auto _ : state) benchmark::DoNotOptimize(k_support_norm(x, d / 4 + 1).value);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KSupportNorm)->RangeMultiplier(8)->Range(8, 1 << 15)->Complexity();

void BM_GenericCoordinateNorm(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const Vector x = random_vector(d, 3);
  const SourceNorm src = SourceNorm::lp(3.0);
  for (auto _ : state) benchmark::DoNotOptimize(coordinate_norm(x, d / 2, src));
}
BENCHMARK(BM_GenericCoordinateNorm)->DenseRange(4, 16, 4);

void BM_SubsetOracle(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const Vector y = random_vector(d, 4);
  const SourceNorm src = SourceNorm::lp(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(dual_norm_by_subsets(y, d / 2, src));
}
BENCHMARK(BM_SubsetOracle)->DenseRange(4, 16, 4);

void BM_Biconjugate(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const Vector x = random_vector(d, 5);
  const PhiSpec id = PhiSpec::identity(d);
  const SourceNorm src = SourceNorm::lp(2.0);
  BiconjugateOptions opts;
  opts.run_variational = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(capra_biconjugate(id, x, src, {}, opts).value);
}
BENCHMARK(BM_Biconjugate)->ArgsProduct({{2, 3, 4}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_PhiNorm(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  const Vector x = random_vector(d, 6);
  const SourceNorm src = SourceNorm::lp(2.0);
  const PhiSpec phi = PhiSpec::sqrt(d);
  for (auto _ : state) benchmark::DoNotOptimize(phi_norm(x, phi, src));
}
BENCHMARK(BM_PhiNorm)->DenseRange(2, 8, 2)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
