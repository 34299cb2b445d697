#include <benchmark/benchmark.h>

#include "mcv/metrics.hpp"
#include "mcv/moments.hpp"
#include "mcv/rng.hpp"
#include "mcv/spdlinalg.hpp"

namespace {

using namespace mcv;

DataSet make_data(Index N, Index n) {
  RandomStream rng(kDefaultSeed, stream_id(0xBE, static_cast<std::uint32_t>(n)));
  Matrix x(N, n);
  for (Index i = 0; i < N; ++i) {
    for (Index j = 0; j < n; ++j) x(i, j) = 2.0 + rng.normal();
  }
  return DataSet(std::move(x));
}

Matrix make_spd(Index n) {
  RandomStream rng(kDefaultSeed, stream_id(0xBF, static_cast<std::uint32_t>(n)));
  Matrix a(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) a(i, j) = rng.normal();
  }
  return a * a.transpose() + static_cast<double>(n) * Matrix::Identity(n, n);
}

void BM_G2PairwiseDoubleSum(benchmark::State& state) {
  const DataSet d = make_data(state.range(0), 10);
  for (auto _ : state) benchmark::DoNotOptimize(g2_pairwise(d, PairwiseMethod::double_sum).value);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_G2PairwiseDoubleSum)->RangeMultiplier(2)->Range(128, 1024)->Complexity(benchmark::oNSquared);

void BM_G2PairwiseTrace(benchmark::State& state) {
  const DataSet d = make_data(state.range(0), 10);
  for (auto _ : state) benchmark::DoNotOptimize(g2_pairwise(d, PairwiseMethod::trace).value);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_G2PairwiseTrace)->RangeMultiplier(2)->Range(128, 1024)->Complexity(benchmark::oN);

void BM_TCoefficientPartitions(benchmark::State& state) {
  const DataSet d = make_data(512, 10);
  PairwiseOptions options;
  options.partitions = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(t_coefficient(d, options).value);
}
BENCHMARK(BM_TCoefficientPartitions)->Arg(1)->Arg(2)->Arg(4)->UseRealTime();

void BM_Gq(benchmark::State& state) {
  const DataSet d = make_data(512, 10);
  const double q = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gq(d, q).value);
}
BENCHMARK(BM_Gq)->Arg(2)->Arg(3)->Arg(64);

void BM_SymEigen(benchmark::State& state) {
  const Matrix s = make_spd(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(linalg::sym_eigen(s).values.data());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SymEigen)->RangeMultiplier(2)->Range(8, 128)->Complexity(benchmark::oNCubed);

void BM_Cholesky(benchmark::State& state) {
  const Matrix s = make_spd(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(linalg::cholesky(s).lower.data());
}
BENCHMARK(BM_Cholesky)->RangeMultiplier(2)->Range(8, 128);

void BM_EstimateMoments(benchmark::State& state) {
  const DataSet d = make_data(500, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_moments(d).cov.data());
}
BENCHMARK(BM_EstimateMoments)->Arg(10)->Arg(50)->Arg(90);

}  // namespace

BENCHMARK_MAIN();
