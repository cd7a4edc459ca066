#include <benchmark/benchmark.h>

#include "weaveq/correlations.hpp"
#include "weaveq/ghz_analytic.hpp"
#include "weaveq/partitions.hpp"
#include "weaveq/qcore.hpp"

namespace corr = weaveq::correlations;
namespace ghz = weaveq::ghz;
namespace qc = weaveq::qcore;

static void BM_DenseEntropy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto rho = qc::random_density(std::vector<int>(n, 2), 4, 1);
  for (auto _ : state)
    benchmark::DoNotOptimize(qc::von_neumann_entropy(rho));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DenseEntropy)->DenseRange(6, 10)->Complexity();

static void BM_PartialTraceHalf(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto rho = qc::make_ghz_state(n, 0.3);
  std::vector<int> keep(n / 2);
  for (int i = 0; i < n / 2; ++i) keep[i] = i + 1;
  const qc::SiteSubset subset(keep);
  for (auto _ : state)
    benchmark::DoNotOptimize(qc::partial_trace(rho, subset));
}
BENCHMARK(BM_PartialTraceHalf)->DenseRange(6, 12)->Unit(benchmark::kMicrosecond);

static void BM_ExactProfile(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto rho = qc::random_density(std::vector<int>(n, 2), 3, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        corr::correlation_profile(rho, corr::Mode::exact_minimization));
}
BENCHMARK(BM_ExactProfile)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

static void BM_NeuralComplexity(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto rho = qc::random_density(std::vector<int>(n, 2), 3, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(corr::neural_complexity(rho));
}
BENCHMARK(BM_NeuralComplexity)->DenseRange(4, 8)->Unit(benchmark::kMillisecond);

static void BM_SetPartitionStream(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    long count = 0;
    corr::for_each_set_partition(n, n, [&](const corr::SetPartition&) {
      ++count;
      return true;
    });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_SetPartitionStream)->DenseRange(6, 10);

static void BM_GhzSweepPoint(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const auto uniform = corr::make_weight_scheme(corr::WeightKind::uniform,
                                                static_cast<int>(n));
  const auto linear = corr::make_weight_scheme(corr::WeightKind::linear,
                                               static_cast<int>(n));
  for (auto _ : state) {
    const auto rows = ghz::ghz_sweep(n, {0.37}, {uniform, linear}, false);
    benchmark::DoNotOptimize(rows);
  }
}
BENCHMARK(BM_GhzSweepPoint)->Arg(1000)->Arg(20000)->Arg(100000)
    ->Unit(benchmark::kMicrosecond);

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
