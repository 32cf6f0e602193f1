#include <benchmark/benchmark.h>

#include <random>

#include "qportrait/measurement.hpp"
#include "qportrait/multiqubit.hpp"
#include "qportrait/numkernel.hpp"

using namespace qp;

namespace {

ComplexMatrix random_hermitian(int n, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(g(engine), g(engine));
  return (m + m.adjoint()) / 2.0;
}

DensityMatrix random_density(int n, std::uint64_t seed) {
  const ComplexMatrix h = random_hermitian(n, seed);
  ComplexMatrix rho = h * h.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix((rho + rho.adjoint()) / 2.0);
}

void BM_HermitianEig(benchmark::State& state) {
  const ComplexMatrix h = random_hermitian(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(h));
}
BENCHMARK(BM_HermitianEig)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Arg(64);

void BM_MeasureSeries(benchmark::State& state) {
  const DensityMatrix rho = random_density(8, 2);
  const auto roi = ResolutionOfIdentity::computational(8);
  for (auto _ : state) {
    RandomStream rng(42);
    benchmark::DoNotOptimize(measure_series(rho, roi, static_cast<std::uint64_t>(state.range(0)), rng));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MeasureSeries)->Arg(1000)->Arg(100000);

void BM_MeasureSeriesParallel(benchmark::State& state) {
  const DensityMatrix rho = random_density(8, 3);
  const auto roi = ResolutionOfIdentity::computational(8);
  for (auto _ : state)
    benchmark::DoNotOptimize(measure_series_parallel(rho, roi, 100000, 42, static_cast<unsigned>(state.range(0))));
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_MeasureSeriesParallel)->Arg(1)->Arg(4)->UseRealTime();

void BM_ReconstructExact(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const DensityMatrix rho = random_density(1 << p, 4);
  std::map<std::string, std::vector<double>> tables;
  for (const auto& axes : axis_settings(p)) tables[axes] = counter_distribution(rho, CounterConfiguration::from_axes(axes));
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct_state_exact(p, tables));
}
BENCHMARK(BM_ReconstructExact)->DenseRange(1, 4);

void BM_ReconstructSampled(benchmark::State& state) {
  const DensityMatrix rho = random_density(8, 5);
  const auto runs = run_campaign(rho, campaign_settings(3, 10000, 42));
  std::map<std::string, FrequencyTable> tables;
  for (const auto& [axes, s] : runs) tables.emplace(axes, s.table);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct_state(3, tables));
}
BENCHMARK(BM_ReconstructSampled);

void BM_ProjectorFromBits(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  std::uint64_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(projector_from_bits(k, p));
    k = (k + 1) % (std::uint64_t{1} << p);
  }
}
BENCHMARK(BM_ProjectorFromBits)->DenseRange(2, 6, 2);

void BM_PauliCoefficients(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const DensityMatrix rho = random_density(1 << p, 6);
  for (auto _ : state) benchmark::DoNotOptimize(pauli_coefficients(rho));
}
BENCHMARK(BM_PauliCoefficients)->DenseRange(2, 6, 2);

}  // namespace

BENCHMARK_MAIN();
