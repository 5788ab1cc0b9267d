#include <benchmark/benchmark.h>

#include "nhsense/nhsense.hpp"

namespace {

using namespace nhsense;

ChainParams chain(int sites, double amplification) {
  return ChainParams::from_effective(sites, 1.0, amplification);
}

void BM_ChiQuadratureClosedForm(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = chain(n, 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(chi_quadrature(Quadrature::X, Quadrature::X, n, 1, 0.1, p));
  }
}
BENCHMARK(BM_ChiQuadratureClosedForm)->RangeMultiplier(4)->Range(1, 256);

void BM_ResolventOracle(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto m = build_dynamical_matrix(chain(n, 0.3));
  for (auto _ : state) benchmark::DoNotOptimize(resolvent_susceptibility(m, 0.1));
}
BENCHMARK(BM_ResolventOracle)->RangeMultiplier(4)->Range(1, 256);

void BM_LyapunovCovariance(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = chain(n, 0.3);
  const auto m = build_dynamical_matrix(p);
  for (auto _ : state) benchmark::DoNotOptimize(steady_state_covariance(m, NoiseModel{0.5}, p));
}
BENCHMARK(BM_LyapunovCovariance)->RangeMultiplier(4)->Range(1, 64);

void BM_StabilityMargin(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto m = build_dynamical_matrix(chain(n, 0.3));
  for (auto _ : state) benchmark::DoNotOptimize(stability_margin(m));
}
BENCHMARK(BM_StabilityMargin)->RangeMultiplier(4)->Range(1, 256);

void BM_SnrNonpert(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto p = chain(n, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(snr_nonpert(p, 1e-7, 1.0, 5e9));
}
BENCHMARK(BM_SnrNonpert)->Arg(11)->Arg(151)->Arg(301);

void BM_TransientSnr(benchmark::State& state) {
  const auto p = chain(static_cast<int>(state.range(0)), 0.2);
  for (auto _ : state) benchmark::DoNotOptimize(snr_transient_numeric(p, 1e-8, 1e3, 5e9));
}
BENCHMARK(BM_TransientSnr)->Arg(1)->Arg(11)->Arg(31);

}  // namespace

BENCHMARK_MAIN();
