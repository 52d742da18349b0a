#include <benchmark/benchmark.h>

#include "paramp/paramp.hpp"

namespace {

const paramp::SqueezeSpec kWork(2.0, 0.0, 8e-3);

void BM_UhlmannFidelity(benchmark::State& state) {
  const paramp::Mat4 a = paramp::truncated_covariance(kWork, 0.02);
  const paramp::Mat4 b = paramp::truncated_covariance(kWork, 0.021);
  for (auto _ : state) benchmark::DoNotOptimize(paramp::uhlmann_fidelity(a, b));
}
BENCHMARK(BM_UhlmannFidelity);

void BM_QfiNumeric(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(paramp::qfi_two_mode_numeric(kWork, 0.02));
}
BENCHMARK(BM_QfiNumeric);

void BM_QfiSingleMode(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(paramp::qfi_single_mode(kWork, 0.02));
}
BENCHMARK(BM_QfiSingleMode);

void BM_Sweep(benchmark::State& state) {
  paramp::SweepSpec spec;
  const auto n = static_cast<std::size_t>(state.range(0));
  spec.axis(paramp::SweepVar::r) = paramp::Axis{0.0, 2.0, n, true};
  spec.axis(paramp::SweepVar::theta) = paramp::Axis{0.0, paramp::constants::kTwoPi, n, false};
  for (auto _ : state) benchmark::DoNotOptimize(paramp::run_sweep(spec, 1));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(BM_Sweep)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_LogLikelihood(benchmark::State& state) {
  paramp::Rng rng(42);
  const auto xs = paramp::sample_heterodyne(paramp::CovMat(paramp::truncated_covariance(kWork, 0.02)),
                                            static_cast<std::size_t>(state.range(0)), rng);
  const auto data = paramp::HeterodyneData::from(xs);
  for (auto _ : state) benchmark::DoNotOptimize(paramp::log_likelihood(data, kWork, 0.021));
}
BENCHMARK(BM_LogLikelihood)->Arg(1000);

void BM_Trial(benchmark::State& state) {
  paramp::SimConfig c;
  c.m = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(paramp::run_trial(c, i++));
}
BENCHMARK(BM_Trial)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
