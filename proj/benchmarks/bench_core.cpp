#include <benchmark/benchmark.h>

#include <snc/channel.hpp>
#include <snc/rates.hpp>
#include <snc/scheme.hpp>
#include <snc/sim.hpp>

namespace {

void BM_SampleNoise(benchmark::State& state) {
  auto cov = snc::bc_noise_cov(snc::BcSpec(1.0, 2.0, 0.5, 1.0));
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cov.sample(n, seed++));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_SampleNoise)->Arg(1024)->Arg(16384);

void BM_BuildAndAnalyzeBc2(benchmark::State& state) {
  snc::BcSpec spec(1.0, 1.0, -1.0, 4.0);
  const int eta = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto scheme = snc::build_bc2_scheme(spec, {1.0, 1.0, eta});
    auto eq = snc::equivalent_channel(scheme, snc::bc_noise_cov(spec));
    benchmark::DoNotOptimize(eq.rate(0));
  }
}
BENCHMARK(BM_BuildAndAnalyzeBc2)->Arg(4)->Arg(8)->Arg(16);

void BM_KUserScheme(benchmark::State& state) {
  snc::KUserSpec spec({1.0, -1.0, 2.0, 0.5}, 40.0);
  const int eta = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto scheme = snc::build_kuser_scheme(spec, eta);
    auto eq = snc::equivalent_channel(scheme, snc::kuser_noise_cov(spec));
    benchmark::DoNotOptimize(eq.rate(0));
  }
}
BENCHMARK(BM_KUserScheme)->Arg(4)->Arg(8);

void BM_RunSimBc2(benchmark::State& state) {
  snc::BcSpec spec(1.0, 1.0, -1.0, 4.0);
  auto scheme = snc::build_bc2_scheme(spec, {1.0, 1.0, 3});
  auto cov = snc::bc_noise_cov(spec);
  const long trials = state.range(0);
  std::uint64_t seed = 7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(snc::run_sim(scheme, cov, trials, seed++));
  }
  state.SetItemsProcessed(state.iterations() * trials);
}
BENCHMARK(BM_RunSimBc2)->Arg(1000)->Arg(10000);

void BM_OptimizeSumRate(benchmark::State& state) {
  snc::BcSpec spec(1.0, 2.0, -0.9, 1e4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(snc::optimize_bc2_sum_rate(spec).sum);
  }
}
BENCHMARK(BM_OptimizeSumRate);

void BM_ScheduleParams(benchmark::State& state) {
  snc::ScheduleSpec sched(-1, 0.5, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        snc::schedule_params(1.0, 1.0, sched, 1e6, 0.3));
  }
}
BENCHMARK(BM_ScheduleParams);

}  // namespace

BENCHMARK_MAIN();
