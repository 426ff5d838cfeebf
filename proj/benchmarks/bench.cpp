#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "vqcd/corrstats.hpp"
#include "vqcd/detector.hpp"
#include "vqcd/rng.hpp"
#include "vqcd/vdensity.hpp"

namespace {

vqcd::DataBlock gaussian_block(std::size_t n, std::size_t p) {
  vqcd::DataBlock b(n, p);
  auto rng = vqcd::rng::make_stream(17);
  std::normal_distribution<double> normal;
  for (auto& x : b.values) x = normal(rng);
  return b;
}

void bm_summary_statistic(benchmark::State& state) {
  const auto b = gaussian_block(10, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(vqcd::summary_statistic(b, 1).v);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_summary_statistic)->Range(32, 512)->Complexity();

void bm_t_integral(benchmark::State& state) {
  double rho = 0.0;
  for (auto _ : state) {
    rho += 1e-6;
    if (rho > 0.99) rho = 0.0;
    benchmark::DoNotOptimize(vqcd::t_integral(rho, 10));
  }
}
BENCHMARK(bm_t_integral);

void bm_sample_v(benchmark::State& state) {
  const vqcd::ModelParams mp(10, 100, 1);
  auto rng = vqcd::rng::make_stream(18);
  for (auto _ : state)
    benchmark::DoNotOptimize(vqcd::sample_v(mp, 2.9, rng));
}
BENCHMARK(bm_sample_v);

void bm_glr_step(benchmark::State& state) {
  const vqcd::ModelParams mp(10, 100, 1);
  vqcd::GlrConfig cfg;
  cfg.threshold_a = 1e18;
  cfg.window = static_cast<std::size_t>(state.range(0));
  vqcd::GlrDetector det(cfg, mp);
  auto rng = vqcd::rng::make_stream(19);
  for (auto _ : state) det.step(vqcd::sample_v(mp, 1.0, rng));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_glr_step)->Range(16, 256)->Complexity();

}  // namespace

BENCHMARK_MAIN();
