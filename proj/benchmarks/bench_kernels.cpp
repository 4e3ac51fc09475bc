#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "kacsim/algorithms.hpp"
#include "kacsim/collision.hpp"
#include "kacsim/metrics.hpp"
#include "kacsim/perfect_sampler.hpp"
#include "kacsim/rng.hpp"

namespace {

void BM_PhiloxU64(benchmark::State& state) {
  kacsim::RngStream s(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(s.next_u64());
}
BENCHMARK(BM_PhiloxU64);

void BM_Poisson(benchmark::State& state) {
  kacsim::RngStream s(1, 0);
  const double mean = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kacsim::poisson(s, mean));
}
BENCHMARK(BM_Poisson)->Arg(3)->Arg(44)->Arg(1000);

void BM_KacWalkStep(benchmark::State& state) {
  kacsim::RngStream s(2, 0);
  auto e = kacsim::Ensemble::sample_initial(static_cast<std::size_t>(state.range(0)), s);
  for (auto _ : state) kacsim::kac_walk_step(e, s);
  benchmark::DoNotOptimize(e[0]);
}
BENCHMARK(BM_KacWalkStep)->Arg(50)->Arg(1000);

// One replicate at t = 2 on the Krook-Wu rate.
void BM_Run(benchmark::State& state) {
  const auto a = static_cast<kacsim::Algorithm>(state.range(0));
  const kacsim::SimConfig cfg{a, static_cast<std::size_t>(state.range(1)), kacsim::kKrookWuLambda, 2.0, 0.01};
  std::uint64_t r = 0;
  for (auto _ : state) {
    kacsim::RngStream s(3, r++);
    benchmark::DoNotOptimize(kacsim::run(cfg, s).v1);
  }
  state.SetLabel(std::string(kacsim::to_string(a)));
}
BENCHMARK(BM_Run)->ArgsProduct({{0, 1, 2, 3}, {5, 50, 1000}});

void BM_CftpDraw(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t r = 0;
  for (auto _ : state) {
    const auto d = kacsim::cftp_sample(n, kacsim::default_energy(n), 1e-6, kacsim::RngStream(4, r++));
    benchmark::DoNotOptimize(d.velocity_vector.data());
  }
}
BENCHMARK(BM_CftpDraw)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_Histogram(benchmark::State& state) {
  kacsim::RngStream s(5, 0);
  std::vector<double> xs(100000);
  for (auto& x : xs) x = kacsim::standard_normal(s);
  for (auto _ : state) benchmark::DoNotOptimize(kacsim::build_histogram(xs, kacsim::kCanonicalBins).total());
}
BENCHMARK(BM_Histogram);

}  // namespace

BENCHMARK_MAIN();
