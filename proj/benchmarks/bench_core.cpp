#include <benchmark/benchmark.h>

#include <vector>

#include "psdme/bands.hpp"
#include "psdme/berk_jones.hpp"
#include "psdme/fcr.hpp"
#include "psdme/rng.hpp"

namespace {

using namespace psdme;

std::vector<double> uniform_sample(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> u(n);
  for (double& v : u) v = rng.open01();
  return u;
}

void BM_KolmogorovDistance(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const EmpiricalCdf ecdf(uniform_sample(n, 1));
  const TrueCdf truth = TrueCdf::uniform01();
  for (auto _ : state) {
    benchmark::DoNotOptimize(kolmogorov_distance(ecdf, truth));
  }
}
BENCHMARK(BM_KolmogorovDistance)->Arg(100)->Arg(1000)->Arg(10000);

void BM_BjStatistic(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const EmpiricalCdf ecdf(uniform_sample(n, 2));
  const TrueCdf truth = TrueCdf::uniform01();
  for (auto _ : state) {
    benchmark::DoNotOptimize(bj_statistic(ecdf, truth));
  }
}
BENCHMARK(BM_BjStatistic)->Arg(100)->Arg(1000);

void BM_NoncrossingProbability(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> lower(n);
  std::vector<double> upper(n);
  const double nd = static_cast<double>(n);
  for (std::size_t k = 1; k <= n; ++k) {
    lower[k - 1] = kl_invert(static_cast<double>(k) / nd, 0.15).first;
    upper[k - 1] = kl_invert(static_cast<double>(k - 1) / nd, 0.15).second;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(noncrossing_probability(lower, upper));
  }
}
BENCHMARK(BM_NoncrossingProbability)->Arg(50)->Arg(200)->Arg(500);

void BM_BjNullQuantile(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bj_null_quantile(n, 0.1));
  }
}
BENCHMARK(BM_BjNullQuantile)->Arg(20)->Arg(50)->Arg(100);

void BM_SimulateFcr(benchmark::State& state) {
  const Scenario scenario = gaussian_grid_scenario(50, 40);
  PipelineOptions opt;
  opt.method = BandMethod::PsDme;
  opt.selection = SelectionRule::top_m(10);
  opt.delta = 0.1;
  opt.seed = 9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_fcr(scenario, opt, 50));
  }
}
BENCHMARK(BM_SimulateFcr);

}  // namespace

BENCHMARK_MAIN();
