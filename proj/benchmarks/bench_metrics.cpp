#include <benchmark/benchmark.h>

#include <vector>

#include "ferero/metrics.hpp"
#include "ferero/random.hpp"

namespace {

using namespace ferero;

std::vector<Vector> random_front(Index m, int n, RandomStream& rng) {
  std::vector<Vector> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    Vector p(m);
    for (Index j = 0; j < m; ++j) p(j) = rng.uniform(0.05, 0.95);
    pts.push_back(std::move(p));
  }
  return pts;
}

void BM_Hypervolume(benchmark::State& state) {
  RandomStream rng(3);
  const Index m = state.range(0);
  const auto pts = random_front(m, static_cast<int>(state.range(1)), rng);
  const Vector ref = Vector::Ones(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hypervolume(pts, ref));
  }
}
BENCHMARK(BM_Hypervolume)->Args({2, 100})->Args({3, 50})->Args({4, 20});

void BM_PfDistance(benchmark::State& state) {
  Vector f(2);
  f << 0.3, 0.9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pf_distance_synthetic(f));
  }
}
BENCHMARK(BM_PfDistance);

}  // namespace

BENCHMARK_MAIN();
