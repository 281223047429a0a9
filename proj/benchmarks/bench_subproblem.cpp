#include <benchmark/benchmark.h>

#include "ferero/cone.hpp"
#include "ferero/problem.hpp"
#include "ferero/random.hpp"
#include "ferero/solvers.hpp"
#include "ferero/subproblem.hpp"

namespace {

using namespace ferero;

SubproblemContext make_context(Index q, bool with_equality) {
  RandomStream rng(7);
  Matrix jac(q, 2);
  for (Index i = 0; i < q; ++i)
    for (Index j = 0; j < 2; ++j) jac(i, j) = rng.normal();
  Vector f(2);
  f << 0.4, 0.7;

  Preference pref = Preference::identity(2);
  if (with_equality) {
    Vector ray(2);
    ray << 1.0, 1.0;
    auto [mat, vec] = ray_to_equality(ray);
    pref.eq_mat = mat;
    pref.eq_vec = vec;
  }
  return SubproblemContext(jac, f, pref, MultiplierDomain::adaptive);
}

void BM_SolvePgd(benchmark::State& state) {
  const auto ctx = make_context(state.range(0), state.range(1) != 0);
  for (auto _ : state) {
    auto res = solve_pgd(ctx);
    benchmark::DoNotOptimize(res.psi);
  }
}
BENCHMARK(BM_SolvePgd)->Args({20, 0})->Args({20, 1})->Args({200, 1});

void BM_MetaIteration(benchmark::State& state) {
  const Problem problem = synthetic_concave(state.range(0));
  Vector ray(2);
  ray << 1.0, 2.0;
  Preference pref = Preference::identity(2);
  auto [mat, vec] = ray_to_equality(ray);
  pref.eq_mat = mat;
  pref.eq_vec = vec;

  SolverConfig cfg;
  cfg.iterations = 10;
  cfg.record_every = 10;
  for (auto _ : state) {
    auto report = run_meta(problem, pref, cfg);
    benchmark::DoNotOptimize(report.final_kkt);
  }
}
BENCHMARK(BM_MetaIteration)->Arg(20)->Arg(100);

void BM_ProjectWeightedSimplex(benchmark::State& state) {
  const Index n = state.range(0);
  RandomStream rng(11);
  Vector p(n), w(n);
  for (Index i = 0; i < n; ++i) {
    p(i) = rng.normal();
    w(i) = 0.1 + rng.uniform();
  }
  for (auto _ : state) {
    Vector out = project_weighted_simplex(p, w, 1.0);
    benchmark::DoNotOptimize(out.sum());
  }
}
BENCHMARK(BM_ProjectWeightedSimplex)->Arg(4)->Arg(64)->Arg(1024);

}  // namespace
