#include "ferero/bench.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "ferero/metrics.hpp"

namespace ferero {

std::vector<Vector> uniform_preference_rays(Index n, double angle_lo,
                                            double angle_hi) {
  if (n < 1) throw Error("uniform_preference_rays: need at least one ray");
  if (!(0.0 < angle_lo && angle_lo <= angle_hi &&
        angle_hi < std::numbers::pi / 2.0))
    throw Error("uniform_preference_rays: angles must satisfy 0 < lo <= hi < pi/2");

  std::vector<Vector> rays;
  rays.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const double angle =
        (n == 1) ? 0.5 * (angle_lo + angle_hi)
                 : angle_lo + (angle_hi - angle_lo) * static_cast<double>(i) /
                                  static_cast<double>(n - 1);
    Vector ray(2);
    ray << std::cos(angle), std::sin(angle);
    rays.push_back(std::move(ray));
  }
  return rays;
}

SuiteReport run_suite(const Problem& problem,
                      const std::vector<Preference>& preferences,
                      const SolverConfig& base_cfg, Index parallelism,
                      const Vector& hv_ref) {
  if (preferences.empty()) throw Error("run_suite: empty preference list");
  if (parallelism < 1) throw Error("run_suite: parallelism must be >= 1");

  const auto n = preferences.size();
  SuiteReport suite;
  suite.runs.resize(n);
  suite.hv_ref = hv_ref;

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      SolverConfig cfg = base_cfg;
      cfg.seed = base_cfg.seed + static_cast<std::uint64_t>(i);
      try {
        suite.runs[i].report = run(problem, preferences[i], cfg);
      } catch (const std::exception& e) {
        suite.runs[i].error = e.what();
      }
    }
  };

  const auto workers =
      static_cast<std::size_t>(std::min<Index>(parallelism, static_cast<Index>(n)));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::vector<Vector> finals;
  double kkt_sum = 0.0;
  std::size_t ok = 0;
  suite.alignments.reserve(n);
  for (const auto& outcome : suite.runs) {
    if (outcome.ok()) {
      finals.push_back(outcome.report->f_final);
      suite.alignments.push_back(outcome.report->final_eq_violation_l1);
      kkt_sum += outcome.report->final_kkt;
      ++ok;
    } else {
      suite.alignments.push_back(std::numeric_limits<double>::quiet_NaN());
    }
  }
  suite.hypervolume = finals.empty() ? 0.0 : hypervolume(finals, hv_ref);
  suite.mean_kkt = ok > 0 ? kkt_sum / static_cast<double>(ok) : 0.0;
  return suite;
}

}  // namespace ferero
