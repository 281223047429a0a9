#ifndef FERERO_BENCH_HPP_
#define FERERO_BENCH_HPP_

#include <string>
#include <vector>

#include "ferero/problem.hpp"
#include "ferero/solvers.hpp"
#include "ferero/types.hpp"

namespace ferero {

/// n unit rays (cos a, sin a) with angles equally spaced over
/// [angle_lo, angle_hi] inclusive of both endpoints; a single ray uses the
/// midpoint. Requires 0 < angle_lo <= angle_hi < pi/2.
std::vector<Vector> uniform_preference_rays(Index n, double angle_lo,
                                            double angle_hi);

/// Result of one suite member: either a report or the error that aborted it.
struct RunOutcome {
  std::optional<RunReport> report;
  std::string error;

  bool ok() const { return report.has_value(); }
};

struct SuiteReport {
  std::vector<RunOutcome> runs;       // in preference order
  std::vector<double> alignments;     // final ||h||_1 per run (NaN if failed)
  double hypervolume = 0;             // of the successful final points
  double mean_kkt = 0;                // over successful runs
  Vector hv_ref;
};

/// Runs one solver per preference with independent seeds (base seed + run
/// index), dispatching to a pool of `parallelism` workers. Reports are
/// collected in preference order regardless of completion order, and a
/// failure in one run never touches its siblings. Aggregates the
/// hypervolume of the successful final objective vectors against hv_ref.
SuiteReport run_suite(const Problem& problem,
                      const std::vector<Preference>& preferences,
                      const SolverConfig& base_cfg, Index parallelism,
                      const Vector& hv_ref);

}  // namespace ferero

#endif  // FERERO_BENCH_HPP_
