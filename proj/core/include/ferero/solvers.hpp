#ifndef FERERO_SOLVERS_HPP_
#define FERERO_SOLVERS_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "ferero/problem.hpp"
#include "ferero/random.hpp"
#include "ferero/subproblem.hpp"
#include "ferero/types.hpp"

namespace ferero {

enum class SolverVariant { meta, single_loop, stochastic, linear_scalarization };

enum class InitKind { gaussian, easy_near_pf, hard_near_pf, explicit_theta };

struct SolverConfig {
  SolverVariant variant = SolverVariant::meta;

  double alpha = 0.05;            // theta step size
  bool alpha_decay_sqrt = false;  // alpha_t = alpha / sqrt(t+1)
  // multiplier step for single-loop/stochastic; kept proportional to
  // alpha_t when the alpha schedule decays
  double gamma = 0.01;

  Index iterations = 100;  // T
  PgdSettings inner{};     // meta-solver inner PGD settings

  // early stop threshold on the run's convergence measure
  // (meta: kkt residual; single-loop/stochastic: ||d||^2 + ||h||^2)
  double stop_residual = 0.0;

  std::uint64_t seed = 0;
  MultiplierDomain domain = MultiplierDomain::adaptive;

  Index record_every = 1;
  bool record_theta = false;

  InitKind init = InitKind::gaussian;
  std::optional<Vector> theta0;  // used when init == explicit_theta

  Vector ls_weights;  // linear scalarization only; >= 0, sums to 1
};

/// Per-iterate diagnostics. The kkt field is the exact residual for the
/// meta solver and the plug-in approximation (current multipliers instead
/// of optimal ones) for the other variants.
struct IterateRecord {
  Index t = 0;
  Vector f;
  double norm_d = 0;
  double ineq_violation_l1 = 0;  // ||[g]_+||_1
  double eq_violation_l1 = 0;    // ||h||_1
  double kkt = 0;
  std::optional<Vector> theta;
};

struct RunReport {
  std::vector<IterateRecord> trajectory;
  Vector theta_final;
  Vector f_final;
  double final_kkt = 0;  // exact residual from a full subproblem solve
  double final_eq_violation_l1 = 0;
  double final_ineq_violation_l1 = 0;
  Index iterations_used = 0;
  double wall_seconds = 0;
  SolverConfig config;
};

/// Draws the initial iterate for the configured initialization style.
Vector initial_theta(const Problem& problem, const SolverConfig& cfg,
                     RandomStream& rng);

/// Double-loop solver: each iteration solves the direction subproblem with
/// projected gradient descent to (inner.tol, inner.max_iters), then steps
/// theta. The adaptive domain is re-checked every iteration; a violation
/// aborts the run with DomainError rather than silently switching domains.
RunReport run_meta(const Problem& problem, const Preference& pref,
                   const SolverConfig& cfg);

/// Single-loop solver: alternates one theta step with one projected
/// gradient step on the multipliers. Supports equality constraints only
/// (throws UnsupportedConstraintError when the preference has inequalities)
/// and always uses the simplified multiplier domain.
RunReport run_single_loop(const Problem& problem, const Preference& pref,
                          const SolverConfig& cfg);

/// Stochastic single-loop solver with double sampling: the theta step uses
/// one Jacobian sample, the multiplier-gradient product uses two independent
/// samples so the estimate is unbiased. All randomness derives from
/// cfg.seed.
RunReport run_stochastic(const Problem& problem, const Preference& pref,
                         const SolverConfig& cfg);

/// Gradient descent on weights . F. Preference constraints are evaluated
/// for diagnostics but not enforced.
RunReport run_linear_scalarization(const Problem& problem,
                                   const Vector& weights,
                                   const SolverConfig& cfg,
                                   const Preference& pref);

/// Dispatch on cfg.variant (linear scalarization takes cfg.ls_weights).
RunReport run(const Problem& problem, const Preference& pref,
              const SolverConfig& cfg);

}  // namespace ferero

#endif  // FERERO_SOLVERS_HPP_
