#ifndef FERERO_SUBPROBLEM_HPP_
#define FERERO_SUBPROBLEM_HPP_

#include "ferero/problem.hpp"
#include "ferero/types.hpp"

namespace ferero {

/// Feasible set of the dual multipliers for the objective block:
///   adaptive:   {v >= 0 : v . (A f) = sum(A f)}  (requires A f > 0)
///   simplified: the unit simplex {v >= 0 : sum(v) = 1}
enum class MultiplierDomain { adaptive, simplified };

/// Dual multipliers, one block per constraint group. The objective block is
/// confined to its simplex, the inequality block to the non-negative
/// orthant, the equality block is free.
struct Multipliers {
  Vector obj;   // length M
  Vector ineq;  // length M_g
  Vector eq;    // length M_h

  Vector stacked() const;
  static Multipliers split(const Vector& stacked, Index m, Index mg, Index mh);
};

/// Frozen per-iterate data for the direction subproblem
///
///   min_d  max-scaled objective decrease + (1/2)||d||^2
///
/// in its dual form over the multipliers:
///
///   phi(v) = (1/2) || J S^T v ||^2 - c_g v_g . g - c_h v_h . h
///
/// with S = [A; ineq_mat; eq_mat] stacked along rows. Caches the Gram matrix
/// of J S^T so multiplier iterations cost O((M+M_g+M_h)^2).
class SubproblemContext {
 public:
  SubproblemContext(Matrix jacobian, Vector objective_values,
                    const Preference& pref, MultiplierDomain domain);

  Index decision_dim() const { return jacobian_.rows(); }
  Index num_objectives() const { return f_.size(); }
  Index num_ineq() const { return g_.size(); }
  Index num_eq() const { return h_.size(); }
  Index num_multipliers() const { return stacked_mat_.rows(); }

  const Matrix& jacobian() const { return jacobian_; }
  const Vector& objective_values() const { return f_; }
  const Vector& ineq_values() const { return g_; }
  const Vector& eq_values() const { return h_; }
  MultiplierDomain domain() const { return domain_; }
  double ineq_gain() const { return ineq_gain_; }
  double eq_gain() const { return eq_gain_; }

  /// S = [A; ineq_mat; eq_mat], (M+M_g+M_h) x M.
  const Matrix& stacked_mat() const { return stacked_mat_; }
  /// J S^T, q x (M+M_g+M_h); the direction is -(this) * stacked multipliers.
  const Matrix& direction_mat() const { return direction_mat_; }
  /// Gram matrix (J S^T)^T (J S^T).
  const Matrix& gram() const { return gram_; }
  /// Linear term [0; c_g g; c_h h] of the dual gradient.
  const Vector& linear_term() const { return linear_term_; }

  /// Weights and budget of the objective-block simplex.
  const Vector& simplex_weights() const { return weights_; }
  double simplex_budget() const { return budget_; }

  /// Equal-entry feasible start: obj block constant on its simplex,
  /// other blocks zero.
  Multipliers initial_multipliers() const;

 private:
  Matrix jacobian_;
  Vector f_, g_, h_;
  MultiplierDomain domain_;
  double ineq_gain_, eq_gain_;
  Matrix stacked_mat_, direction_mat_, gram_;
  Vector linear_term_, weights_;
  double budget_;
};

/// Solution of one direction subproblem.
struct SubproblemResult {
  Multipliers multipliers;
  Vector direction;  // d* = -J S^T v*, unique even when v* is not
  double psi = 0;    // optimal value of the primal subproblem = -phi
  double phi = 0;    // dual value at v*
  double kkt = 0;    // stationarity + complementary slackness + feasibility
  int inner_iters = 0;
};

/// Dual objective value; the multipliers must lie in the declared domain
/// within 1e-8 (throws DomainError otherwise).
double phi_value(const Multipliers& lam, const SubproblemContext& ctx);

/// Dual gradient S J^T J S^T v - [0; c_g g; c_h h]. No domain check.
Vector phi_gradient(const Multipliers& lam, const SubproblemContext& ctx);

/// Euclidean projection onto {v >= 0 : w . v = b} for positive weights w
/// and budget b. Thresholding v_i = max(0, p_i - mu w_i) with the pivot mu
/// located by sorting p_i/w_i; KKT-exact up to 1e-12.
Vector project_weighted_simplex(const Vector& p, const Vector& w, double b);

/// Blockwise projection onto the multiplier domain. The blocks are
/// separable, so the joint projection is exact.
Multipliers project_multipliers(const Multipliers& lam,
                                const SubproblemContext& ctx);

struct PgdSettings {
  double step = 0.1;    // gamma
  int max_iters = 250;  // K
  double tol = 1e-5;    // on the projected-gradient norm
};

/// Projected gradient descent on phi from the given feasible start. Stops
/// when ||v - P(v - gamma grad)|| / gamma <= tol or after max_iters. If phi
/// increases between iterations the step is halved once. Throws
/// NumericalError on NaN/inf iterates.
SubproblemResult solve_pgd(const SubproblemContext& ctx,
                           const Multipliers& start, const PgdSettings& s);

/// solve_pgd from the default equal-entry start.
SubproblemResult solve_pgd(const SubproblemContext& ctx,
                           const PgdSettings& s = {});

/// ||d*||^2 + v_g . [-g]_+ + ||[g]_+||_1 + ||h||_1; zero exactly at
/// first-order KKT points.
double kkt_residual(const SubproblemContext& ctx, const SubproblemResult& res);

}  // namespace ferero

#endif  // FERERO_SUBPROBLEM_HPP_
