#ifndef FERERO_PROBLEM_HPP_
#define FERERO_PROBLEM_HPP_

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "ferero/random.hpp"
#include "ferero/types.hpp"

namespace ferero {

/// One stochastic draw: objective values and Jacobian at a fixed point.
struct SampleEval {
  Vector values;    // M
  Matrix jacobian;  // q x M, column m is the gradient of objective m
};

/// A vector-valued minimization problem F: R^q -> R^M with exact Jacobian
/// and, optionally, an unbiased stochastic sampler. Problems are immutable
/// after construction and safe to share across threads; samplers take the
/// caller's random stream so parallel runs never share mutable state.
class Problem {
 public:
  using Evaluator = std::function<Vector(const Vector&)>;
  using JacobianEvaluator = std::function<Matrix(const Vector&)>;
  using Sampler = std::function<SampleEval(const Vector&, RandomStream&)>;

  Problem(Index decision_dim, Index num_objectives, Evaluator objectives,
          JacobianEvaluator jacobian, std::optional<Sampler> sampler = {},
          std::string kind = "custom")
      : q_(decision_dim),
        m_(num_objectives),
        objectives_(std::move(objectives)),
        jacobian_(std::move(jacobian)),
        sampler_(std::move(sampler)),
        kind_(std::move(kind)) {}

  Index decision_dim() const { return q_; }
  Index num_objectives() const { return m_; }

  Vector objectives(const Vector& theta) const {
    detail::require(theta.size() == q_, "objectives: theta has wrong size");
    return objectives_(theta);
  }

  /// q x M Jacobian; column m = gradient of objective m.
  Matrix jacobian(const Vector& theta) const {
    detail::require(theta.size() == q_, "jacobian: theta has wrong size");
    return jacobian_(theta);
  }

  bool has_sampler() const { return sampler_.has_value(); }

  SampleEval sample(const Vector& theta, RandomStream& rng) const {
    if (!sampler_) throw Error("problem has no stochastic sampler");
    return (*sampler_)(theta, rng);
  }

  /// Name tag used by the CLI ("synthetic_concave", "finite_sum", ...).
  const std::string& kind() const { return kind_; }

 private:
  Index q_;
  Index m_;
  Evaluator objectives_;
  JacobianEvaluator jacobian_;
  std::optional<Sampler> sampler_;
  std::string kind_;
};

/// Linear preference constraints in objective space together with the
/// ordering-cone matrix. Inequalities: ineq_mat * F + ineq_vec <= 0.
/// Equalities: eq_mat * F + eq_vec = 0. The gains weight constraint
/// satisfaction against objective improvement in the direction subproblem.
struct Preference {
  Matrix cone_a;    // M x M, full rank; identity = componentwise order
  Matrix ineq_mat;  // M_g x M (may have zero rows)
  Vector ineq_vec;  // M_g
  Matrix eq_mat;    // M_h x M (full row rank when non-empty)
  Vector eq_vec;    // M_h
  double ineq_gain = 1.0;  // c_g > 0
  double eq_gain = 1.0;    // c_h > 0

  /// Unconstrained preference under the componentwise order.
  static Preference identity(Index num_objectives);

  Index num_objectives() const { return cone_a.cols(); }
  Index num_ineq() const { return ineq_mat.rows(); }
  Index num_eq() const { return eq_mat.rows(); }

  /// Validates rank/sign/shape invariants; throws on violation.
  void validate() const;
};

/// Constraint values (g, h) at objective point f:
/// g = ineq_mat * f + ineq_vec, h = eq_mat * f + eq_vec.
std::pair<Vector, Vector> eval_constraints(const Preference& pref,
                                           const Vector& f);

/// The two-objective benchmark with a concave Pareto front:
///   f1 = 1 - exp(-||theta - u||^2), f2 = 1 - exp(-||theta + u||^2),
/// u = (1/sqrt(q)) * ones. Analytic Jacobian.
Problem synthetic_concave(Index decision_dim);

/// Per-component definition for a finite-sum problem.
struct FiniteSumComponent {
  Problem::Evaluator objectives;
  Problem::JacobianEvaluator jacobian;
};

/// Averages the components; the sampler draws one component uniformly,
/// which is unbiased by construction.
Problem finite_sum_problem(Index decision_dim, Index num_objectives,
                           std::vector<FiniteSumComponent> components);

}  // namespace ferero

#endif  // FERERO_PROBLEM_HPP_
