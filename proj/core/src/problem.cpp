#include "ferero/problem.hpp"

#include <cmath>
#include <memory>

#include <Eigen/Dense>

namespace ferero {

Preference Preference::identity(Index num_objectives) {
  Preference pref;
  pref.cone_a = Matrix::Identity(num_objectives, num_objectives);
  pref.ineq_mat = Matrix(0, num_objectives);
  pref.ineq_vec = Vector(0);
  pref.eq_mat = Matrix(0, num_objectives);
  pref.eq_vec = Vector(0);
  return pref;
}

void Preference::validate() const {
  const Index m = cone_a.cols();
  detail::require(cone_a.rows() == m, "preference: cone matrix must be square");
  detail::require(ineq_mat.cols() == m || ineq_mat.rows() == 0,
                  "preference: inequality matrix has wrong column count");
  detail::require(eq_mat.cols() == m || eq_mat.rows() == 0,
                  "preference: equality matrix has wrong column count");
  detail::require(ineq_vec.size() == ineq_mat.rows(),
                  "preference: inequality offset has wrong size");
  detail::require(eq_vec.size() == eq_mat.rows(),
                  "preference: equality offset has wrong size");
  if (ineq_gain <= 0.0 || eq_gain <= 0.0)
    throw Error("preference: constraint gains must be strictly positive");

  Eigen::FullPivLU<Matrix> lu(cone_a);
  if (lu.rank() != m) throw ConeError("preference: cone matrix is rank deficient");
  if (eq_mat.rows() > 0) {
    Eigen::FullPivLU<Matrix> lu_eq(eq_mat);
    if (lu_eq.rank() != eq_mat.rows())
      throw Error("preference: equality matrix must have full row rank");
  }
}

std::pair<Vector, Vector> eval_constraints(const Preference& pref,
                                           const Vector& f) {
  detail::require(f.size() == pref.num_objectives(),
                  "eval_constraints: objective point has wrong size");
  Vector g = pref.ineq_mat * f + pref.ineq_vec;
  Vector h = pref.eq_mat * f + pref.eq_vec;
  return {std::move(g), std::move(h)};
}

Problem synthetic_concave(Index decision_dim) {
  if (decision_dim < 1) throw Error("synthetic_concave: q must be >= 1");
  const Index q = decision_dim;
  const Vector center =
      Vector::Constant(q, 1.0 / std::sqrt(static_cast<double>(q)));

  auto objectives = [center](const Vector& theta) {
    Vector f(2);
    f(0) = 1.0 - std::exp(-(theta - center).squaredNorm());
    f(1) = 1.0 - std::exp(-(theta + center).squaredNorm());
    return f;
  };
  auto jacobian = [center, q](const Vector& theta) {
    Matrix jac(q, 2);
    const Vector dm = theta - center;
    const Vector dp = theta + center;
    jac.col(0) = 2.0 * std::exp(-dm.squaredNorm()) * dm;
    jac.col(1) = 2.0 * std::exp(-dp.squaredNorm()) * dp;
    return jac;
  };
  return Problem(q, 2, objectives, jacobian, {}, "synthetic_concave");
}

Problem finite_sum_problem(Index decision_dim, Index num_objectives,
                           std::vector<FiniteSumComponent> components) {
  if (components.empty())
    throw Error("finite_sum_problem: component list is empty");
  auto shared = std::make_shared<std::vector<FiniteSumComponent>>(
      std::move(components));
  const auto n = static_cast<double>(shared->size());

  auto objectives = [shared, num_objectives, n](const Vector& theta) {
    Vector sum = Vector::Zero(num_objectives);
    for (const auto& c : *shared) sum += c.objectives(theta);
    return Vector(sum / n);
  };
  auto jacobian = [shared, decision_dim, num_objectives, n](const Vector& theta) {
    Matrix sum = Matrix::Zero(decision_dim, num_objectives);
    for (const auto& c : *shared) sum += c.jacobian(theta);
    return Matrix(sum / n);
  };
  auto sampler = [shared](const Vector& theta, RandomStream& rng) {
    const auto idx = rng.below(shared->size());
    const auto& c = (*shared)[idx];
    return SampleEval{c.objectives(theta), c.jacobian(theta)};
  };
  return Problem(decision_dim, num_objectives, objectives, jacobian, sampler,
                 "finite_sum");
}

}  // namespace ferero
