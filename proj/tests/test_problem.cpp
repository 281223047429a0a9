#include <cmath>

#include <doctest.h>

#include "ferero/problem.hpp"
#include "test_support.hpp"

using namespace ferero;
using namespace ferero::testing;

namespace {

// f_xi(theta) = ||theta - anchor||^2 as a finite-sum component (bi-objective:
// second objective uses the negated anchor)
FiniteSumComponent quadratic_component(const Vector& anchor) {
  return FiniteSumComponent{
      [anchor](const Vector& theta) {
        Vector f(2);
        f(0) = (theta - anchor).squaredNorm();
        f(1) = (theta + anchor).squaredNorm();
        return f;
      },
      [anchor](const Vector& theta) {
        Matrix jac(theta.size(), 2);
        jac.col(0) = 2.0 * (theta - anchor);
        jac.col(1) = 2.0 * (theta + anchor);
        return jac;
      }};
}

}  // namespace

TEST_CASE("eval_constraints applies the linear maps") {
  Preference pref = Preference::identity(2);
  pref.eq_mat.resize(1, 2);
  pref.eq_mat << 1.0, -1.0;
  pref.eq_vec = Vector::Zero(1);

  Vector f(2);
  f << 0.3, 0.3;
  auto [g0, h0] = eval_constraints(pref, f);
  CHECK(g0.size() == 0);
  CHECK(h0(0) == doctest::Approx(0.0).epsilon(1e-15));

  f << 0.6321, 0.9817;
  auto [g1, h1] = eval_constraints(pref, f);
  CHECK(h1(0) == doctest::Approx(-0.3496).epsilon(1e-12));

  Preference ineq = Preference::identity(2);
  ineq.ineq_mat.resize(1, 2);
  ineq.ineq_mat << 0.0, 1.0;
  ineq.ineq_vec = Vector::Constant(1, -0.5);
  f << 0.1, 0.7;
  auto [g2, h2] = eval_constraints(ineq, f);
  CHECK(g2(0) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(h2.size() == 0);

  Vector bad(3);
  bad.setZero();
  CHECK_THROWS_AS(eval_constraints(pref, bad), DimensionError);
}

TEST_CASE("synthetic_concave objective values") {
  const Problem problem = synthetic_concave(20);
  CHECK(problem.decision_dim() == 20);
  CHECK(problem.num_objectives() == 2);

  const Vector origin = Vector::Zero(20);
  const Vector f0 = problem.objectives(origin);
  CHECK(f0(0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
  CHECK(f0(1) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));

  const Vector center = Vector::Constant(20, 1.0 / std::sqrt(20.0));
  const Vector fc = problem.objectives(center);
  CHECK(fc(0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fc(1) == doctest::Approx(1.0 - std::exp(-4.0)).epsilon(1e-12));

  CHECK_THROWS(synthetic_concave(0));
}

TEST_CASE("analytic Jacobians match central differences") {
  RandomStream rng(42);
  for (Index q : {4, 20}) {
    const Problem problem = synthetic_concave(q);
    for (int trial = 0; trial < 20; ++trial) {
      const Vector theta = random_gaussian(rng, q);
      const Matrix analytic = problem.jacobian(theta);
      const Matrix fd = fd_jacobian(problem, theta);
      CHECK(rel_error(analytic, fd) <= 1e-5);
    }
  }
}

TEST_CASE("finite sum with one component has a zero-variance sampler") {
  Vector anchor(3);
  anchor << 1.0, -2.0, 0.5;
  const Problem problem = finite_sum_problem(3, 2, {quadratic_component(anchor)});
  RandomStream rng(1);
  const Vector theta = random_gaussian(rng, 3);
  RandomStream sample_rng(2);
  const SampleEval s = problem.sample(theta, sample_rng);
  CHECK((s.values - problem.objectives(theta)).norm() == 0.0);
  CHECK((s.jacobian - problem.jacobian(theta)).norm() == 0.0);
}

TEST_CASE("opposed anchors cancel the mean gradient at the origin") {
  Vector anchor(4);
  anchor << 0.3, -0.9, 1.4, 0.2;
  const Problem problem = finite_sum_problem(
      4, 2, {quadratic_component(anchor), quadratic_component(-anchor)});
  const Matrix jac = problem.jacobian(Vector::Zero(4));
  CHECK(jac.norm() <= 1e-14);
}

TEST_CASE("sampler is unbiased against the enumerated mean") {
  RandomStream gen(7);
  std::vector<FiniteSumComponent> components;
  for (int c = 0; c < 3; ++c)
    components.push_back(quadratic_component(random_vector(gen, 3, -2.0, 2.0)));
  const Problem problem = finite_sum_problem(3, 2, components);
  const Vector theta = random_vector(gen, 3, -1.0, 1.0);

  // exact enumeration oracle: mean over the three components
  Matrix exact = Matrix::Zero(3, 2);
  for (const auto& c : components) exact += c.jacobian(theta);
  exact /= 3.0;
  CHECK((exact - problem.jacobian(theta)).norm() <= 1e-12);

  Vector exact_f = Vector::Zero(2);
  for (const auto& c : components) exact_f += c.objectives(theta);
  exact_f /= 3.0;
  CHECK((exact_f - problem.objectives(theta)).norm() <= 1e-12);

  const int n = 100000;
  RandomStream rng(123);
  Matrix sum = Matrix::Zero(3, 2);
  Matrix sum_sq = Matrix::Zero(3, 2);
  for (int i = 0; i < n; ++i) {
    const SampleEval s = problem.sample(theta, rng);
    sum += s.jacobian;
    sum_sq += s.jacobian.cwiseProduct(s.jacobian);
  }
  const Matrix mean = sum / n;
  for (Index i = 0; i < 3; ++i) {
    for (Index j = 0; j < 2; ++j) {
      const double var =
          (sum_sq(i, j) / n - mean(i, j) * mean(i, j)) * n / (n - 1.0);
      const double se = std::sqrt(var / n);
      CHECK(std::abs(mean(i, j) - exact(i, j)) <= 3.0 * se + 1e-12);
    }
  }
}

TEST_CASE("finite sum rejects an empty component list") {
  CHECK_THROWS_AS(finite_sum_problem(3, 2, {}), Error);
}
