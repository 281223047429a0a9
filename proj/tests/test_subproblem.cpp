#include <cmath>
#include <limits>

#include <doctest.h>

#include "ferero/cone.hpp"
#include "ferero/subproblem.hpp"
#include "test_support.hpp"

using namespace ferero;
using namespace ferero::testing;

namespace {

Preference no_constraint_pref() { return Preference::identity(2); }

Preference ray_pref(const Vector& ray, double eq_gain = 1.0) {
  Preference pref = Preference::identity(ray.size());
  auto [mat, vec] = ray_to_equality(ray);
  pref.eq_mat = mat;
  pref.eq_vec = vec;
  pref.eq_gain = eq_gain;
  return pref;
}

// 1-D dense grid with two refinement passes over the 2-objective simplex
// (no constraints); convexity keeps the continuous minimizer within one
// cell of the discrete argmin
double grid_phi_simplex2(const SubproblemContext& ctx, Vector* arg = nullptr) {
  double lo = 0.0, hi = 1.0;
  double best_s = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (int pass = 0; pass < 3; ++pass) {
    const int n = 1000;
    for (int k = 0; k <= n; ++k) {
      const double s = lo + (hi - lo) * k / n;
      Vector lam(2);
      lam << s, 1.0 - s;
      const double value = 0.5 * lam.dot(ctx.gram() * lam);
      if (value < best) {
        best = value;
        best_s = s;
      }
    }
    const double cell = (hi - lo) / n;
    lo = std::max(0.0, best_s - 2.0 * cell);
    hi = std::min(1.0, best_s + 2.0 * cell);
  }
  if (arg) {
    arg->resize(2);
    *arg << best_s, 1.0 - best_s;
  }
  return best;
}

// dense grid over (simplex coordinate, equality multiplier)
double grid_phi_simplex2_eq(const SubproblemContext& ctx, double lam_eq_lo,
                            double lam_eq_hi, int ns, int ne) {
  double best = std::numeric_limits<double>::infinity();
  const Matrix& gram = ctx.gram();
  const Vector& lin = ctx.linear_term();
  Vector lam(3);
  for (int i = 0; i <= ns; ++i) {
    const double s = static_cast<double>(i) / ns;
    for (int j = 0; j <= ne; ++j) {
      const double e = lam_eq_lo + (lam_eq_hi - lam_eq_lo) * j / ne;
      lam << s, 1.0 - s, e;
      best = std::min(best, 0.5 * lam.dot(gram * lam) - lin.dot(lam));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("phi_value worked examples") {
  Matrix jac = Matrix::Identity(2, 2);
  Vector f(2);
  f << 1.0, 1.0;

  SubproblemContext ctx(jac, f, no_constraint_pref(),
                        MultiplierDomain::simplified);
  Multipliers lam;
  lam.obj = Vector::Constant(2, 0.5);
  lam.ineq = Vector(0);
  lam.eq = Vector(0);
  CHECK(phi_value(lam, ctx) == doctest::Approx(0.25).epsilon(1e-14));

  lam.obj << 1.0, 0.0;  // single-objective reduction
  CHECK(phi_value(lam, ctx) ==
        doctest::Approx(0.5 * jac.col(0).squaredNorm()).epsilon(1e-14));

  lam.obj << 2.0, 0.0;  // outside the simplex
  CHECK_THROWS_AS(phi_value(lam, ctx), DomainError);
}

TEST_CASE("phi_value with a pure constraint term") {
  // h = 0.5, c_h = 1, lambda_h = 2, J = 0 -> phi = -1
  Matrix jac = Matrix::Zero(2, 2);
  Vector f(2);
  f << 1.0, 0.5;
  Preference pref = Preference::identity(2);
  pref.eq_mat.resize(1, 2);
  pref.eq_mat << 1.0, 0.0;
  pref.eq_vec = Vector::Constant(1, -0.5);  // h = f_1 - 0.5 = 0.5
  SubproblemContext ctx(jac, f, pref, MultiplierDomain::simplified);
  CHECK(ctx.eq_values()(0) == doctest::Approx(0.5).epsilon(1e-15));

  Multipliers lam;
  lam.obj = Vector::Constant(2, 0.5);
  lam.ineq = Vector(0);
  lam.eq = Vector::Constant(1, 2.0);
  CHECK(phi_value(lam, ctx) == doctest::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("phi_gradient at zero multipliers is the negated linear term") {
  RandomStream rng(3);
  const Matrix jac = random_matrix(rng, 4, 2);
  Vector f(2);
  f << 0.8, 0.6;
  Preference pref = Preference::identity(2);
  pref.ineq_mat = random_matrix(rng, 2, 2);
  pref.ineq_vec = random_vector(rng, 2);
  pref.eq_mat.resize(1, 2);
  pref.eq_mat << 1.0, -1.0;
  pref.eq_vec = Vector::Zero(1);
  pref.ineq_gain = 1.7;
  pref.eq_gain = 0.4;
  SubproblemContext ctx(jac, f, pref, MultiplierDomain::simplified);

  Multipliers zero;
  zero.obj = Vector::Zero(2);
  zero.ineq = Vector::Zero(2);
  zero.eq = Vector::Zero(1);
  const Vector grad = phi_gradient(zero, ctx);
  Vector expected(5);
  expected << 0.0, 0.0, -pref.ineq_gain * ctx.ineq_values(),
      -pref.eq_gain * ctx.eq_values();
  CHECK((grad - expected).norm() <= 1e-14);
}

TEST_CASE("phi_gradient with an orthonormal Jacobian is the multiplier") {
  Matrix jac = Matrix::Identity(3, 3);
  Vector f = Vector::Ones(3);
  SubproblemContext ctx(jac, f, Preference::identity(3),
                        MultiplierDomain::simplified);
  Multipliers lam;
  lam.obj.resize(3);
  lam.obj << 0.2, 0.5, 0.3;
  lam.ineq = Vector(0);
  lam.eq = Vector(0);
  CHECK((phi_gradient(lam, ctx) - lam.obj).norm() <= 1e-14);
}

TEST_CASE("phi_gradient matches finite differences of phi") {
  RandomStream rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Index q = 3 + static_cast<Index>(rng.below(4));
    const Matrix jac = random_matrix(rng, q, 2);
    Vector f(2);
    f << rng.uniform(0.2, 1.0), rng.uniform(0.2, 1.0);
    Preference pref = ray_pref(f, rng.uniform(0.5, 2.0));
    pref.ineq_mat = random_matrix(rng, 1, 2);
    pref.ineq_vec = random_vector(rng, 1);
    pref.ineq_gain = rng.uniform(0.5, 2.0);
    SubproblemContext ctx(jac, f, pref, MultiplierDomain::simplified);

    Multipliers lam;
    lam.obj.resize(2);
    lam.obj << 0.4, 0.6;  // interior of the simplex
    lam.ineq = Vector::Constant(1, 0.7);
    lam.eq = Vector::Constant(1, -0.3);
    const Vector grad = phi_gradient(lam, ctx);

    // directional finite differences along domain-tangent directions keep
    // phi_value's domain check satisfied
    for (int dir = 0; dir < 5; ++dir) {
      Vector step(4);
      step << rng.normal(), rng.normal(), rng.normal(), rng.normal();
      step.head(2) -= Vector::Constant(2, step.head(2).sum() / 2.0);
      step *= 0.02;

      const auto shifted = [&](double sign) {
        Multipliers s = lam;
        s.obj += sign * step.head(2);
        s.ineq += sign * step.segment(2, 1);
        s.eq += sign * step.tail(1);
        return phi_value(s, ctx);
      };
      const double fd = (shifted(1.0) - shifted(-1.0)) / 2.0;
      const double analytic = grad.dot(step);
      CHECK(std::abs(fd - analytic) <= 1e-6 * (1.0 + std::abs(fd)));
    }
  }
}

TEST_CASE("project_weighted_simplex worked examples") {
  Vector p(2), w(2);
  p << 3.0, 0.0;
  w << 1.0, 2.0;
  Vector out = project_weighted_simplex(p, w, 3.0);
  CHECK((out - p).norm() <= 1e-14);  // already feasible

  p << 0.0, 0.0;
  out = project_weighted_simplex(p, w, 3.0);
  CHECK(out(0) == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(out(1) == doctest::Approx(1.2).epsilon(1e-12));

  p << 5.0, 5.0;
  w << 1.0, 1.0;
  out = project_weighted_simplex(p, w, 1.0);
  CHECK(out(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(out(1) == doctest::Approx(0.5).epsilon(1e-12));

  CHECK_THROWS(project_weighted_simplex(p, Vector::Zero(2), 1.0));
  CHECK_THROWS(project_weighted_simplex(p, w, 0.0));
}

TEST_CASE("project_weighted_simplex satisfies the KKT conditions") {
  RandomStream rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 2 + static_cast<Index>(rng.below(6));
    const Vector p = random_gaussian(rng, n) * 2.0;
    Vector w(n);
    for (Index i = 0; i < n; ++i) w(i) = rng.uniform(0.2, 3.0);
    const double b = rng.uniform(0.5, 4.0);
    const Vector lam = project_weighted_simplex(p, w, b);

    CHECK(lam.minCoeff() >= 0.0);
    CHECK(std::abs(w.dot(lam) - b) <= 1e-12 * (1.0 + b));

    // a single pivot mu explains every coordinate:
    // active ones sit exactly at p - mu w, inactive ones lie below it
    double mu = 0.0;
    bool has_active = false;
    for (Index i = 0; i < n; ++i) {
      if (lam(i) > 0.0) {
        mu = (p(i) - lam(i)) / w(i);
        has_active = true;
        break;
      }
    }
    CHECK(has_active);
    for (Index i = 0; i < n; ++i) {
      if (lam(i) > 0.0)
        CHECK(std::abs(p(i) - lam(i) - mu * w(i)) <= 1e-10);
      else
        CHECK(p(i) <= mu * w(i) + 1e-10);
    }
  }
}

TEST_CASE("project_multipliers is blockwise and idempotent") {
  RandomStream rng(29);
  const Matrix jac = random_matrix(rng, 3, 2);
  Vector f(2);
  f << 0.5, 0.9;
  Preference pref = Preference::identity(2);
  pref.ineq_mat = random_matrix(rng, 2, 2);
  pref.ineq_vec = random_vector(rng, 2);
  SubproblemContext ctx(jac, f, pref, MultiplierDomain::simplified);

  Multipliers lam;
  lam.obj.resize(2);
  lam.obj << 2.0, 0.0;
  lam.ineq.resize(2);
  lam.ineq << -1.0, 2.0;
  lam.eq = Vector(0);
  const Multipliers proj = project_multipliers(lam, ctx);
  CHECK(proj.obj(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(proj.obj(1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(proj.ineq(0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(proj.ineq(1) == doctest::Approx(2.0).epsilon(1e-12));

  const Multipliers twice = project_multipliers(proj, ctx);
  CHECK((twice.stacked() - proj.stacked()).norm() <= 1e-14);

  // adaptive domain requires strictly positive A f
  Vector bad_f(2);
  bad_f << 1.0, 0.0;
  CHECK_THROWS_AS(SubproblemContext(jac, bad_f, Preference::identity(2),
                                    MultiplierDomain::adaptive),
                  DomainError);
}

TEST_CASE("solve_pgd finds the symmetric minimizer on orthogonal gradients") {
  Matrix jac = Matrix::Identity(2, 2);
  Vector f(2);
  f << 1.0, 1.0;
  SubproblemContext ctx(jac, f, no_constraint_pref(),
                        MultiplierDomain::simplified);
  const SubproblemResult res = solve_pgd(ctx);

  CHECK((res.multipliers.obj - Vector::Constant(2, 0.5)).norm() <= 1e-6);
  CHECK((res.direction - Vector::Constant(2, -0.5)).norm() <= 1e-6);
  CHECK(res.psi == doctest::Approx(-0.25).epsilon(1e-8));
  // equality case of the optimality inequality: 2 psi = -||d||^2
  CHECK(2.0 * res.psi + res.direction.squaredNorm() ==
        doctest::Approx(0.0).epsilon(1e-10));
  // grid oracle agrees
  CHECK(grid_phi_simplex2(ctx) == doctest::Approx(res.phi).epsilon(1e-6));
}

TEST_CASE("identical gradient columns give that common direction") {
  RandomStream rng(31);
  const Vector g = random_gaussian(rng, 5);
  Matrix jac(5, 2);
  jac.col(0) = g;
  jac.col(1) = g;
  Vector f(2);
  f << 0.7, 0.7;
  SubproblemContext ctx(jac, f, no_constraint_pref(),
                        MultiplierDomain::simplified);
  const SubproblemResult res = solve_pgd(ctx);
  CHECK((res.direction + g).norm() <= 1e-8);
}

TEST_CASE("solve_pgd reaches the grid optimum with one equality") {
  RandomStream rng(37);
  int tested = 0;
  while (tested < 50) {
    const Index q = 3 + static_cast<Index>(rng.below(3));
    const Matrix jac = random_matrix(rng, q, 2);
    Vector f(2);
    f << rng.uniform(0.3, 1.0), rng.uniform(0.3, 1.0);
    Preference pref = ray_pref(random_vector(rng, 2, 0.2, 1.0));

    // keep the equality block well conditioned so the optimal equality
    // multiplier stays inside the grid box
    if ((jac * pref.eq_mat.transpose()).squaredNorm() < 0.5) continue;
    ++tested;

    SubproblemContext ctx(jac, f, pref, MultiplierDomain::simplified);
    PgdSettings tight;
    tight.max_iters = 5000;
    tight.tol = 1e-10;
    const SubproblemResult res = solve_pgd(ctx, tight);
    CHECK(std::abs(res.multipliers.eq(0)) <= 3.0);

    const double grid = grid_phi_simplex2_eq(ctx, -4.0, 4.0, 400, 3200);
    CHECK(res.phi <= grid + 1e-3);
    CHECK(grid <= res.phi + 1e-3);
  }
}

TEST_CASE("kkt_residual worked examples") {
  // stationary feasible: columns (1,0) and (-1,0)
  Matrix jac(2, 2);
  jac.col(0) << 1.0, 0.0;
  jac.col(1) << -1.0, 0.0;
  Vector f(2);
  f << 1.0, 1.0;
  SubproblemContext ctx(jac, f, no_constraint_pref(),
                        MultiplierDomain::simplified);
  const SubproblemResult res = solve_pgd(ctx);
  CHECK(res.kkt == doctest::Approx(0.0).epsilon(1e-12));

  // pure feasibility term
  Preference pref = Preference::identity(2);
  pref.eq_mat.resize(1, 2);
  pref.eq_mat << 1.0, 0.0;
  pref.eq_vec = Vector::Constant(1, -0.3);  // h = f1 - 0.3 = 0.2
  Vector f2(2);
  f2 << 0.5, 0.5;
  SubproblemContext ctx2(Matrix::Zero(2, 2), f2, pref,
                         MultiplierDomain::simplified);
  SubproblemResult stub;
  stub.multipliers.obj = Vector::Constant(2, 0.5);
  stub.multipliers.ineq = Vector(0);
  stub.multipliers.eq = Vector::Zero(1);
  stub.direction = Vector::Zero(2);
  CHECK(kkt_residual(ctx2, stub) == doctest::Approx(0.2).epsilon(1e-14));

  // complementary slackness term: g = -0.3 with multiplier 0.5
  Preference pref3 = Preference::identity(2);
  pref3.ineq_mat.resize(1, 2);
  pref3.ineq_mat << 1.0, 0.0;
  pref3.ineq_vec = Vector::Constant(1, -0.8);  // g = 0.5 - 0.8 = -0.3
  SubproblemContext ctx3(Matrix::Zero(2, 2), f2, pref3,
                         MultiplierDomain::simplified);
  stub.multipliers.ineq = Vector::Constant(1, 0.5);
  stub.multipliers.eq = Vector(0);
  CHECK(kkt_residual(ctx3, stub) == doctest::Approx(0.15).epsilon(1e-14));
}

TEST_CASE("optimality inequality holds at feasible points") {
  RandomStream rng(41);
  int done = 0;
  while (done < 100) {
    const Index q = 3 + static_cast<Index>(rng.below(4));
    const Index m = 2 + static_cast<Index>(rng.below(2));
    const Matrix jac = random_matrix(rng, q, m);
    const Vector f = random_vector(rng, m, 0.2, 1.5);

    Preference pref = Preference::identity(m);
    if (rng.uniform() < 0.7) {
      // equality satisfied exactly at f
      auto [mat, vec] = ray_to_equality(f);
      pref.eq_mat = mat;
      pref.eq_vec = -(mat * f);
    }
    if (rng.uniform() < 0.5) {
      // inactive inequality: g = -slack < 0
      pref.ineq_mat = random_matrix(rng, 1, m);
      pref.ineq_vec =
          -(pref.ineq_mat * f) - Vector::Constant(1, rng.uniform(0.1, 1.0));
    }
    const auto domain = rng.uniform() < 0.5 ? MultiplierDomain::adaptive
                                            : MultiplierDomain::simplified;
    SubproblemContext ctx(jac, f, pref, domain);
    const SubproblemResult res = solve_pgd(ctx);
    if (res.direction.norm() < 1e-3) continue;  // want non-stationary points
    ++done;
    CHECK(2.0 * res.psi + res.direction.squaredNorm() <= 1e-8);
    CHECK(res.psi < 0.0);
    CHECK(res.psi == doctest::Approx(-res.phi).epsilon(1e-12));
  }
}

TEST_CASE("strong duality against the primal value") {
  // simplified domain, no constraints: psi = min_d max_m (J^T d)_m + ||d||^2/2
  RandomStream rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix jac = random_matrix(rng, 4, 2);
    Vector f(2);
    f << 0.6, 0.8;
    SubproblemContext ctx(jac, f, no_constraint_pref(),
                          MultiplierDomain::simplified);
    PgdSettings tight;
    tight.max_iters = 5000;
    tight.tol = 1e-12;
    const SubproblemResult res = solve_pgd(ctx, tight);
    const double primal = (jac.transpose() * res.direction).maxCoeff() +
                          0.5 * res.direction.squaredNorm();
    CHECK(std::abs(primal - res.psi) <= 1e-6);
  }
}

TEST_CASE("uniform multipliers at a stationary point are a fixed point") {
  RandomStream rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    const Index q = 3 + static_cast<Index>(rng.below(3));
    const Vector g = random_gaussian(rng, q);
    Matrix jac(q, 2);
    jac.col(0) = g;
    jac.col(1) = -g;  // uniform weights cancel exactly
    Vector f(2);
    const double level = rng.uniform(0.3, 1.0);
    f << level, level;
    const auto domain = trial % 2 == 0 ? MultiplierDomain::simplified
                                       : MultiplierDomain::adaptive;
    SubproblemContext ctx(jac, f, Preference::identity(2), domain);
    const SubproblemResult res = solve_pgd(ctx);
    CHECK(res.kkt == 0.0);
    CHECK(res.inner_iters <= 2);
  }
}

TEST_CASE("MGDA reduction: direction equals the min-norm convex combination") {
  RandomStream rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    const Index q = 3 + static_cast<Index>(rng.below(4));
    const Matrix jac = random_matrix(rng, q, 2);
    Vector f(2);
    f << 0.5, 0.5;
    SubproblemContext ctx(jac, f, no_constraint_pref(),
                          MultiplierDomain::simplified);
    PgdSettings tight;
    tight.max_iters = 2000;
    tight.tol = 1e-10;
    const SubproblemResult res = solve_pgd(ctx, tight);

    Vector lam_grid;
    grid_phi_simplex2(ctx, &lam_grid);
    const Vector d_grid = -(jac * lam_grid);
    CHECK((res.direction - d_grid).norm() <= 1e-4);
  }
}

TEST_CASE("direction scale invariance under diagonal objective scaling") {
  RandomStream rng(59);
  for (int trial = 0; trial < 20; ++trial) {
    const Index q = 4 + static_cast<Index>(rng.below(4));
    const Index m = 2 + static_cast<Index>(rng.below(2));
    const Matrix jac = random_matrix(rng, q, m);

    // two reference points and a feasible f on the line through them
    const Vector ref1 = random_vector(rng, m, 0.3, 1.5);
    const Vector ref2 = random_vector(rng, m, 0.3, 1.5);
    const double tpos = rng.uniform(0.2, 0.8);
    const Vector f = ref1 + tpos * (ref2 - ref1);
    if (f.minCoeff() <= 0.05) continue;

    Preference pref = Preference::identity(m);
    auto [mat, vec] = two_points_to_equality(ref1, ref2);
    pref.eq_mat = mat;
    pref.eq_vec = vec;

    PgdSettings tight;
    tight.max_iters = 30000;
    tight.tol = 1e-13;
    SubproblemContext ctx(jac, f, pref, MultiplierDomain::adaptive);
    const SubproblemResult base = solve_pgd(ctx, tight);
    if (base.direction.norm() < 1e-2) continue;

    Vector scale(m);
    for (Index i = 0; i < m; ++i) scale(i) = static_cast<double>(i + 1);
    const Matrix diag = scale.asDiagonal();

    Preference scaled_pref = Preference::identity(m);
    auto [mat2, vec2] = two_points_to_equality(diag * ref1, diag * ref2);
    scaled_pref.eq_mat = mat2;
    scaled_pref.eq_vec = vec2;

    SubproblemContext scaled_ctx(jac * diag, diag * f, scaled_pref,
                                 MultiplierDomain::adaptive);
    const SubproblemResult scaled = solve_pgd(scaled_ctx, tight);

    const Vector d1 = base.direction.normalized();
    const Vector d2 = scaled.direction.normalized();
    CHECK(1.0 - d1.dot(d2) <= 1e-6);
  }
}

TEST_CASE("solve_pgd flags non-finite iterates") {
  Matrix jac(2, 2);
  jac << 1e200, 0.0, 0.0, 1e200;
  Vector f(2);
  f << 1.0, 1.0;
  Preference pref = Preference::identity(2);
  pref.eq_mat.resize(1, 2);
  pref.eq_mat << 1.0, -1.0;
  pref.eq_vec = Vector::Zero(1);
  SubproblemContext ctx(jac, f, pref, MultiplierDomain::simplified);
  PgdSettings s;
  s.step = 1e10;
  CHECK_THROWS_AS(solve_pgd(ctx, s), NumericalError);
}
