#include "ferero/subproblem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace ferero {

namespace {

constexpr double kDomainTol = 1e-8;

double block_l1_plus(const Vector& v) {
  return v.cwiseMax(0.0).lpNorm<1>();
}

}  // namespace

Vector Multipliers::stacked() const {
  Vector out(obj.size() + ineq.size() + eq.size());
  out << obj, ineq, eq;
  return out;
}

Multipliers Multipliers::split(const Vector& stacked, Index m, Index mg,
                               Index mh) {
  detail::require(stacked.size() == m + mg + mh,
                  "multipliers: stacked vector has wrong size");
  Multipliers lam;
  lam.obj = stacked.head(m);
  lam.ineq = stacked.segment(m, mg);
  lam.eq = stacked.tail(mh);
  return lam;
}

SubproblemContext::SubproblemContext(Matrix jacobian, Vector objective_values,
                                     const Preference& pref,
                                     MultiplierDomain domain)
    : jacobian_(std::move(jacobian)),
      f_(std::move(objective_values)),
      domain_(domain),
      ineq_gain_(pref.ineq_gain),
      eq_gain_(pref.eq_gain) {
  const Index m = pref.num_objectives();
  detail::require(f_.size() == m, "subproblem: F(theta) has wrong size");
  detail::require(jacobian_.cols() == m, "subproblem: Jacobian has wrong shape");
  pref.validate();

  auto [g, h] = eval_constraints(pref, f_);
  g_ = std::move(g);
  h_ = std::move(h);

  const Index mg = g_.size();
  const Index mh = h_.size();
  stacked_mat_.resize(m + mg + mh, m);
  stacked_mat_ << pref.cone_a, pref.ineq_mat, pref.eq_mat;

  direction_mat_ = jacobian_ * stacked_mat_.transpose();
  gram_ = direction_mat_.transpose() * direction_mat_;
  linear_term_.resize(m + mg + mh);
  linear_term_ << Vector::Zero(m), ineq_gain_ * g_, eq_gain_ * h_;

  if (domain_ == MultiplierDomain::adaptive) {
    weights_ = pref.cone_a * f_;
    if (weights_.minCoeff() <= 0.0)
      throw DomainError(
          "adaptive multiplier domain requires A F(theta) > 0 componentwise");
    budget_ = weights_.sum();
  } else {
    weights_ = Vector::Ones(m);
    budget_ = 1.0;
  }
}

Multipliers SubproblemContext::initial_multipliers() const {
  Multipliers lam;
  lam.obj = Vector::Constant(num_objectives(), budget_ / weights_.sum());
  lam.ineq = Vector::Zero(num_ineq());
  lam.eq = Vector::Zero(num_eq());
  return project_multipliers(lam, *this);
}

double phi_value(const Multipliers& lam, const SubproblemContext& ctx) {
  const Vector v = lam.stacked();
  detail::require(v.size() == ctx.num_multipliers(),
                  "phi_value: multiplier size mismatch");
  if (lam.obj.minCoeff() < -kDomainTol ||
      std::abs(lam.obj.dot(ctx.simplex_weights()) - ctx.simplex_budget()) >
          kDomainTol ||
      (lam.ineq.size() > 0 && lam.ineq.minCoeff() < -kDomainTol))
    throw DomainError("phi_value: multipliers outside the declared domain");
  return 0.5 * v.dot(ctx.gram() * v) - ctx.linear_term().dot(v);
}

Vector phi_gradient(const Multipliers& lam, const SubproblemContext& ctx) {
  const Vector v = lam.stacked();
  detail::require(v.size() == ctx.num_multipliers(),
                  "phi_gradient: multiplier size mismatch");
  return ctx.gram() * v - ctx.linear_term();
}

Vector project_weighted_simplex(const Vector& p, const Vector& w, double b) {
  detail::require(p.size() == w.size(),
                  "project_weighted_simplex: size mismatch");
  if (w.size() == 0 || w.minCoeff() <= 0.0 || b <= 0.0)
    throw Error("project_weighted_simplex: weights and budget must be positive");
  const Index n = p.size();

  // pivot search over the breakpoints of
  //   sum_i w_i max(0, p_i - mu w_i) = b,
  // which is piecewise linear and decreasing in mu
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index i, Index j) {
    return p(i) / w(i) > p(j) / w(j);
  });

  double sum_wp = 0.0;
  double sum_w2 = 0.0;
  double mu = 0.0;
  for (Index k = 0; k < n; ++k) {
    const Index i = order[static_cast<std::size_t>(k)];
    sum_wp += w(i) * p(i);
    sum_w2 += w(i) * w(i);
    const double candidate = (sum_wp - b) / sum_w2;
    const double z_k = p(i) / w(i);
    const double z_next = (k + 1 < n)
                              ? p(order[static_cast<std::size_t>(k + 1)]) /
                                    w(order[static_cast<std::size_t>(k + 1)])
                              : -std::numeric_limits<double>::infinity();
    if (candidate < z_k && candidate >= z_next) {
      mu = candidate;
      break;
    }
    if (k + 1 == n) mu = candidate;
  }
  return (p - mu * w).cwiseMax(0.0);
}

Multipliers project_multipliers(const Multipliers& lam,
                                const SubproblemContext& ctx) {
  Multipliers out;
  out.obj = project_weighted_simplex(lam.obj, ctx.simplex_weights(),
                                     ctx.simplex_budget());
  out.ineq = lam.ineq.cwiseMax(0.0);
  out.eq = lam.eq;
  return out;
}

SubproblemResult solve_pgd(const SubproblemContext& ctx,
                           const Multipliers& start, const PgdSettings& s) {
  if (s.step <= 0.0) throw Error("solve_pgd: step must be positive");
  Multipliers lam = project_multipliers(start, ctx);
  double gamma = s.step;
  bool halved = false;

  Vector v = lam.stacked();
  double prev = 0.5 * v.dot(ctx.gram() * v) - ctx.linear_term().dot(v);
  int iters = 0;
  for (int k = 0; k < s.max_iters; ++k) {
    const Vector grad = ctx.gram() * v - ctx.linear_term();
    Multipliers cand = project_multipliers(
        Multipliers::split(v - gamma * grad, ctx.num_objectives(),
                           ctx.num_ineq(), ctx.num_eq()),
        ctx);
    const Vector vc = cand.stacked();
    if (!vc.allFinite())
      throw NumericalError("solve_pgd: non-finite multipliers (step too large?)");
    const double pg_norm = (v - vc).norm() / gamma;
    v = vc;
    lam = std::move(cand);
    iters = k + 1;
    if (pg_norm <= s.tol) break;

    const double cur = 0.5 * v.dot(ctx.gram() * v) - ctx.linear_term().dot(v);
    if (cur > prev && !halved) {
      gamma *= 0.5;
      halved = true;
    }
    prev = cur;
  }

  SubproblemResult res;
  res.multipliers = lam;
  res.direction = -(ctx.direction_mat() * v);
  res.phi = 0.5 * v.dot(ctx.gram() * v) - ctx.linear_term().dot(v);
  res.psi = -res.phi;  // zero duality gap for this convex QP
  res.inner_iters = iters;
  res.kkt = kkt_residual(ctx, res);
  return res;
}

SubproblemResult solve_pgd(const SubproblemContext& ctx,
                           const PgdSettings& s) {
  return solve_pgd(ctx, ctx.initial_multipliers(), s);
}

double kkt_residual(const SubproblemContext& ctx,
                    const SubproblemResult& res) {
  const double stationarity = res.direction.squaredNorm();
  const double slackness = res.multipliers.ineq.dot((-ctx.ineq_values()).cwiseMax(0.0));
  const double feasibility =
      block_l1_plus(ctx.ineq_values()) + ctx.eq_values().lpNorm<1>();
  return stationarity + slackness + feasibility;
}

}  // namespace ferero
