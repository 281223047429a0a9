#include "ferero/solvers.hpp"

#include <chrono>
#include <cmath>
#include <tuple>
#include <utility>

namespace ferero {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double alpha_at(const SolverConfig& cfg, Index t) {
  return cfg.alpha_decay_sqrt
             ? cfg.alpha / std::sqrt(static_cast<double>(t + 1))
             : cfg.alpha;
}

double gamma_at(const SolverConfig& cfg, Index t) {
  // gamma_t / alpha_t stays fixed when the alpha schedule decays
  return cfg.alpha_decay_sqrt
             ? cfg.gamma / std::sqrt(static_cast<double>(t + 1))
             : cfg.gamma;
}

void validate_common(const Problem& problem, const SolverConfig& cfg) {
  if (cfg.alpha <= 0.0 || cfg.gamma <= 0.0 || cfg.iterations <= 0)
    throw Error("solver: alpha, gamma and iterations must be positive");
  if (cfg.record_every <= 0)
    throw Error("solver: record_every must be positive");
  if (cfg.variant == SolverVariant::stochastic && !problem.has_sampler())
    throw Error("stochastic solver requires a problem with a sampler");
}

class Recorder {
 public:
  Recorder(const SolverConfig& cfg, std::vector<IterateRecord>& out)
      : cfg_(cfg), out_(out) {}

  void at_stride(IterateRecord rec) {
    if (rec.t % cfg_.record_every == 0) push(std::move(rec));
  }

  void final(IterateRecord rec) {
    if (!out_.empty() && out_.back().t == rec.t) return;
    push(std::move(rec));
  }

 private:
  void push(IterateRecord rec) {
    if (!cfg_.record_theta) rec.theta.reset();
    out_.push_back(std::move(rec));
  }

  const SolverConfig& cfg_;
  std::vector<IterateRecord>& out_;
};

IterateRecord make_record(Index t, const Vector& f, const Vector& g,
                          const Vector& h, double norm_d, double kkt,
                          const Vector& theta) {
  IterateRecord rec;
  rec.t = t;
  rec.f = f;
  rec.norm_d = norm_d;
  rec.ineq_violation_l1 = g.cwiseMax(0.0).lpNorm<1>();
  rec.eq_violation_l1 = h.lpNorm<1>();
  rec.kkt = kkt;
  rec.theta = theta;
  return rec;
}

void check_finite(const Vector& theta) {
  if (!theta.allFinite())
    throw NumericalError("solver: non-finite iterate (bad step size?)");
}

// Simplified-domain projection used by the single-loop updates: objective
// block onto the unit simplex, equality block free.
void project_simplified(Vector& lam_obj) {
  lam_obj = project_weighted_simplex(lam_obj, Vector::Ones(lam_obj.size()), 1.0);
}

struct SingleLoopState {
  Matrix stacked;  // [A; eq_mat], (M + M_h) x M
  Vector lam_obj;
  Vector lam_eq;

  Vector stacked_lambda() const {
    Vector v(lam_obj.size() + lam_eq.size());
    v << lam_obj, lam_eq;
    return v;
  }
};

SingleLoopState make_single_loop_state(const Preference& pref) {
  pref.validate();
  if (pref.num_ineq() > 0)
    throw UnsupportedConstraintError(
        "single-loop solver supports equality constraints only (M_g = 0)");
  const Index m = pref.num_objectives();
  SingleLoopState st;
  st.stacked.resize(m + pref.num_eq(), m);
  st.stacked << pref.cone_a, pref.eq_mat;
  st.lam_obj = Vector::Constant(m, 1.0 / static_cast<double>(m));
  st.lam_eq = Vector::Zero(pref.num_eq());
  return st;
}

// Exact residual at the final iterate; the single-loop variants and the
// linear-scalarization baseline measure it on the simplified domain they
// conceptually optimize over.
double exact_final_kkt(const Problem& problem, const Preference& pref,
                       const Vector& theta, MultiplierDomain domain,
                       const PgdSettings& inner) {
  SubproblemContext ctx(problem.jacobian(theta), problem.objectives(theta),
                        pref, domain);
  return solve_pgd(ctx, inner).kkt;
}

}  // namespace

Vector initial_theta(const Problem& problem, const SolverConfig& cfg,
                     RandomStream& rng) {
  const Index q = problem.decision_dim();
  Vector theta(q);
  switch (cfg.init) {
    case InitKind::gaussian:
      for (Index i = 0; i < q; ++i) theta(i) = rng.normal();
      break;
    case InitKind::easy_near_pf:
      for (Index i = 0; i < q; ++i) theta(i) = rng.uniform(-0.3, 0.3);
      break;
    case InitKind::hard_near_pf:
      for (Index i = 0; i < q; ++i) {
        const double magnitude = rng.uniform(0.15, 0.5);
        theta(i) = rng.uniform() < 0.5 ? -magnitude : magnitude;
      }
      break;
    case InitKind::explicit_theta:
      if (!cfg.theta0) throw Error("explicit initialization without theta0");
      detail::require(cfg.theta0->size() == q, "theta0 has wrong size");
      theta = *cfg.theta0;
      break;
  }
  return theta;
}

RunReport run_meta(const Problem& problem, const Preference& pref,
                   const SolverConfig& cfg) {
  validate_common(problem, cfg);
  pref.validate();
  const auto t0 = Clock::now();

  RandomStream init_rng = RandomStream::substream(cfg.seed, 0);
  Vector theta = initial_theta(problem, cfg, init_rng);

  RunReport report;
  report.config = cfg;
  Recorder recorder(cfg, report.trajectory);

  Index t = 0;
  bool stopped = false;
  SubproblemResult last{};
  Vector last_f;
  for (; t < cfg.iterations; ++t) {
    const Vector f = problem.objectives(theta);
    SubproblemContext ctx(problem.jacobian(theta), f, pref, cfg.domain);
    last = solve_pgd(ctx, cfg.inner);
    last_f = f;
    recorder.at_stride(make_record(t, f, ctx.ineq_values(), ctx.eq_values(),
                                   last.direction.norm(), last.kkt, theta));
    if (last.kkt <= cfg.stop_residual) {
      stopped = true;
      break;
    }
    theta += alpha_at(cfg, t) * last.direction;
    check_finite(theta);
  }

  if (stopped) {
    report.iterations_used = t;
    auto [g, h] = eval_constraints(pref, last_f);
    recorder.final(make_record(t, last_f, g, h, last.direction.norm(),
                               last.kkt, theta));
    report.final_kkt = last.kkt;
    report.f_final = last_f;
    report.final_ineq_violation_l1 = g.cwiseMax(0.0).lpNorm<1>();
    report.final_eq_violation_l1 = h.lpNorm<1>();
  } else {
    report.iterations_used = cfg.iterations;
    const Vector f = problem.objectives(theta);
    SubproblemContext ctx(problem.jacobian(theta), f, pref, cfg.domain);
    const auto res = solve_pgd(ctx, cfg.inner);
    recorder.final(make_record(cfg.iterations, f, ctx.ineq_values(),
                               ctx.eq_values(), res.direction.norm(), res.kkt,
                               theta));
    report.final_kkt = res.kkt;
    report.f_final = f;
    report.final_ineq_violation_l1 = ctx.ineq_values().cwiseMax(0.0).lpNorm<1>();
    report.final_eq_violation_l1 = ctx.eq_values().lpNorm<1>();
  }
  report.theta_final = theta;
  report.wall_seconds = seconds_since(t0);
  return report;
}

namespace {

// Shared body of the deterministic and stochastic single-loop solvers.
// The theta step uses jac_dir (one sample), the multiplier-gradient product
// uses jac_dir then jac_gram (a second, independent sample), and the
// constraint value in the linear term comes from the same sample as the
// direction. The deterministic variant passes the exact Jacobian twice, so
// a zero-variance sampler reproduces it bit for bit.
struct LoopStep {
  Vector direction;    // d_t
  Vector lambda_grad;  // estimate of the phi gradient
};

LoopStep single_loop_step(const SingleLoopState& st, const Matrix& jac_dir,
                          const Matrix& jac_gram, const Vector& h_sample,
                          double eq_gain) {
  const Vector stacked_lambda = st.stacked_lambda();
  const Vector neg_d = jac_dir * (st.stacked.transpose() * stacked_lambda);
  Vector linear(stacked_lambda.size());
  linear << Vector::Zero(st.lam_obj.size()), eq_gain * h_sample;
  LoopStep out;
  out.direction = -neg_d;
  out.lambda_grad = st.stacked * (jac_gram.transpose() * neg_d) - linear;
  return out;
}

template <typename SampleFn>
RunReport run_single_loop_impl(const Problem& problem, const Preference& pref,
                               const SolverConfig& cfg, SampleFn draw) {
  validate_common(problem, cfg);
  const auto t0 = Clock::now();

  RandomStream init_rng = RandomStream::substream(cfg.seed, 0);
  Vector theta = initial_theta(problem, cfg, init_rng);
  SingleLoopState st = make_single_loop_state(pref);

  RunReport report;
  report.config = cfg;
  Recorder recorder(cfg, report.trajectory);

  Index t = 0;
  bool stopped = false;
  for (; t < cfg.iterations; ++t) {
    const Vector f = problem.objectives(theta);
    const auto [g, h] = eval_constraints(pref, f);

    const auto [jac_dir, jac_gram, h_sample] = draw(theta);
    const LoopStep step =
        single_loop_step(st, jac_dir, jac_gram, h_sample, pref.eq_gain);

    const double d2 = step.direction.squaredNorm();
    recorder.at_stride(make_record(t, f, g, h, step.direction.norm(),
                                   d2 + h.lpNorm<1>(), theta));
    if (d2 + h.squaredNorm() <= cfg.stop_residual) {
      stopped = true;
      break;
    }

    theta += alpha_at(cfg, t) * step.direction;
    check_finite(theta);

    Vector lam = st.stacked_lambda() - gamma_at(cfg, t) * step.lambda_grad;
    if (!lam.allFinite())
      throw NumericalError("single-loop: non-finite multipliers");
    st.lam_obj = lam.head(st.lam_obj.size());
    st.lam_eq = lam.tail(st.lam_eq.size());
    project_simplified(st.lam_obj);
  }

  report.iterations_used = t;
  {
    const Vector f = problem.objectives(theta);
    const auto [g, h] = eval_constraints(pref, f);
    const auto [jac_dir, jac_gram, h_sample] = draw(theta);
    const LoopStep step =
        single_loop_step(st, jac_dir, jac_gram, h_sample, pref.eq_gain);
    recorder.final(make_record(t, f, g, h, step.direction.norm(),
                               step.direction.squaredNorm() + h.lpNorm<1>(),
                               theta));
    report.f_final = f;
    report.final_ineq_violation_l1 = g.cwiseMax(0.0).lpNorm<1>();
    report.final_eq_violation_l1 = h.lpNorm<1>();
  }
  report.final_kkt = exact_final_kkt(problem, pref, theta,
                                     MultiplierDomain::simplified, cfg.inner);
  report.theta_final = theta;
  report.wall_seconds = seconds_since(t0);
  return report;
}

}  // namespace

RunReport run_single_loop(const Problem& problem, const Preference& pref,
                          const SolverConfig& cfg) {
  auto draw = [&](const Vector& theta) {
    const Matrix jac = problem.jacobian(theta);
    const Vector f = problem.objectives(theta);
    Vector h = pref.eq_mat * f + pref.eq_vec;
    return std::make_tuple(jac, jac, std::move(h));
  };
  return run_single_loop_impl(problem, pref, cfg, draw);
}

RunReport run_stochastic(const Problem& problem, const Preference& pref,
                         const SolverConfig& cfg) {
  if (!problem.has_sampler())
    throw Error("run_stochastic: problem has no sampler");
  RandomStream sample_rng = RandomStream::substream(cfg.seed, 1);
  auto draw = [&](const Vector& theta) {
    const SampleEval s1 = problem.sample(theta, sample_rng);
    const SampleEval s2 = problem.sample(theta, sample_rng);
    Vector h = pref.eq_mat * s1.values + pref.eq_vec;
    return std::make_tuple(s1.jacobian, s2.jacobian, std::move(h));
  };
  return run_single_loop_impl(problem, pref, cfg, draw);
}

RunReport run_linear_scalarization(const Problem& problem,
                                   const Vector& weights,
                                   const SolverConfig& cfg,
                                   const Preference& pref) {
  validate_common(problem, cfg);
  detail::require(weights.size() == problem.num_objectives(),
                  "linear scalarization: weight vector has wrong size");
  if (weights.minCoeff() < 0.0 || std::abs(weights.sum() - 1.0) > 1e-8)
    throw Error("linear scalarization: weights must be >= 0 and sum to 1");
  const auto t0 = Clock::now();

  RandomStream init_rng = RandomStream::substream(cfg.seed, 0);
  Vector theta = initial_theta(problem, cfg, init_rng);

  RunReport report;
  report.config = cfg;
  Recorder recorder(cfg, report.trajectory);

  auto diagnostics = [&](Index t, const Vector& cur) {
    const Vector f = problem.objectives(cur);
    const auto [g, h] = eval_constraints(pref, f);
    const Vector d = -(problem.jacobian(cur) * weights);
    return make_record(t, f, g, h, d.norm(),
                       d.squaredNorm() + g.cwiseMax(0.0).lpNorm<1>() +
                           h.lpNorm<1>(),
                       cur);
  };

  Index t = 0;
  for (; t < cfg.iterations; ++t) {
    IterateRecord rec = diagnostics(t, theta);
    recorder.at_stride(rec);
    const Vector d = -(problem.jacobian(theta) * weights);
    if (d.squaredNorm() <= cfg.stop_residual) break;
    theta += alpha_at(cfg, t) * d;
    check_finite(theta);
  }

  report.iterations_used = t;
  IterateRecord final_rec = diagnostics(t, theta);
  report.f_final = final_rec.f;
  report.final_ineq_violation_l1 = final_rec.ineq_violation_l1;
  report.final_eq_violation_l1 = final_rec.eq_violation_l1;
  recorder.final(std::move(final_rec));
  report.final_kkt = exact_final_kkt(problem, pref, theta,
                                     MultiplierDomain::simplified, cfg.inner);
  report.theta_final = theta;
  report.wall_seconds = seconds_since(t0);
  return report;
}

RunReport run(const Problem& problem, const Preference& pref,
              const SolverConfig& cfg) {
  switch (cfg.variant) {
    case SolverVariant::meta:
      return run_meta(problem, pref, cfg);
    case SolverVariant::single_loop:
      return run_single_loop(problem, pref, cfg);
    case SolverVariant::stochastic:
      return run_stochastic(problem, pref, cfg);
    case SolverVariant::linear_scalarization:
      return run_linear_scalarization(problem, cfg.ls_weights, cfg, pref);
  }
  throw Error("run: unknown solver variant");
}

}  // namespace ferero
