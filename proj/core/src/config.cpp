#include "ferero/config.hpp"

#include <cmath>
#include <set>
#include <utility>

#include <json.hpp>

#include "ferero/bench.hpp"
#include "ferero/cone.hpp"

namespace ferero {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

void check_keys(const Json& obj, const std::set<std::string>& allowed,
                const std::string& where) {
  if (!obj.is_object()) fail(where + ": expected an object");
  for (const auto& item : obj.items()) {
    if (!allowed.contains(item.key()))
      fail(where + ": unknown key \"" + item.key() + "\"");
  }
}

double as_number(const Json& v, const std::string& where) {
  if (!v.is_number()) fail(where + ": expected a number");
  return v.get<double>();
}

Index as_count(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where + ": expected an integer");
  const auto n = v.get<std::int64_t>();
  if (n < 0) fail(where + ": must be non-negative");
  return static_cast<Index>(n);
}

Vector as_vector(const Json& v, const std::string& where) {
  if (!v.is_array()) fail(where + ": expected an array of numbers");
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (const auto& x : v) out(i++) = as_number(x, where);
  return out;
}

Matrix as_matrix(const Json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) fail(where + ": expected an array of rows");
  const auto cols = v.front().size();
  Matrix out(static_cast<Index>(v.size()), static_cast<Index>(cols));
  Index r = 0;
  for (const auto& row : v) {
    if (!row.is_array() || row.size() != cols)
      fail(where + ": ragged matrix rows");
    Index c = 0;
    for (const auto& x : row) out(r, c++) = as_number(x, where);
    ++r;
  }
  return out;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

ProblemSpec parse_problem(const Json& j) {
  check_keys(j, {"kind", "q", "m", "components", "spread", "gen_seed"},
             "problem");
  ProblemSpec spec;
  if (j.contains("kind")) spec.kind = j["kind"].get<std::string>();
  if (spec.kind != "synthetic_concave" && spec.kind != "finite_sum_quadratic")
    fail("problem: unknown kind \"" + spec.kind + "\"");
  if (j.contains("q")) spec.q = as_count(j["q"], "problem.q");
  if (spec.q < 1) fail("problem: q must be >= 1");
  if (j.contains("m")) spec.m = as_count(j["m"], "problem.m");
  if (j.contains("components"))
    spec.components = as_count(j["components"], "problem.components");
  if (j.contains("spread")) spec.spread = as_number(j["spread"], "problem.spread");
  if (j.contains("gen_seed"))
    spec.gen_seed = static_cast<std::uint64_t>(as_count(j["gen_seed"], "problem.gen_seed"));
  if (spec.kind == "synthetic_concave") {
    spec.m = 2;
  } else {
    if (spec.m < 2) fail("problem: m must be >= 2");
    if (spec.components < 1) fail("problem: components must be >= 1");
    if (spec.spread <= 0.0) fail("problem: spread must be positive");
  }
  return spec;
}

PreferenceSpec parse_preference(const Json& j, Index num_objectives) {
  check_keys(j,
             {"cone", "ray", "two_point", "eq", "ineq", "c_g", "c_h"},
             "preference");
  PreferenceSpec spec;

  if (j.contains("cone")) {
    const Json& c = j["cone"];
    check_keys(c, {"a", "rays", "controlled_ascent"}, "preference.cone");
    if (c.size() != 1) fail("preference.cone: give exactly one of a/rays/controlled_ascent");
    if (c.contains("a")) {
      spec.cone_kind = PreferenceSpec::ConeKind::matrix;
      spec.cone_matrix = as_matrix(c["a"], "preference.cone.a");
      if (spec.cone_matrix.rows() != num_objectives ||
          spec.cone_matrix.cols() != num_objectives)
        fail("preference.cone.a: must be M x M");
    } else if (c.contains("rays")) {
      spec.cone_kind = PreferenceSpec::ConeKind::rays;
      spec.cone_rays = as_matrix(c["rays"], "preference.cone.rays").transpose();
      if (spec.cone_rays.rows() != num_objectives)
        fail("preference.cone.rays: each ray must have M entries");
    } else {
      const Json& ca = c["controlled_ascent"];
      check_keys(ca, {"f_go", "base_rays"}, "preference.cone.controlled_ascent");
      if (!ca.contains("f_go")) fail("preference.cone.controlled_ascent: f_go is required");
      spec.cone_kind = PreferenceSpec::ConeKind::controlled_ascent;
      spec.f_go = as_vector(ca["f_go"], "controlled_ascent.f_go");
      if (spec.f_go.size() != num_objectives)
        fail("controlled_ascent.f_go: must have M entries");
      if (ca.contains("base_rays")) {
        spec.cone_rays =
            as_matrix(ca["base_rays"], "controlled_ascent.base_rays").transpose();
        if (spec.cone_rays.rows() != num_objectives)
          fail("controlled_ascent.base_rays: each ray must have M entries");
      } else {
        spec.cone_rays = Matrix::Identity(num_objectives, num_objectives);
      }
    }
  }

  int constraint_sources = 0;
  if (j.contains("ray")) {
    ++constraint_sources;
    spec.constraint_kind = PreferenceSpec::ConstraintKind::ray;
    spec.ray = as_vector(j["ray"], "preference.ray");
    if (spec.ray.size() != num_objectives) fail("preference.ray: must have M entries");
    if (spec.ray.norm() <= 0.0) fail("preference.ray: zero vector");
  }
  if (j.contains("two_point")) {
    ++constraint_sources;
    const Json& tp = j["two_point"];
    check_keys(tp, {"f1", "f2"}, "preference.two_point");
    if (!tp.contains("f1") || !tp.contains("f2"))
      fail("preference.two_point: f1 and f2 are required");
    spec.constraint_kind = PreferenceSpec::ConstraintKind::two_point;
    spec.point_a = as_vector(tp["f1"], "two_point.f1");
    spec.point_b = as_vector(tp["f2"], "two_point.f2");
    if (spec.point_a.size() != num_objectives ||
        spec.point_b.size() != num_objectives)
      fail("preference.two_point: points must have M entries");
    if ((spec.point_a - spec.point_b).norm() <= 0.0)
      fail("preference.two_point: points coincide");
  }
  if (j.contains("eq") || j.contains("ineq")) {
    ++constraint_sources;
    spec.constraint_kind = PreferenceSpec::ConstraintKind::explicit_mats;
    if (j.contains("eq")) {
      const Json& e = j["eq"];
      check_keys(e, {"mat", "vec"}, "preference.eq");
      if (!e.contains("mat") || !e.contains("vec"))
        fail("preference.eq: mat and vec are required");
      spec.eq_mat = as_matrix(e["mat"], "preference.eq.mat");
      spec.eq_vec = as_vector(e["vec"], "preference.eq.vec");
      if (spec.eq_mat.cols() != num_objectives ||
          spec.eq_vec.size() != spec.eq_mat.rows())
        fail("preference.eq: dimension mismatch");
    }
    if (j.contains("ineq")) {
      const Json& e = j["ineq"];
      check_keys(e, {"mat", "vec"}, "preference.ineq");
      if (!e.contains("mat") || !e.contains("vec"))
        fail("preference.ineq: mat and vec are required");
      spec.ineq_mat = as_matrix(e["mat"], "preference.ineq.mat");
      spec.ineq_vec = as_vector(e["vec"], "preference.ineq.vec");
      if (spec.ineq_mat.cols() != num_objectives ||
          spec.ineq_vec.size() != spec.ineq_mat.rows())
        fail("preference.ineq: dimension mismatch");
    }
  }
  if (constraint_sources > 1)
    fail("preference: give at most one of ray / two_point / eq+ineq");

  if (j.contains("c_g")) spec.ineq_gain = as_number(j["c_g"], "preference.c_g");
  if (j.contains("c_h")) spec.eq_gain = as_number(j["c_h"], "preference.c_h");
  if (spec.ineq_gain <= 0.0 || spec.eq_gain <= 0.0)
    fail("preference: c_g and c_h must be strictly positive");

  // cone matrices that do not depend on theta_0 can be validated now
  if (!spec.needs_initial_objectives()) {
    try {
      spec.resolve(num_objectives).validate();
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      fail(std::string("preference: ") + e.what());
    }
  }
  return spec;
}

SolverVariant parse_variant(const std::string& s) {
  if (s == "meta") return SolverVariant::meta;
  if (s == "single_loop") return SolverVariant::single_loop;
  if (s == "stochastic") return SolverVariant::stochastic;
  if (s == "linear_scalarization") return SolverVariant::linear_scalarization;
  fail("solver: unknown variant \"" + s + "\"");
}

std::string variant_name(SolverVariant v) {
  switch (v) {
    case SolverVariant::meta: return "meta";
    case SolverVariant::single_loop: return "single_loop";
    case SolverVariant::stochastic: return "stochastic";
    case SolverVariant::linear_scalarization: return "linear_scalarization";
  }
  return "meta";
}

InitKind parse_init_kind(const std::string& s) {
  if (s == "gaussian") return InitKind::gaussian;
  if (s == "easy_near_pf") return InitKind::easy_near_pf;
  if (s == "hard_near_pf") return InitKind::hard_near_pf;
  if (s == "explicit") return InitKind::explicit_theta;
  fail("init: unknown kind \"" + s + "\"");
}

std::string init_name(InitKind k) {
  switch (k) {
    case InitKind::gaussian: return "gaussian";
    case InitKind::easy_near_pf: return "easy_near_pf";
    case InitKind::hard_near_pf: return "hard_near_pf";
    case InitKind::explicit_theta: return "explicit";
  }
  return "gaussian";
}

void parse_solver(const Json& j, SolverConfig& cfg, Index num_objectives) {
  check_keys(j,
             {"variant", "alpha", "alpha_decay_sqrt", "gamma", "t", "inner",
              "stop_residual", "domain", "record_every", "record_theta",
              "weights"},
             "solver");
  if (j.contains("variant"))
    cfg.variant = parse_variant(j["variant"].get<std::string>());
  if (j.contains("alpha")) cfg.alpha = as_number(j["alpha"], "solver.alpha");
  if (j.contains("alpha_decay_sqrt")) {
    if (!j["alpha_decay_sqrt"].is_boolean())
      fail("solver.alpha_decay_sqrt: expected a boolean");
    cfg.alpha_decay_sqrt = j["alpha_decay_sqrt"].get<bool>();
  }
  if (j.contains("gamma")) cfg.gamma = as_number(j["gamma"], "solver.gamma");
  if (j.contains("t")) cfg.iterations = as_count(j["t"], "solver.t");
  if (j.contains("inner")) {
    const Json& in = j["inner"];
    check_keys(in, {"gamma", "max_iters", "tol"}, "solver.inner");
    if (in.contains("gamma"))
      cfg.inner.step = as_number(in["gamma"], "solver.inner.gamma");
    if (in.contains("max_iters"))
      cfg.inner.max_iters =
          static_cast<int>(as_count(in["max_iters"], "solver.inner.max_iters"));
    if (in.contains("tol")) cfg.inner.tol = as_number(in["tol"], "solver.inner.tol");
  }
  if (j.contains("stop_residual"))
    cfg.stop_residual = as_number(j["stop_residual"], "solver.stop_residual");
  if (j.contains("domain")) {
    const auto s = j["domain"].get<std::string>();
    if (s == "adaptive")
      cfg.domain = MultiplierDomain::adaptive;
    else if (s == "simplified")
      cfg.domain = MultiplierDomain::simplified;
    else
      fail("solver.domain: expected \"adaptive\" or \"simplified\"");
  }
  if (j.contains("record_every"))
    cfg.record_every = as_count(j["record_every"], "solver.record_every");
  if (j.contains("record_theta")) {
    if (!j["record_theta"].is_boolean())
      fail("solver.record_theta: expected a boolean");
    cfg.record_theta = j["record_theta"].get<bool>();
  }
  if (j.contains("weights")) {
    cfg.ls_weights = as_vector(j["weights"], "solver.weights");
    if (cfg.ls_weights.size() != num_objectives)
      fail("solver.weights: must have M entries");
  }

  if (cfg.alpha <= 0.0 || cfg.gamma <= 0.0) fail("solver: steps must be positive");
  if (cfg.iterations < 1) fail("solver: t must be >= 1");
  if (cfg.record_every < 1) fail("solver: record_every must be >= 1");
  if (cfg.inner.step <= 0.0 || cfg.inner.max_iters < 1 || cfg.inner.tol < 0.0)
    fail("solver.inner: invalid settings");
  if (cfg.variant == SolverVariant::linear_scalarization) {
    if (cfg.ls_weights.size() != num_objectives)
      fail("solver: linear_scalarization requires weights");
    if (cfg.ls_weights.minCoeff() < 0.0 ||
        std::abs(cfg.ls_weights.sum() - 1.0) > 1e-8)
      fail("solver.weights: must be >= 0 and sum to 1");
  }
}

void parse_init(const Json& j, SolverConfig& cfg, Index q) {
  check_keys(j, {"kind", "theta0"}, "init");
  if (j.contains("kind")) cfg.init = parse_init_kind(j["kind"].get<std::string>());
  if (cfg.init == InitKind::explicit_theta) {
    if (!j.contains("theta0")) fail("init: explicit kind requires theta0");
    Vector theta0 = as_vector(j["theta0"], "init.theta0");
    if (theta0.size() != q) fail("init.theta0: must have q entries");
    cfg.theta0 = std::move(theta0);
  } else if (j.contains("theta0")) {
    fail("init.theta0: only valid with kind \"explicit\"");
  }
}

void cross_validate(const ExperimentSpec& spec) {
  const auto check_pref = [&](const PreferenceSpec& p) {
    const bool single_loop_family =
        spec.solver.variant == SolverVariant::single_loop ||
        spec.solver.variant == SolverVariant::stochastic;
    const bool has_ineq =
        p.constraint_kind == PreferenceSpec::ConstraintKind::explicit_mats &&
        p.ineq_mat.rows() > 0;
    if (single_loop_family && has_ineq)
      fail("single-loop variants support equality constraints only (M_g = 0)");
  };
  if (spec.preference) check_pref(*spec.preference);
  if (spec.suite) {
    if (spec.suite->from_rays) {
      check_pref(spec.suite->shared);
    } else {
      for (const auto& p : spec.suite->list) check_pref(p);
    }
  }
  if (spec.solver.variant == SolverVariant::stochastic &&
      spec.problem.kind == "synthetic_concave")
    fail("stochastic variant requires a problem with a sampler "
         "(use finite_sum_quadratic)");
}

Json preference_to_json(const PreferenceSpec& p) {
  Json j = Json::object();
  switch (p.cone_kind) {
    case PreferenceSpec::ConeKind::identity:
      break;
    case PreferenceSpec::ConeKind::matrix:
      j["cone"] = Json{{"a", matrix_to_json(p.cone_matrix)}};
      break;
    case PreferenceSpec::ConeKind::rays:
      j["cone"] = Json{{"rays", matrix_to_json(p.cone_rays.transpose())}};
      break;
    case PreferenceSpec::ConeKind::controlled_ascent:
      j["cone"] = Json{{"controlled_ascent",
                        Json{{"f_go", vector_to_json(p.f_go)},
                             {"base_rays",
                              matrix_to_json(p.cone_rays.transpose())}}}};
      break;
  }
  switch (p.constraint_kind) {
    case PreferenceSpec::ConstraintKind::none:
      break;
    case PreferenceSpec::ConstraintKind::ray:
      j["ray"] = vector_to_json(p.ray);
      break;
    case PreferenceSpec::ConstraintKind::two_point:
      j["two_point"] = Json{{"f1", vector_to_json(p.point_a)},
                            {"f2", vector_to_json(p.point_b)}};
      break;
    case PreferenceSpec::ConstraintKind::explicit_mats:
      if (p.eq_mat.rows() > 0)
        j["eq"] = Json{{"mat", matrix_to_json(p.eq_mat)},
                       {"vec", vector_to_json(p.eq_vec)}};
      if (p.ineq_mat.rows() > 0)
        j["ineq"] = Json{{"mat", matrix_to_json(p.ineq_mat)},
                         {"vec", vector_to_json(p.ineq_vec)}};
      break;
  }
  j["c_g"] = p.ineq_gain;
  j["c_h"] = p.eq_gain;
  return j;
}

}  // namespace

Problem ProblemSpec::build() const {
  if (kind == "synthetic_concave") return synthetic_concave(q);
  if (kind == "finite_sum_quadratic") {
    RandomStream rng(gen_seed);
    std::vector<FiniteSumComponent> comps;
    const Index qq = q;
    const Index mm = m;
    for (Index c = 0; c < components; ++c) {
      Matrix anchors(qq, mm);
      for (Index j = 0; j < mm; ++j)
        for (Index i = 0; i < qq; ++i) anchors(i, j) = spread * rng.normal();
      auto objectives = [anchors, qq, mm](const Vector& theta) {
        Vector f(mm);
        for (Index j = 0; j < mm; ++j)
          f(j) = 0.5 * (theta - anchors.col(j)).squaredNorm() /
                 static_cast<double>(qq);
        return f;
      };
      auto jacobian = [anchors, qq, mm](const Vector& theta) {
        Matrix jac(qq, mm);
        for (Index j = 0; j < mm; ++j)
          jac.col(j) = (theta - anchors.col(j)) / static_cast<double>(qq);
        return jac;
      };
      comps.push_back({objectives, jacobian});
    }
    return finite_sum_problem(qq, mm, std::move(comps));
  }
  throw ConfigError("problem: unknown kind \"" + kind + "\"");
}

Preference PreferenceSpec::resolve(Index num_objectives,
                                   const std::optional<Vector>& f0) const {
  Preference pref = Preference::identity(num_objectives);
  switch (cone_kind) {
    case ConeKind::identity:
      break;
    case ConeKind::matrix:
      pref.cone_a = cone_matrix;
      break;
    case ConeKind::rays:
      pref.cone_a = cone_from_rays(cone_rays).halfspaces;
      break;
    case ConeKind::controlled_ascent: {
      if (!f0)
        throw Error(
            "controlled-ascent cone needs the objectives at theta_0");
      pref.cone_a = controlled_ascent_cone(*f0, f_go, cone_rays).halfspaces;
      break;
    }
  }
  switch (constraint_kind) {
    case ConstraintKind::none:
      break;
    case ConstraintKind::ray: {
      auto [mat, vec] = ray_to_equality(ray);
      pref.eq_mat = std::move(mat);
      pref.eq_vec = std::move(vec);
      break;
    }
    case ConstraintKind::two_point: {
      auto [mat, vec] = two_points_to_equality(point_a, point_b);
      pref.eq_mat = std::move(mat);
      pref.eq_vec = std::move(vec);
      break;
    }
    case ConstraintKind::explicit_mats:
      if (eq_mat.rows() > 0) {
        pref.eq_mat = eq_mat;
        pref.eq_vec = eq_vec;
      }
      if (ineq_mat.rows() > 0) {
        pref.ineq_mat = ineq_mat;
        pref.ineq_vec = ineq_vec;
      }
      break;
  }
  pref.ineq_gain = ineq_gain;
  pref.eq_gain = eq_gain;
  pref.validate();
  return pref;
}

std::vector<PreferenceSpec> SuiteSpec::expand() const {
  if (!from_rays) return list;
  std::vector<PreferenceSpec> out;
  for (const auto& r : uniform_preference_rays(count, angle_lo, angle_hi)) {
    PreferenceSpec p = shared;
    p.constraint_kind = PreferenceSpec::ConstraintKind::ray;
    p.ray = r;
    out.push_back(std::move(p));
  }
  return out;
}

ExperimentSpec parse_config(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const std::exception& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(root,
             {"problem", "preference", "preferences", "solver", "init",
              "seed", "hv_ref", "output"},
             "config");

  ExperimentSpec spec;
  if (root.contains("problem")) spec.problem = parse_problem(root["problem"]);
  const Problem probe = spec.problem.build();
  const Index m = probe.num_objectives();
  const Index q = probe.decision_dim();

  if (root.contains("preference") && root.contains("preferences"))
    fail("config: give either \"preference\" or \"preferences\", not both");
  if (!root.contains("preference") && !root.contains("preferences"))
    fail("config: a \"preference\" (run) or \"preferences\" (suite) block is required");

  if (root.contains("preference"))
    spec.preference = parse_preference(root["preference"], m);

  if (root.contains("preferences")) {
    const Json& ps = root["preferences"];
    check_keys(ps, {"rays", "list", "cone", "c_g", "c_h"}, "preferences");
    SuiteSpec suite;
    if (ps.contains("rays") == ps.contains("list"))
      fail("preferences: give exactly one of \"rays\" or \"list\"");
    if (ps.contains("rays")) {
      if (m != 2) fail("preferences.rays: ray fans require M = 2");
      const Json& fan = ps["rays"];
      check_keys(fan, {"count", "angle_lo", "angle_hi"}, "preferences.rays");
      if (!fan.contains("count") || !fan.contains("angle_lo") ||
          !fan.contains("angle_hi"))
        fail("preferences.rays: count, angle_lo and angle_hi are required");
      suite.from_rays = true;
      suite.count = as_count(fan["count"], "preferences.rays.count");
      suite.angle_lo = as_number(fan["angle_lo"], "preferences.rays.angle_lo");
      suite.angle_hi = as_number(fan["angle_hi"], "preferences.rays.angle_hi");
      Json shared = Json::object();
      if (ps.contains("cone")) shared["cone"] = ps["cone"];
      if (ps.contains("c_g")) shared["c_g"] = ps["c_g"];
      if (ps.contains("c_h")) shared["c_h"] = ps["c_h"];
      suite.shared = parse_preference(shared, m);
      // validates count/angle ranges
      uniform_preference_rays(suite.count, suite.angle_lo, suite.angle_hi);
    } else {
      if (ps.contains("cone") || ps.contains("c_g") || ps.contains("c_h"))
        fail("preferences: cone/c_g/c_h belong inside each list entry");
      for (const auto& item : ps["list"])
        suite.list.push_back(parse_preference(item, m));
      if (suite.list.empty()) fail("preferences.list: empty");
    }
    spec.suite = std::move(suite);
  }

  if (root.contains("solver")) parse_solver(root["solver"], spec.solver, m);
  else parse_solver(Json::object(), spec.solver, m);
  if (root.contains("init")) parse_init(root["init"], spec.solver, q);

  if (root.contains("seed"))
    spec.solver.seed = static_cast<std::uint64_t>(as_count(root["seed"], "seed"));

  if (root.contains("hv_ref")) {
    spec.hv_ref = as_vector(root["hv_ref"], "hv_ref");
    if (spec.hv_ref.size() != m) fail("hv_ref: must have M entries");
  } else {
    spec.hv_ref = Vector::Ones(m);
  }

  if (root.contains("output")) {
    const Json& out = root["output"];
    check_keys(out, {"dir", "prefix"}, "output");
    if (out.contains("dir")) spec.output.dir = out["dir"].get<std::string>();
    if (out.contains("prefix"))
      spec.output.prefix = out["prefix"].get<std::string>();
    if (spec.output.prefix.empty()) fail("output.prefix: empty");
  }

  cross_validate(spec);
  return spec;
}

std::string serialize_config(const ExperimentSpec& spec) {
  Json root = Json::object();

  Json problem{{"kind", spec.problem.kind}, {"q", spec.problem.q}};
  if (spec.problem.kind == "finite_sum_quadratic") {
    problem["m"] = spec.problem.m;
    problem["components"] = spec.problem.components;
    problem["spread"] = spec.problem.spread;
    problem["gen_seed"] = spec.problem.gen_seed;
  }
  root["problem"] = std::move(problem);

  if (spec.preference) root["preference"] = preference_to_json(*spec.preference);
  if (spec.suite) {
    Json ps = Json::object();
    if (spec.suite->from_rays) {
      ps["rays"] = Json{{"count", spec.suite->count},
                        {"angle_lo", spec.suite->angle_lo},
                        {"angle_hi", spec.suite->angle_hi}};
      const Json shared = preference_to_json(spec.suite->shared);
      if (shared.contains("cone")) ps["cone"] = shared["cone"];
      ps["c_g"] = spec.suite->shared.ineq_gain;
      ps["c_h"] = spec.suite->shared.eq_gain;
    } else {
      Json list = Json::array();
      for (const auto& p : spec.suite->list) list.push_back(preference_to_json(p));
      ps["list"] = std::move(list);
    }
    root["preferences"] = std::move(ps);
  }

  Json solver{{"variant", variant_name(spec.solver.variant)},
              {"alpha", spec.solver.alpha},
              {"alpha_decay_sqrt", spec.solver.alpha_decay_sqrt},
              {"gamma", spec.solver.gamma},
              {"t", spec.solver.iterations},
              {"inner", Json{{"gamma", spec.solver.inner.step},
                             {"max_iters", spec.solver.inner.max_iters},
                             {"tol", spec.solver.inner.tol}}},
              {"stop_residual", spec.solver.stop_residual},
              {"domain", spec.solver.domain == MultiplierDomain::adaptive
                             ? "adaptive"
                             : "simplified"},
              {"record_every", spec.solver.record_every},
              {"record_theta", spec.solver.record_theta}};
  if (spec.solver.ls_weights.size() > 0)
    solver["weights"] = vector_to_json(spec.solver.ls_weights);
  root["solver"] = std::move(solver);

  Json init{{"kind", init_name(spec.solver.init)}};
  if (spec.solver.init == InitKind::explicit_theta && spec.solver.theta0)
    init["theta0"] = vector_to_json(*spec.solver.theta0);
  root["init"] = std::move(init);

  root["seed"] = spec.solver.seed;
  root["hv_ref"] = vector_to_json(spec.hv_ref);
  if (!spec.output.dir.empty() || spec.output.prefix != "run") {
    Json out = Json::object();
    if (!spec.output.dir.empty()) out["dir"] = spec.output.dir;
    out["prefix"] = spec.output.prefix;
    root["output"] = std::move(out);
  }
  return root.dump(2) + "\n";
}

}  // namespace ferero
