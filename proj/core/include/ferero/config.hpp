#ifndef FERERO_CONFIG_HPP_
#define FERERO_CONFIG_HPP_

#include <optional>
#include <string>
#include <vector>

#include "ferero/problem.hpp"
#include "ferero/solvers.hpp"
#include "ferero/types.hpp"

namespace ferero {

/// Problem selection by name + parameters.
struct ProblemSpec {
  std::string kind = "synthetic_concave";
  Index q = 20;
  // finite_sum_quadratic only: M objectives, each an average of `components`
  // random quadratic bowls with anchors ~ N(0, spread^2) from gen_seed
  Index m = 2;
  Index components = 4;
  double spread = 1.0;
  std::uint64_t gen_seed = 0;

  Problem build() const;
};

/// Declarative preference: ordering cone plus absolute constraints. A
/// controlled-ascent cone depends on the objectives at the initial iterate,
/// so it is resolved per run once theta_0 is known.
struct PreferenceSpec {
  enum class ConeKind { identity, matrix, rays, controlled_ascent };
  enum class ConstraintKind { none, ray, two_point, explicit_mats };

  ConeKind cone_kind = ConeKind::identity;
  Matrix cone_matrix;  // ConeKind::matrix
  Matrix cone_rays;    // ConeKind::rays; base rays for controlled_ascent
  Vector f_go;         // controlled-ascent target objective values

  ConstraintKind constraint_kind = ConstraintKind::none;
  Vector ray;                // alignment ray in objective space
  Vector point_a, point_b;   // two-point line constraint
  Matrix eq_mat, ineq_mat;   // explicit constraint matrices
  Vector eq_vec, ineq_vec;

  double ineq_gain = 1.0;  // c_g
  double eq_gain = 1.0;    // c_h

  bool needs_initial_objectives() const {
    return cone_kind == ConeKind::controlled_ascent;
  }

  /// Materializes the Preference. f0 (objectives at theta_0) is required
  /// when the cone is controlled_ascent.
  Preference resolve(Index num_objectives,
                     const std::optional<Vector>& f0 = std::nullopt) const;
};

/// Suite preference source: a generated fan of rays sharing one cone/gain
/// setup, or an explicit list.
struct SuiteSpec {
  bool from_rays = false;
  Index count = 5;
  double angle_lo = 0.0;
  double angle_hi = 0.0;
  PreferenceSpec shared;  // cone and gains applied to every generated ray
  std::vector<PreferenceSpec> list;

  std::vector<PreferenceSpec> expand() const;
};

struct OutputSpec {
  std::string dir;  // empty = unset (CLI falls back to --out / env / ".")
  std::string prefix = "run";
};

/// A fully validated experiment with all defaults applied.
struct ExperimentSpec {
  ProblemSpec problem;
  std::optional<PreferenceSpec> preference;  // single-run mode
  std::optional<SuiteSpec> suite;            // suite mode
  SolverConfig solver;
  Vector hv_ref;  // hypervolume reference; defaults to ones
  OutputSpec output;
};

/// Parses and validates a JSON experiment config. Unknown keys anywhere in
/// the document are rejected; dimension inconsistencies, invalid cones, and
/// solver/constraint mismatches (e.g. inequality constraints with the
/// single-loop variant) fail here, before any computation. Throws
/// ConfigError.
ExperimentSpec parse_config(const std::string& text);

/// Normalized echo of the spec with every default explicit. Parsing the
/// result yields the same normal form (idempotent).
std::string serialize_config(const ExperimentSpec& spec);

}  // namespace ferero

#endif  // FERERO_CONFIG_HPP_
