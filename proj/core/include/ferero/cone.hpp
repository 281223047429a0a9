#ifndef FERERO_CONE_HPP_
#define FERERO_CONE_HPP_

#include <optional>
#include <utility>

#include "ferero/types.hpp"

namespace ferero {

/// Pointed full-dimensional polyhedral ordering cone
///   C = {y in R^M : A y >= 0},
/// stored by its half-space matrix A (full rank, unit rows) and, when built
/// from rays, the extreme-ray matrix Y (unit columns). For a simplicial cone
/// each row of A annihilates exactly M-1 ray columns and is positive on the
/// remaining one.
struct Cone {
  Matrix halfspaces;           // A, M x M
  std::optional<Matrix> rays;  // Y, M x M, columns are unit extreme rays
};

/// Strict cone dominance: v dominates w iff every component of A(v - w)
/// is < 0. With A = I this is strict componentwise (Pareto) dominance.
/// Exact comparison, no tolerance: dominance is a decision on computed data.
bool dominates(const Matrix& a, const Vector& v, const Vector& w);

/// Cone membership A y >= 0, with -1e-12 slack per component so points on
/// facets survive round-off.
bool contains(const Matrix& a, const Vector& y);

/// Converts the extreme-ray description Y (square, full rank, unit columns)
/// to the half-space matrix A with unit rows, C_A = {Y s : s >= 0}. Facets
/// are enumerated from (M-1)-subsets of ray columns; each normal is oriented
/// against the interior point c = Y * ones. Row j is the facet obtained by
/// dropping ray j, so A * Y has a positive diagonal and zeros elsewhere.
/// Throws ConeError on rank-deficient, non-pointed, or flat input.
Matrix rays_to_halfspaces(const Matrix& rays);

/// Builds a Cone from rays (see rays_to_halfspaces).
Cone cone_from_rays(const Matrix& rays);

/// Cone permitting controlled ascent toward a target objective value:
/// appends the ray (f0 - f_go)/||f0 - f_go|| to base_rays, reduces the
/// result to the extreme rays of its conic hull, and converts to
/// half-spaces. The returned cone contains f0 - f_go, so a step with
/// f_go - f0 in -C_A counts as improvement. A ray parallel to an existing
/// base ray is absorbed. Requires the hull to be pointed, full-dimensional,
/// and simplicial (exactly M extreme rays).
Cone controlled_ascent_cone(const Vector& f0, const Vector& f_go,
                            const Matrix& base_rays);

/// Equality constraints pinning F to the ray through v: returns (E, e) with
/// E an orthonormal basis of the orthogonal complement of span{v}
/// ((M-1) x M, E v = 0) and e = 0, so E F + e = 0 iff F is parallel to v.
std::pair<Matrix, Vector> ray_to_equality(const Vector& v);

/// Equality constraints for the line through two objective-space points:
/// E (f1 - f2) = 0 and e = -E f1, so both points satisfy E f + e = 0.
std::pair<Matrix, Vector> two_points_to_equality(const Vector& f1,
                                                 const Vector& f2);

}  // namespace ferero

#endif  // FERERO_CONE_HPP_
