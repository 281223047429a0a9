#ifndef FERERO_METRICS_HPP_
#define FERERO_METRICS_HPP_

#include <vector>

#include "ferero/types.hpp"

namespace ferero {

/// Exact hypervolume of the region dominated by `points` relative to the
/// reference point `ref` (the Nadir point): the Lebesgue measure of
/// {q : exists p in points with p <= q <= ref}. Points not componentwise
/// below the reference contribute nothing and are clipped out. Exact sweep
/// for M = 2, recursive slicing for M = 3, 4; larger M is unsupported.
double hypervolume(const std::vector<Vector>& points, const Vector& ref);

/// Componentwise product r .* f; constant across components exactly when
/// the objectives align with the preference 1/r.
Vector relative_loss_profile(const Vector& r, const Vector& f);

/// Retains the points not strictly cone-dominated by any other point.
std::vector<Vector> nondominated_filter(const std::vector<Vector>& points,
                                        const Matrix& cone_a);

/// Distance from a 2-D objective point to the analytic Pareto front of the
/// concave synthetic benchmark, {(1-e^{-(s-1)^2}, 1-e^{-(s+1)^2}) :
/// s in [-1, 1]}, minimized over a 10^4-interval parameter grid.
double pf_distance_synthetic(const Vector& f);

}  // namespace ferero

#endif  // FERERO_METRICS_HPP_
