#include "ferero/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ferero/cone.hpp"

namespace ferero {

namespace {

// 2-D sweep over the non-dominated staircase, ascending in f1.
double hv_2d(std::vector<Vector> pts, const Vector& ref) {
  std::sort(pts.begin(), pts.end(), [](const Vector& a, const Vector& b) {
    return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1));
  });
  double volume = 0.0;
  double best_f2 = std::numeric_limits<double>::infinity();
  std::vector<Vector> stairs;
  for (const auto& p : pts) {
    if (p(1) < best_f2) {
      stairs.push_back(p);
      best_f2 = p(1);
    }
  }
  for (std::size_t i = 0; i < stairs.size(); ++i) {
    const double next_f1 = (i + 1 < stairs.size()) ? stairs[i + 1](0) : ref(0);
    volume += (next_f1 - stairs[i](0)) * (ref(1) - stairs[i](1));
  }
  return volume;
}

double hv_recursive(const std::vector<Vector>& pts, const Vector& ref) {
  const Index m = ref.size();
  if (pts.empty()) return 0.0;
  if (m == 2) return hv_2d(pts, ref);

  // slice along the last coordinate; within a slab the dominated region is
  // the (m-1)-dimensional region of the points already passed
  std::vector<Vector> sorted = pts;
  std::sort(sorted.begin(), sorted.end(),
            [m](const Vector& a, const Vector& b) {
              return a(m - 1) < b(m - 1);
            });

  const Vector ref_lower = ref.head(m - 1);
  std::vector<Vector> active;
  double volume = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    active.push_back(sorted[i].head(m - 1));
    const double z_lo = sorted[i](m - 1);
    const double z_hi =
        (i + 1 < sorted.size()) ? sorted[i + 1](m - 1) : ref(m - 1);
    if (z_hi > z_lo)
      volume += hv_recursive(active, ref_lower) * (z_hi - z_lo);
  }
  return volume;
}

}  // namespace

double hypervolume(const std::vector<Vector>& points, const Vector& ref) {
  const Index m = ref.size();
  if (m < 2) throw Error("hypervolume: at least two objectives required");
  if (m > 4) throw Error("hypervolume: M > 4 is unsupported");
  if (!ref.allFinite()) throw Error("hypervolume: reference must be finite");

  std::vector<Vector> kept;
  for (const auto& p : points) {
    detail::require(p.size() == m, "hypervolume: point has wrong size");
    if ((p.array() <= ref.array()).all()) kept.push_back(p);
  }
  return hv_recursive(kept, ref);
}

Vector relative_loss_profile(const Vector& r, const Vector& f) {
  detail::require(r.size() == f.size(),
                  "relative_loss_profile: dimension mismatch");
  return r.cwiseProduct(f);
}

std::vector<Vector> nondominated_filter(const std::vector<Vector>& points,
                                        const Matrix& cone_a) {
  std::vector<Vector> kept;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
      if (j == i) continue;
      if (dominates(cone_a, points[j], points[i])) dominated = true;
    }
    if (!dominated) kept.push_back(points[i]);
  }
  return kept;
}

double pf_distance_synthetic(const Vector& f) {
  detail::require(f.size() == 2, "pf_distance_synthetic: expects M = 2");
  constexpr int kGridIntervals = 10000;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= kGridIntervals; ++k) {
    const double s = -1.0 + 2.0 * static_cast<double>(k) / kGridIntervals;
    const double f1 = 1.0 - std::exp(-(s - 1.0) * (s - 1.0));
    const double f2 = 1.0 - std::exp(-(s + 1.0) * (s + 1.0));
    const double dist = std::hypot(f(0) - f1, f(1) - f2);
    best = std::min(best, dist);
  }
  return best;
}

}  // namespace ferero
