#include "ferero/cone.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Dense>

namespace ferero {

namespace {

constexpr double kMembershipSlack = 1e-12;
constexpr double kFacetSlack = 1e-10;
constexpr double kParallelTol = 1e-10;

// Unit kernel vector of the span of the given columns (expected rank M-1);
// empty result if the subset is degenerate.
std::optional<Vector> facet_normal(const Matrix& cols) {
  Eigen::JacobiSVD<Matrix> svd(cols.transpose(),
                               Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Index m = cols.rows();
  svd.setThreshold(1e-9);
  if (svd.rank() != m - 1) return std::nullopt;
  Vector a = svd.matrixV().col(m - 1);
  return a.normalized();
}

// All valid facet normals of cone(rays), oriented so a . (rays * ones) > 0,
// deduplicated. Each entry remembers which column subset generated it.
struct FacetCandidate {
  Vector normal;
  Index dropped;  // leave-one-out index for square inputs, -1 otherwise
};

void enumerate_subsets(Index k, Index pick, std::vector<std::vector<Index>>& out) {
  std::vector<Index> cur;
  // iterative combinations; k and pick are desk scale (M <= 4, k <= M+1)
  std::function<void(Index)> rec = [&](Index start) {
    if (static_cast<Index>(cur.size()) == pick) {
      out.push_back(cur);
      return;
    }
    for (Index i = start; i < k; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

std::vector<FacetCandidate> valid_facets(const Matrix& rays) {
  const Index m = rays.rows();
  const Index k = rays.cols();
  const Vector interior = rays.rowwise().sum();

  std::vector<std::vector<Index>> subsets;
  enumerate_subsets(k, m - 1, subsets);

  std::vector<FacetCandidate> kept;
  for (const auto& subset : subsets) {
    Matrix cols(m, m - 1);
    for (Index j = 0; j < m - 1; ++j) cols.col(j) = rays.col(subset[j]);
    auto normal = facet_normal(cols);
    if (!normal) continue;
    Vector a = *normal;

    const Vector support = rays.transpose() * a;
    if (support.cwiseAbs().maxCoeff() <= kFacetSlack)
      throw ConeError("cone is not full-dimensional: rays lie in a hyperplane");
    const double side = a.dot(interior);
    if (side < 0.0) a = -a;
    if ((rays.transpose() * a).minCoeff() < -kFacetSlack) continue;

    bool duplicate = false;
    for (const auto& f : kept) {
      if (f.normal.dot(a) > 1.0 - kParallelTol) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;

    Index dropped = -1;
    if (k == m) {
      for (Index i = 0; i < k; ++i) {
        bool in_subset = false;
        for (Index s : subset)
          if (s == i) in_subset = true;
        if (!in_subset) dropped = i;
      }
    }
    kept.push_back({std::move(a), dropped});
  }
  return kept;
}

Matrix dedupe_rays(const Matrix& rays) {
  std::vector<Index> keep;
  for (Index j = 0; j < rays.cols(); ++j) {
    bool dup = false;
    for (Index i : keep) {
      if (rays.col(i).dot(rays.col(j)) > 1.0 - kParallelTol) {
        dup = true;
        break;
      }
    }
    if (!dup) keep.push_back(j);
  }
  Matrix out(rays.rows(), static_cast<Index>(keep.size()));
  for (Index j = 0; j < out.cols(); ++j) out.col(j) = rays.col(keep[j]);
  return out;
}

}  // namespace

bool dominates(const Matrix& a, const Vector& v, const Vector& w) {
  detail::require(v.size() == w.size() && a.cols() == v.size(),
                  "dominates: dimension mismatch");
  const Vector diff = a * (v - w);
  return (diff.array() < 0.0).all();
}

bool contains(const Matrix& a, const Vector& y) {
  detail::require(a.cols() == y.size(), "contains: dimension mismatch");
  return ((a * y).array() >= -kMembershipSlack).all();
}

Matrix rays_to_halfspaces(const Matrix& rays) {
  const Index m = rays.rows();
  detail::require(rays.cols() == m, "rays_to_halfspaces: ray matrix must be square");
  Eigen::JacobiSVD<Matrix> svd(rays);
  svd.setThreshold(1e-9);
  if (svd.rank() != m) throw ConeError("rays_to_halfspaces: ray matrix is rank deficient");

  const auto facets = valid_facets(rays);
  Matrix a(m, m);
  Index filled = 0;
  for (const auto& f : facets) {
    // square full-rank input: every leave-one-out subset yields one facet
    if (f.dropped < 0) throw ConeError("rays_to_halfspaces: ambiguous facet");
    a.row(f.dropped) = f.normal.transpose();
    ++filled;
  }
  if (filled != m)
    throw ConeError("rays_to_halfspaces: cone is not pointed or degenerate");

  // pointedness of C_A: the facet normals must span R^M
  Eigen::FullPivLU<Matrix> lu_a(a);
  if (lu_a.rank() != m)
    throw ConeError("rays_to_halfspaces: cone is not pointed");
  return a;
}

Cone cone_from_rays(const Matrix& rays) {
  Matrix unit = rays;
  for (Index j = 0; j < unit.cols(); ++j) {
    const double n = unit.col(j).norm();
    if (n <= 0.0) throw ConeError("cone_from_rays: zero ray");
    unit.col(j) /= n;
  }
  Cone cone;
  cone.halfspaces = rays_to_halfspaces(unit);
  cone.rays = std::move(unit);
  return cone;
}

Cone controlled_ascent_cone(const Vector& f0, const Vector& f_go,
                            const Matrix& base_rays) {
  const Index m = f0.size();
  detail::require(f_go.size() == m && base_rays.rows() == m,
                  "controlled_ascent_cone: dimension mismatch");
  const Vector ascent = f0 - f_go;
  if (ascent.norm() <= 0.0)
    throw Error("controlled_ascent_cone: f0 and f_go coincide");

  Matrix all(m, base_rays.cols() + 1);
  for (Index j = 0; j < base_rays.cols(); ++j) {
    const double n = base_rays.col(j).norm();
    if (n <= 0.0) throw ConeError("controlled_ascent_cone: zero base ray");
    all.col(j) = base_rays.col(j) / n;
  }
  all.col(base_rays.cols()) = ascent.normalized();
  all = dedupe_rays(all);

  Eigen::JacobiSVD<Matrix> svd_all(all);
  svd_all.setThreshold(1e-9);
  if (svd_all.rank() != m)
    throw ConeError("controlled_ascent_cone: cone is not full-dimensional");

  const auto facets = valid_facets(all);
  Matrix facet_mat(static_cast<Index>(facets.size()), m);
  for (Index i = 0; i < facet_mat.rows(); ++i)
    facet_mat.row(i) = facets[static_cast<std::size_t>(i)].normal.transpose();
  Eigen::FullPivLU<Matrix> lu_f(facet_mat);
  if (facet_mat.rows() < m || lu_f.rank() != m)
    throw ConeError("controlled_ascent_cone: cone is not pointed");

  // a ray is extreme iff its active facets span a space of dimension M-1
  std::vector<Index> extreme;
  for (Index j = 0; j < all.cols(); ++j) {
    std::vector<Index> active;
    for (Index i = 0; i < facet_mat.rows(); ++i)
      if (std::abs(facet_mat.row(i).dot(all.col(j))) <= kFacetSlack)
        active.push_back(i);
    if (static_cast<Index>(active.size()) < m - 1) continue;
    Matrix act(static_cast<Index>(active.size()), m);
    for (Index i = 0; i < act.rows(); ++i)
      act.row(i) = facet_mat.row(active[static_cast<std::size_t>(i)]);
    Eigen::JacobiSVD<Matrix> svd(act);
    svd.setThreshold(1e-9);
    if (svd.rank() >= m - 1) extreme.push_back(j);
  }

  if (static_cast<Index>(extreme.size()) != m)
    throw ConeError("controlled_ascent_cone: hull is not simplicial");
  Matrix rays(m, m);
  for (Index j = 0; j < m; ++j) rays.col(j) = all.col(extreme[static_cast<std::size_t>(j)]);

  Cone cone = cone_from_rays(rays);
  if (!contains(cone.halfspaces, ascent))
    throw ConeError("controlled_ascent_cone: ascent ray escaped the hull");
  return cone;
}

std::pair<Matrix, Vector> ray_to_equality(const Vector& v) {
  const Index m = v.size();
  if (v.norm() <= 0.0) throw Error("ray_to_equality: zero vector");

  Eigen::HouseholderQR<Matrix> qr{Matrix(v)};
  Matrix q = qr.householderQ();
  Matrix basis = q.rightCols(m - 1).transpose();  // orthonormal, each row _|_ v

  // canonical sign: first non-negligible entry of each row positive
  for (Index i = 0; i < basis.rows(); ++i) {
    for (Index j = 0; j < m; ++j) {
      if (std::abs(basis(i, j)) > 1e-12) {
        if (basis(i, j) < 0.0) basis.row(i) = -basis.row(i);
        break;
      }
    }
  }
  return {std::move(basis), Vector::Zero(m - 1)};
}

std::pair<Matrix, Vector> two_points_to_equality(const Vector& f1,
                                                 const Vector& f2) {
  detail::require(f1.size() == f2.size(),
                  "two_points_to_equality: dimension mismatch");
  if ((f1 - f2).norm() <= 0.0)
    throw Error("two_points_to_equality: identical points");
  auto [basis, zero] = ray_to_equality(f1 - f2);
  Vector offset = -(basis * f1);
  return {std::move(basis), std::move(offset)};
}

}  // namespace ferero
