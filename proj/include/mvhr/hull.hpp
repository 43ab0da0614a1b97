#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "mvhr/geom.hpp"
#include "mvhr/linalg.hpp"

namespace mvhr {

/// Exact convex hull of a finite point set, built incrementally as a triangulated
/// boundary (placing triangulation). Works in any ambient dimension; lower-dimensional
/// inputs are handled by projecting onto a coordinate subspace that is injective on
/// their affine hull.
class ConvexHull {
 public:
  explicit ConvexHull(std::vector<Vector> points) : points_(std::move(points)) {
    if (points_.empty()) throw InputError("convex hull of empty set");
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
    ambient_ = points_.front().dim();
    build();
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t affine_dim() const { return affine_dim_; }

  /// Lebesgue volume in the ambient dimension (0 when not full-dimensional).
  const Scalar& volume() const { return volume_; }

  /// Boundary facets as index lists into points() (full-dimensional case only).
  const std::vector<std::vector<std::size_t>>& facets() const { return facets_; }
  const std::vector<Vector>& points() const { return points_; }

  /// Points lying on some boundary facet; a superset of the true vertices.
  std::vector<Vector> boundary_points() const {
    std::vector<Vector> out;
    for (auto i : boundary_) out.push_back(points_[i]);
    return out;
  }

 private:
  struct Facet {
    std::vector<std::size_t> idx;  // sorted
    Vector normal;
    Scalar offset;
    bool alive = true;
  };

  std::vector<Vector> points_;
  std::size_t ambient_ = 0;
  std::size_t affine_dim_ = 0;
  Scalar volume_ = 0;
  std::vector<std::vector<std::size_t>> facets_;
  std::vector<std::size_t> boundary_;

  void build() {
    // Affinely independent subset via elimination on differences.
    std::vector<std::size_t> simplex{0};
    std::vector<Vector> basis;
    std::vector<std::size_t> pivots;
    for (std::size_t i = 1; i < points_.size() && basis.size() < ambient_; ++i) {
      Vector r = points_[i] - points_[0];
      for (std::size_t k = 0; k < basis.size(); ++k) {
        if (r[pivots[k]] == 0) continue;
        Scalar f = r[pivots[k]] / basis[k][pivots[k]];
        for (std::size_t j = 0; j < ambient_; ++j) r[j] -= f * basis[k][j];
      }
      std::size_t p = 0;
      while (p < ambient_ && r[p] == 0) ++p;
      if (p == ambient_) continue;
      basis.push_back(std::move(r));
      pivots.push_back(p);
      simplex.push_back(i);
    }
    affine_dim_ = basis.size();
    if (affine_dim_ < ambient_) {
      build_degenerate(pivots);
      return;
    }
    if (ambient_ == 1) {
      volume_ = points_.back()[0] - points_.front()[0];
      boundary_ = {0, points_.size() - 1};
      facets_ = {{0}, {points_.size() - 1}};
      return;
    }
    build_full(simplex);
  }

  void build_degenerate(std::vector<std::size_t> pivots) {
    volume_ = 0;
    if (affine_dim_ == 0) {
      boundary_ = {0};
      return;
    }
    // Coordinates at the pivot positions are an injective affine chart on the affine hull.
    std::sort(pivots.begin(), pivots.end());
    std::vector<Vector> projected;
    for (const auto& p : points_) {
      Vector q(pivots.size());
      for (std::size_t j = 0; j < pivots.size(); ++j) q[j] = p[pivots[j]];
      projected.push_back(std::move(q));
    }
    ConvexHull sub(projected);
    std::set<Vector> keep;
    for (const auto& q : sub.boundary_points()) keep.insert(q);
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (keep.count(projected[i])) boundary_.push_back(i);
  }

  Vector centroid_;

  void orient(Facet& f) const {
    const std::size_t d = ambient_;
    const Vector& base = points_[f.idx[0]];
    Matrix rows(d - 1, d);
    for (std::size_t i = 1; i < d; ++i) {
      Vector r = points_[f.idx[i]] - base;
      for (std::size_t j = 0; j < d; ++j) rows(i - 1, j) = r[j];
    }
    Vector n(d);
    for (std::size_t skip = 0; skip < d; ++skip) {
      Matrix minor(d - 1, d - 1);
      for (std::size_t i = 0; i + 1 < d; ++i)
        for (std::size_t j = 0, jj = 0; j < d; ++j)
          if (j != skip) minor(i, jj++) = rows(i, j);
      Scalar m = det(std::move(minor));
      n[skip] = (skip % 2 == 0) ? m : Scalar(-m);
    }
    Scalar off = dot(n, base);
    if (dot(n, centroid_) > off) {
      n *= Scalar(-1);
      off = -off;
    }
    f.normal = std::move(n);
    f.offset = std::move(off);
  }

  void build_full(const std::vector<std::size_t>& simplex) {
    const std::size_t d = ambient_;
    centroid_ = Vector(d);
    for (auto i : simplex) centroid_ += points_[i];
    centroid_ *= Scalar(1, static_cast<long>(d + 1));

    std::vector<Facet> facets;
    for (std::size_t skip = 0; skip <= d; ++skip) {
      Facet f;
      for (std::size_t k = 0; k <= d; ++k)
        if (k != skip) f.idx.push_back(simplex[k]);
      std::sort(f.idx.begin(), f.idx.end());
      orient(f);
      facets.push_back(std::move(f));
    }
    std::vector<bool> in_simplex(points_.size(), false);
    for (auto i : simplex) in_simplex[i] = true;

    for (std::size_t p = 0; p < points_.size(); ++p) {
      if (in_simplex[p]) continue;
      const Vector& pt = points_[p];
      std::vector<std::size_t> visible;
      for (std::size_t f = 0; f < facets.size(); ++f)
        if (facets[f].alive && dot(facets[f].normal, pt) > facets[f].offset) visible.push_back(f);
      if (visible.empty()) continue;
      std::map<std::vector<std::size_t>, int> ridges;
      for (auto f : visible) {
        const auto& idx = facets[f].idx;
        for (std::size_t skip = 0; skip < idx.size(); ++skip) {
          std::vector<std::size_t> r;
          for (std::size_t k = 0; k < idx.size(); ++k)
            if (k != skip) r.push_back(idx[k]);
          ++ridges[r];
        }
        facets[f].alive = false;
      }
      for (const auto& [ridge, count] : ridges) {
        if (count != 1) continue;
        Facet nf;
        nf.idx = ridge;
        nf.idx.push_back(p);
        std::sort(nf.idx.begin(), nf.idx.end());
        orient(nf);
        facets.push_back(std::move(nf));
      }
      if (facets.size() > 4 * points_.size() + 64) {
        std::erase_if(facets, [](const Facet& f) { return !f.alive; });
      }
    }

    Scalar vol = 0;
    std::set<std::size_t> boundary;
    for (const auto& f : facets) {
      if (!f.alive) continue;
      Matrix m(d, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = points_[f.idx[i]][j] - centroid_[j];
      vol += abs(det(std::move(m)));
      facets_.push_back(f.idx);
      boundary.insert(f.idx.begin(), f.idx.end());
    }
    volume_ = vol / Scalar(factorial(static_cast<unsigned>(d)));
    boundary_.assign(boundary.begin(), boundary.end());
  }
};

/// Minkowski sum of two point sets, pruned to boundary points of the hull.
inline std::vector<Vector> minkowski_points(const std::vector<Vector>& a, const std::vector<Vector>& b) {
  std::vector<Vector> sums;
  sums.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) sums.push_back(x + y);
  return ConvexHull(std::move(sums)).boundary_points();
}

/// Vertex superset of a zonotope (iterated segment sums with pruning).
inline std::vector<Vector> zonotope_points(const Zonotope& z) {
  std::vector<Vector> pts{Vector(z.dim())};
  for (const auto& g : z.generators()) pts = minkowski_points(pts, {Vector(z.dim()), g});
  return pts;
}

inline std::vector<Vector> body_points(const Body& b) {
  if (b.is_zonotope()) return zonotope_points(b.zonotope());
  return ConvexHull(b.vpolytope().vertices()).boundary_points();
}

}  // namespace mvhr
