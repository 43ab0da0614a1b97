#pragma once

#include <optional>
#include <vector>

#include "mvhr/geom.hpp"
#include "mvhr/linalg.hpp"
#include "mvhr/rng.hpp"

namespace mvhr {

// Seeded families of test bodies. Coordinates are small integers so that exact
// arithmetic stays cheap.

inline Vector random_int_vector(Rng& rng, std::size_t d, long range) {
  Vector v(d);
  do {
    for (std::size_t i = 0; i < d; ++i) v[i] = Scalar(rng.uniform_int(-range, range));
  } while (v.is_zero());
  return v;
}

/// Zonotope with `gens` random generators; retries until full-dimensional.
inline Zonotope random_full_zonotope(Rng& rng, std::size_t d, std::size_t gens, long range = 3) {
  if (gens < d) throw InputError("random_full_zonotope: need at least d generators");
  while (true) {
    std::vector<Vector> g;
    for (std::size_t i = 0; i < gens; ++i) g.push_back(random_int_vector(rng, d, range));
    Matrix m(gens, d);
    for (std::size_t i = 0; i < gens; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = g[i][j];
    if (rank(m) == d) return Zonotope(d, std::move(g));
  }
}

/// Non-degenerate triangle in the plane.
inline VPolytope random_triangle(Rng& rng, long range = 4) {
  while (true) {
    std::vector<Vector> v;
    for (int i = 0; i < 3; ++i) {
      Vector p(2);
      p[0] = Scalar(rng.uniform_int(-range, range));
      p[1] = Scalar(rng.uniform_int(-range, range));
      v.push_back(std::move(p));
    }
    Vector a = v[1] - v[0], b = v[2] - v[0];
    if (a[0] * b[1] - a[1] * b[0] != 0) return VPolytope(2, std::move(v));
  }
}

inline VPolytope standard_triangle() {
  std::vector<Vector> v(3, Vector(2));
  v[1][0] = 1;
  v[2][1] = 1;
  return VPolytope(2, std::move(v));
}

/// Axis-parallel box with the given side lengths (zero sides are dropped).
inline Zonotope box(const std::vector<Scalar>& sides) {
  const std::size_t n = sides.size();
  std::vector<Vector> g;
  for (std::size_t i = 0; i < n; ++i) {
    if (sides[i] < 0) throw InputError("box: negative side");
    if (sides[i] == 0) continue;
    Vector v(n);
    v[i] = sides[i];
    g.push_back(std::move(v));
  }
  return Zonotope(n, std::move(g));
}

inline Zonotope random_box(Rng& rng, std::size_t n, long max_side = 5) {
  std::vector<Scalar> s;
  for (std::size_t i = 0; i < n; ++i) s.emplace_back(rng.uniform_int(1, max_side));
  return box(s);
}

/// Same body up to translation: a random subset of generators is negated.
inline Zonotope translate_of(const Zonotope& z, Rng& rng) {
  std::vector<Vector> g = z.generators();
  bool changed = false;
  for (auto& v : g)
    if (rng.uniform_int(0, 1) == 1) {
      v = -v;
      changed = true;
    }
  if (!changed) g.front() = -g.front();
  return Zonotope(z.dim(), std::move(g));
}

inline std::vector<Scalar> box_sides(const Zonotope& z) {
  std::vector<Scalar> s(z.dim());
  for (const auto& g : z.generators()) {
    std::size_t nz = 0, at = 0;
    for (std::size_t i = 0; i < g.dim(); ++i)
      if (g[i] != 0) {
        ++nz;
        at = i;
      }
    if (nz != 1) throw InputError("box_sides: not an axis-parallel zonotope");
    s[at] += abs(g[at]);
  }
  return s;
}

/// For boxes, the mass of S(K1, K2, C[n-3], .) at +-e_c is proportional (with a factor that
/// depends only on C when C is a cube) to f_c(s, s') = sum_{j != l; j, l != c} s_j s'_l.
/// Solves f_c(L1, L2) = f_c(K1, K2) for the sides of L2; returns nothing when the solution
/// is not a nonnegative nonzero side vector.
inline std::optional<Zonotope> box_partner(const Zonotope& k1, const Zonotope& k2, const Zonotope& l1) {
  auto s = box_sides(k1), t = box_sides(k2), u = box_sides(l1);
  const std::size_t n = s.size();
  auto f = [n](const std::vector<Scalar>& a, const std::vector<Scalar>& b, std::size_t c) {
    Scalar v = 0;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l)
        if (j != l && j != c && l != c) v += a[j] * b[l];
    return v;
  };
  Matrix aug(n, n + 1);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t l = 0; l < n; ++l) {
      if (l == c) continue;
      Scalar coeff = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != l && j != c) coeff += u[j];
      aug(c, l) = coeff;
    }
    aug(c, n) = f(s, t, c);
  }
  Echelon e = rref(aug);
  if (e.pivots.size() != n || e.pivots.back() >= n) return std::nullopt;
  std::vector<Scalar> sol(n);
  for (std::size_t i = 0; i < n; ++i) sol[i] = e.reduced(i, n);
  bool any = false;
  for (const auto& x : sol) {
    if (x < 0) return std::nullopt;
    if (x > 0) any = true;
  }
  if (!any) return std::nullopt;
  return box(sol);
}

}  // namespace mvhr
