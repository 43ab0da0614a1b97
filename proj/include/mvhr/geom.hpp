#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mvhr/linalg.hpp"
#include "mvhr/scalar.hpp"

namespace mvhr {

/// Point or direction in R^d with exact coordinates.
class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t dim) : coords_(dim) {}
  explicit Vector(std::vector<Scalar> coords) : coords_(std::move(coords)) {}
  Vector(std::initializer_list<Scalar> coords) : coords_(coords) {}

  std::size_t dim() const { return coords_.size(); }
  Scalar& operator[](std::size_t i) { return coords_[i]; }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Scalar>& coords() const { return coords_; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Scalar& x) { return x == 0; });
  }

  Vector& operator+=(const Vector& o) {
    for (std::size_t i = 0; i < dim(); ++i) coords_[i] += o[i];
    return *this;
  }
  Vector& operator-=(const Vector& o) {
    for (std::size_t i = 0; i < dim(); ++i) coords_[i] -= o[i];
    return *this;
  }
  Vector& operator*=(const Scalar& t) {
    for (auto& x : coords_) x *= t;
    return *this;
  }
  friend Vector operator+(Vector a, const Vector& b) { return a += b; }
  friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
  friend Vector operator*(const Scalar& t, Vector a) { return a *= t; }
  friend Vector operator-(Vector a) { return a *= Scalar(-1); }
  friend bool operator==(const Vector& a, const Vector& b) { return a.coords_ == b.coords_; }
  friend bool operator<(const Vector& a, const Vector& b) { return a.coords_ < b.coords_; }

 private:
  std::vector<Scalar> coords_;
};

inline Scalar dot(const Vector& a, const Vector& b) {
  if (a.dim() != b.dim()) throw InputError("dot: dimension mismatch");
  Scalar s = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

/// Minkowski sum of segments [0, g_k]. Translation-normalized: every quantity computed
/// from a zonotope is translation invariant, so the center is not stored.
class Zonotope {
 public:
  Zonotope(std::size_t dim, std::vector<Vector> generators) : dim_(dim), generators_(std::move(generators)) {
    if (dim_ == 0) throw InputError("zonotope: dimension must be positive");
    for (const auto& g : generators_) {
      if (g.dim() != dim_) throw InputError("zonotope: generator dimension mismatch");
      if (g.is_zero()) throw InputError("zonotope: zero generator");
    }
  }

  std::size_t dim() const { return dim_; }
  const std::vector<Vector>& generators() const { return generators_; }

  friend bool operator==(const Zonotope& a, const Zonotope& b) {
    return a.dim_ == b.dim_ && a.generators_ == b.generators_;
  }

 private:
  std::size_t dim_;
  std::vector<Vector> generators_;
};

/// Convex hull of a finite point set. Duplicates are removed on construction.
class VPolytope {
 public:
  VPolytope(std::size_t dim, std::vector<Vector> vertices) : dim_(dim), vertices_(std::move(vertices)) {
    if (dim_ == 0) throw InputError("vpolytope: dimension must be positive");
    if (vertices_.empty()) throw InputError("vpolytope: empty vertex list");
    for (const auto& v : vertices_)
      if (v.dim() != dim_) throw InputError("vpolytope: vertex dimension mismatch");
    std::vector<Vector> unique;
    for (auto& v : vertices_)
      if (std::find(unique.begin(), unique.end(), v) == unique.end()) unique.push_back(std::move(v));
    vertices_ = std::move(unique);
  }

  std::size_t dim() const { return dim_; }
  const std::vector<Vector>& vertices() const { return vertices_; }

  friend bool operator==(const VPolytope& a, const VPolytope& b) {
    return a.dim_ == b.dim_ && a.vertices_ == b.vertices_;
  }

 private:
  std::size_t dim_;
  std::vector<Vector> vertices_;
};

class Body {
 public:
  Body(Zonotope z) : rep_(std::move(z)) {}
  Body(VPolytope p) : rep_(std::move(p)) {}

  std::size_t dim() const {
    return std::visit([](const auto& b) { return b.dim(); }, rep_);
  }
  bool is_zonotope() const { return std::holds_alternative<Zonotope>(rep_); }
  const Zonotope& zonotope() const { return std::get<Zonotope>(rep_); }
  const VPolytope& vpolytope() const { return std::get<VPolytope>(rep_); }
  const std::variant<Zonotope, VPolytope>& rep() const { return rep_; }

  /// Generators for zonotopes, vertices for polytopes.
  const std::vector<Vector>& data() const {
    return is_zonotope() ? zonotope().generators() : vpolytope().vertices();
  }

  friend bool operator==(const Body& a, const Body& b) { return a.rep_ == b.rep_; }

 private:
  std::variant<Zonotope, VPolytope> rep_;
};

/// Total order on bodies used to canonicalize multisets of reference bodies.
inline int compare_bodies(const Body& a, const Body& b) {
  if (a.is_zonotope() != b.is_zonotope()) return a.is_zonotope() ? -1 : 1;
  if (a.dim() != b.dim()) return a.dim() < b.dim() ? -1 : 1;
  const auto& x = a.data();
  const auto& y = b.data();
  if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < y[i]) return -1;
    if (y[i] < x[i]) return 1;
  }
  return 0;
}

inline bool body_less(const Body& a, const Body& b) { return compare_bodies(a, b) < 0; }

inline Zonotope minkowski_sum(const Zonotope& a, const Zonotope& b) {
  if (a.dim() != b.dim()) throw InputError("minkowski_sum: dimension mismatch");
  std::vector<Vector> g = a.generators();
  g.insert(g.end(), b.generators().begin(), b.generators().end());
  return Zonotope(a.dim(), std::move(g));
}

/// Dilation by t > 0.
inline Body scale(const Body& b, const Scalar& t) {
  if (t <= 0) throw InputError("scale: factor must be positive");
  std::vector<Vector> d = b.data();
  for (auto& v : d) v *= t;
  if (b.is_zonotope()) return Zonotope(b.dim(), std::move(d));
  return VPolytope(b.dim(), std::move(d));
}

inline Zonotope scale(const Zonotope& z, const Scalar& t) { return scale(Body(z), t).zonotope(); }

/// h_b(u). Zonotopes use the stored representative sum of [0, g_k].
inline Scalar support_function(const Body& b, const Vector& u) {
  if (b.dim() != u.dim()) throw InputError("support_function: dimension mismatch");
  if (b.is_zonotope()) {
    Scalar h = 0;
    for (const auto& g : b.zonotope().generators()) {
      Scalar s = dot(g, u);
      if (s > 0) h += s;
    }
    return h;
  }
  const auto& vs = b.vpolytope().vertices();
  Scalar h = dot(vs.front(), u);
  for (std::size_t i = 1; i < vs.size(); ++i) h = std::max(h, dot(vs[i], u));
  return h;
}

/// Support function of the zonotope translated to be centered at the origin.
inline Scalar centered_support(const Zonotope& z, const Vector& u) {
  Scalar h = 0;
  for (const auto& g : z.generators()) h += abs(dot(g, u));
  return h / 2;
}

/// Exact integer form of a zonotope: generators = content * vectors, with the vectors
/// integral and jointly primitive.
struct IntegerForm {
  Scalar content;
  std::vector<IntRow> vectors;
};

inline IntegerForm integer_form(const std::vector<Vector>& gens) {
  Integer l = 1;
  for (const auto& g : gens)
    for (const auto& x : g) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
  IntegerForm f;
  Integer g_all = 0;
  for (const auto& g : gens) {
    IntRow row(g.dim());
    for (std::size_t i = 0; i < g.dim(); ++i) {
      Scalar s = g[i] * l;
      row[i] = s.get_num();
      mpz_gcd(g_all.get_mpz_t(), g_all.get_mpz_t(), row[i].get_mpz_t());
    }
    f.vectors.push_back(std::move(row));
  }
  if (g_all == 0) g_all = 1;
  for (auto& row : f.vectors)
    for (auto& x : row) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g_all.get_mpz_t());
  f.content = Scalar(g_all, l);
  f.content.canonicalize();
  return f;
}

// ---------------------------------------------------------------------------
// Linear embeddings

/// Linear map R^cols -> R^rows.
class LinearEmbedding {
 public:
  explicit LinearEmbedding(Matrix m) : m_(std::move(m)) {
    if (m_.rows() == 0 || m_.cols() == 0) throw InputError("embedding: empty matrix");
  }
  std::size_t rows() const { return m_.rows(); }
  std::size_t cols() const { return m_.cols(); }
  const Matrix& matrix() const { return m_; }

  Vector operator()(const Vector& v) const {
    if (v.dim() != cols()) throw InputError("embedding: dimension mismatch");
    Vector out(rows());
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j)
        if (m_(i, j) != 0) out[i] += m_(i, j) * v[j];
    return out;
  }

  /// this ∘ inner
  LinearEmbedding compose(const LinearEmbedding& inner) const { return LinearEmbedding(m_ * inner.m_); }

 private:
  Matrix m_;
};

/// Image of a body. Generators mapped to zero are dropped (a point summand is a translation).
inline Body apply_embedding(const LinearEmbedding& e, const Body& b) {
  if (e.cols() != b.dim()) throw InputError("apply_embedding: dimension mismatch");
  std::vector<Vector> out;
  out.reserve(b.data().size());
  for (const auto& v : b.data()) {
    Vector w = e(v);
    if (b.is_zonotope() && w.is_zero()) continue;
    out.push_back(std::move(w));
  }
  if (b.is_zonotope()) return Zonotope(e.rows(), std::move(out));
  return VPolytope(e.rows(), std::move(out));
}

inline Zonotope apply_embedding(const LinearEmbedding& e, const Zonotope& z) {
  return apply_embedding(e, Body(z)).zonotope();
}

/// Block embedding of R^n into copy `slot` of (R^n)^copies, or the diagonal when slot < 0.
inline LinearEmbedding block_embedding(std::size_t n, std::size_t copies, int slot, const Scalar& sign = 1) {
  Matrix m(n * copies, n);
  for (std::size_t c = 0; c < copies; ++c) {
    if (slot >= 0 && static_cast<std::size_t>(slot) != c) continue;
    for (std::size_t i = 0; i < n; ++i) m(c * n + i, i) = sign;
  }
  return LinearEmbedding(std::move(m));
}

inline LinearEmbedding negation(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = -1;
  return LinearEmbedding(std::move(m));
}

/// The inclusions of W = R^n into W^2 and W^3.
struct StandardEmbeddings {
  LinearEmbedding iota1, iota2, delta2;
  LinearEmbedding iota1_w3, iota2_w3, iota3_w3, delta3;
};

inline StandardEmbeddings standard_embeddings(std::size_t n) {
  if (n == 0) throw InputError("standard_embeddings: n must be positive");
  return {block_embedding(n, 2, 0),  block_embedding(n, 2, 1),  block_embedding(n, 2, -1),
          block_embedding(n, 3, 0),  block_embedding(n, 3, 1),  block_embedding(n, 3, 2),
          block_embedding(n, 3, -1)};
}

inline Body negate(const Body& b) { return apply_embedding(negation(b.dim()), b); }

/// Axis-parallel cube [-1,1]^n (generators 2 e_i); circumscribes the unit ball.
inline Zonotope unit_cube_around_ball(std::size_t n) {
  std::vector<Vector> g;
  for (std::size_t i = 0; i < n; ++i) {
    Vector v(n);
    v[i] = 2;
    g.push_back(std::move(v));
  }
  return Zonotope(n, std::move(g));
}

/// Unit cube [0,1]^n.
inline Zonotope unit_cube(std::size_t n) { return scale(unit_cube_around_ball(n), Scalar(1, 2)); }

}  // namespace mvhr
