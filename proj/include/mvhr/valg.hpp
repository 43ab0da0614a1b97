#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "mvhr/geom.hpp"
#include "mvhr/mixedvol.hpp"
#include "mvhr/scalar.hpp"

namespace mvhr {

/// K -> V(K[degree], refs...), with |refs| = n - degree.
struct BasisValuation {
  std::size_t n = 0;
  std::size_t degree = 0;
  std::vector<Body> refs;  // sorted by body_less

  BasisValuation(std::size_t n_, std::size_t degree_, std::vector<Body> refs_)
      : n(n_), degree(degree_), refs(std::move(refs_)) {
    if (n == 0) throw InputError("valuation: n must be positive");
    if (degree > n) throw InputError("valuation: degree exceeds n");
    if (refs.size() != n - degree) throw InputError("valuation: need n - degree reference bodies");
    for (const auto& r : refs)
      if (r.dim() != n) throw InputError("valuation: reference body dimension mismatch");
    std::sort(refs.begin(), refs.end(), body_less);
  }

  friend int compare(const BasisValuation& a, const BasisValuation& b) {
    if (a.degree != b.degree) return a.degree < b.degree ? -1 : 1;
    for (std::size_t i = 0; i < a.refs.size(); ++i)
      if (int c = compare_bodies(a.refs[i], b.refs[i])) return c;
    return 0;
  }
  friend bool operator==(const BasisValuation& a, const BasisValuation& b) { return compare(a, b) == 0; }
};

/// Finite rational combination of basis valuations; terms kept sorted and merged.
class Valuation {
 public:
  struct Term {
    Scalar coeff;
    BasisValuation basis;
  };

  explicit Valuation(std::size_t n) : n_(n) {
    if (n == 0) throw InputError("valuation: n must be positive");
  }

  /// Single-term valuation coeff * V(.[degree], refs).
  static Valuation mixed(std::size_t n, std::size_t degree, std::vector<Body> refs, const Scalar& coeff = 1) {
    Valuation v(n);
    v.add(coeff, BasisValuation(n, degree, std::move(refs)));
    return v;
  }
  static Valuation volume(std::size_t n) { return mixed(n, n, {}); }

  std::size_t n() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool homogeneous() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const Term& t) { return t.basis.degree == terms_.front().basis.degree; });
  }
  /// Degree of a nonzero homogeneous valuation.
  std::size_t degree() const {
    if (terms_.empty() || !homogeneous()) throw DegreeError("valuation: not homogeneous");
    return terms_.front().basis.degree;
  }

  Valuation& add(const Scalar& coeff, BasisValuation b) {
    if (b.n != n_) throw InputError("valuation: dimension mismatch");
    if (coeff == 0) return *this;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), b,
                               [](const Term& t, const BasisValuation& x) { return compare(t.basis, x) < 0; });
    if (it != terms_.end() && it->basis == b) {
      it->coeff += coeff;
      if (it->coeff == 0) terms_.erase(it);
    } else {
      terms_.insert(it, Term{coeff, std::move(b)});
    }
    return *this;
  }

  Valuation& operator+=(const Valuation& o) {
    for (const auto& t : o.terms_) add(t.coeff, t.basis);
    return *this;
  }
  Valuation& operator*=(const Scalar& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& t : terms_) t.coeff *= s;
    return *this;
  }
  friend Valuation operator+(Valuation a, const Valuation& b) { return a += b; }
  friend Valuation operator-(Valuation a, const Valuation& b) {
    Valuation nb = b;
    nb *= Scalar(-1);
    return a += nb;
  }
  friend Valuation operator*(const Scalar& s, Valuation a) { return a *= s; }

  friend bool operator==(const Valuation& a, const Valuation& b) {
    if (a.n_ != b.n_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].coeff != b.terms_[i].coeff || !(a.terms_[i].basis == b.terms_[i].basis)) return false;
    return true;
  }

 private:
  std::size_t n_;
  std::vector<Term> terms_;
};

/// chi as a degree-0 element: V(Q, ..., Q) * chi with Q the unit cube (V = 1).
inline Valuation euler_characteristic(std::size_t n) {
  return Valuation::mixed(n, 0, std::vector<Body>(n, Body(unit_cube(n))));
}

inline Scalar evaluate(const BasisValuation& b, const Body& k, unsigned workers = default_workers()) {
  if (k.dim() != b.n) throw InputError("evaluate: dimension mismatch");
  BodyList bl(b.n);
  if (b.degree > 0) bl.add(k, static_cast<int>(b.degree));
  for (const auto& r : b.refs) bl.add(r, 1);
  return mixed_volume(bl, workers);
}

inline Scalar evaluate(const Valuation& v, const Body& k, unsigned workers = default_workers()) {
  Scalar s = 0;
  for (const auto& t : v.terms()) s += t.coeff * evaluate(t.basis, k, workers);
  return s;
}

/// Convolution of mixed-volume valuations:
/// V(.[i], A...) * V(.[j], B...) = binom(i+j, n) binom(i+j, i)^-1 V(.[i+j-n], A..., B...).
inline Valuation convolve(const Valuation& phi, const Valuation& psi) {
  if (phi.n() != psi.n()) throw InputError("convolve: dimension mismatch");
  const std::size_t n = phi.n();
  Valuation out(n);
  for (const auto& a : phi.terms())
    for (const auto& b : psi.terms()) {
      const std::size_t i = a.basis.degree, j = b.basis.degree;
      if (i + j < n) throw DegreeError("convolve: degrees sum below n");
      Scalar c = Scalar(binomial(static_cast<unsigned>(i + j), static_cast<unsigned>(n))) /
                 Scalar(binomial(static_cast<unsigned>(i + j), static_cast<unsigned>(i)));
      std::vector<Body> refs = a.basis.refs;
      refs.insert(refs.end(), b.basis.refs.begin(), b.basis.refs.end());
      out.add(a.coeff * b.coeff * c, BasisValuation(n, i + j - n, std::move(refs)));
    }
  return out;
}

/// Product of valuations of complementary degrees, returned as the coefficient of vol:
/// V(.[i], A...) . V(.[n-i], B...) = binom(n, i)^-1 V(A..., -B...) vol.
inline Scalar product_complementary(const Valuation& phi, const Valuation& psi, unsigned workers = default_workers()) {
  if (phi.n() != psi.n()) throw InputError("product: dimension mismatch");
  const std::size_t n = phi.n();
  Scalar total = 0;
  for (const auto& a : phi.terms())
    for (const auto& b : psi.terms()) {
      const std::size_t i = a.basis.degree;
      if (i + b.basis.degree != n) throw DegreeError("product_complementary: degrees are not complementary");
      BodyList bl(n);
      for (const auto& r : a.basis.refs) bl.add(r, 1);
      for (const auto& r : b.basis.refs) bl.add(negate(r), 1);
      total += a.coeff * b.coeff * mixed_volume(bl, workers) /
               Scalar(binomial(static_cast<unsigned>(n), static_cast<unsigned>(i)));
    }
  return total;
}

/// Value at K of the product of valuations with degrees summing to at most n, from the
/// doubled-space formula binom(2n, n) binom(i+j, i)^-1 V(Delta(K)[i+j]; iota1 A...; iota2 B...).
inline Scalar evaluate_product(const Valuation& phi, const Valuation& psi, const Body& k,
                               unsigned workers = default_workers()) {
  if (phi.n() != psi.n() || k.dim() != phi.n()) throw InputError("evaluate_product: dimension mismatch");
  const std::size_t n = phi.n();
  auto e = standard_embeddings(n);
  Body dk = apply_embedding(e.delta2, k);
  Scalar total = 0;
  for (const auto& a : phi.terms())
    for (const auto& b : psi.terms()) {
      const std::size_t i = a.basis.degree, j = b.basis.degree;
      if (i + j > n) throw DegreeError("evaluate_product: degrees sum above n");
      BodyList bl(2 * n);
      if (i + j > 0) bl.add(dk, static_cast<int>(i + j));
      for (const auto& r : a.basis.refs) bl.add(apply_embedding(e.iota1, r), 1);
      for (const auto& r : b.basis.refs) bl.add(apply_embedding(e.iota2, r), 1);
      Scalar c = Scalar(binomial(static_cast<unsigned>(2 * n), static_cast<unsigned>(n))) /
                 Scalar(binomial(static_cast<unsigned>(i + j), static_cast<unsigned>(i)));
      total += a.coeff * b.coeff * c * mixed_volume(bl, workers);
    }
  return total;
}

/// V(iota1 A..., iota2 B..., -Delta2 C1, -Delta2 C2) in W^2; the vol-coefficient of
/// V(.,A...) . V(.,B...) . V(.[n-2],C1,C2) up to a positive constant depending on n.
inline Scalar triple_product_coefficient(const std::vector<Body>& a, const std::vector<Body>& b, const Body& c1,
                                         const Body& c2, unsigned workers = default_workers()) {
  const std::size_t n = c1.dim();
  if (n < 2) throw InputError("triple_product: n must be at least 2");
  if (a.size() != n - 1 || b.size() != n - 1) throw InputError("triple_product: need n-1 bodies per factor");
  auto e = standard_embeddings(n);
  LinearEmbedding neg_delta = negation(2 * n).compose(e.delta2);
  BodyList bl(2 * n);
  for (const auto& x : a) bl.add(apply_embedding(e.iota1, x), 1);
  for (const auto& x : b) bl.add(apply_embedding(e.iota2, x), 1);
  bl.add(apply_embedding(neg_delta, c1), 1);
  bl.add(apply_embedding(neg_delta, c2), 1);
  return mixed_volume(bl, workers);
}

/// lambda = 2 V(B, A_1, ..., A_{n-1}) / vol(B).
inline Scalar lambda_projection(const std::vector<Body>& a, const Zonotope& ball, unsigned workers = default_workers()) {
  const std::size_t n = ball.dim();
  if (a.size() != n - 1) throw InputError("lambda_projection: need n-1 bodies");
  Scalar vb = volume(ball);
  if (vb == 0) throw InputError("lambda_projection: degenerate ball");
  BodyList bl(n);
  bl.add(ball, 1);
  for (const auto& x : a) bl.add(x, 1);
  return 2 * mixed_volume(bl, workers) / vb;
}

/// V(iota1 B[n-1], iota2 B[n-1], Delta2 B[2]) in W^2.
inline Scalar gamma_numerator(const Zonotope& ball, unsigned workers = default_workers()) {
  const std::size_t n = ball.dim();
  auto e = standard_embeddings(n);
  BodyList bl(2 * n);
  if (n > 1) {
    bl.add(apply_embedding(e.iota1, ball), static_cast<int>(n - 1));
    bl.add(apply_embedding(e.iota2, ball), static_cast<int>(n - 1));
  }
  bl.add(apply_embedding(e.delta2, ball), 2);
  return mv_zonotope(bl, workers);
}

/// gamma_n = 2 V(iota1 B[n-1], iota2 B[n-1], Delta2 B[2]) / vol(B)^2, relative to the given ball.
inline Scalar gamma_n(std::size_t n, const Zonotope& ball, unsigned workers = default_workers()) {
  if (n < 2) throw InputError("gamma_n: n must be at least 2");
  if (ball.dim() != n) throw InputError("gamma_n: ball dimension mismatch");
  Scalar vb = volume(ball);
  if (vb == 0) throw InputError("gamma_n: degenerate ball");
  return 2 * gamma_numerator(ball, workers) / (vb * vb);
}

}  // namespace mvhr
