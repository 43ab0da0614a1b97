#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <utility>
#include <vector>

#include "mvhr/geom.hpp"
#include "mvhr/hull.hpp"
#include "mvhr/linalg.hpp"
#include "mvhr/parallel.hpp"
#include "mvhr/scalar.hpp"

namespace mvhr {

/// Argument tuple of a mixed volume: bodies with repetition counts summing to the dimension.
class BodyList {
 public:
  explicit BodyList(std::size_t dim) : dim_(dim) {
    if (dim_ == 0) throw InputError("body list: dimension must be positive");
  }
  BodyList(std::size_t dim, std::vector<std::pair<Body, int>> entries) : BodyList(dim) {
    for (auto& [b, k] : entries) add(std::move(b), k);
    validate();
  }

  BodyList& add(Body b, int multiplicity = 1) {
    if (multiplicity <= 0) throw InputError("body list: multiplicity must be positive");
    if (b.dim() != dim_) throw InputError("body list: body dimension mismatch");
    for (auto& [existing, k] : entries_)
      if (existing == b) {
        k += multiplicity;
        return *this;
      }
    entries_.emplace_back(std::move(b), multiplicity);
    return *this;
  }

  /// Throws unless the multiplicities sum to the dimension.
  const BodyList& validate() const {
    if (total() != dim_) throw InputError("body list: multiplicities must sum to the dimension");
    return *this;
  }

  std::size_t dim() const { return dim_; }
  std::size_t total() const {
    std::size_t s = 0;
    for (const auto& e : entries_) s += static_cast<std::size_t>(e.second);
    return s;
  }
  const std::vector<std::pair<Body, int>>& entries() const { return entries_; }

 private:
  std::size_t dim_;
  std::vector<std::pair<Body, int>> entries_;
};

// ---------------------------------------------------------------------------
// Generator enumeration with incremental fraction-free elimination

/// One leaf of the enumeration: the chosen vectors are linearly independent.
struct SlotLeaf {
  const std::vector<const IntRow*>& chosen;   // original integer vectors, slot order
  const std::vector<std::size_t>& pivots;     // pivot column per slot
  const Integer& minor;                       // minor on the pivot columns (signed)
};

/// Enumerates one generator per slot (unordered within a body, distinct indices) over
/// integer-form zonotopes, pruning any prefix whose vectors are linearly dependent.
/// Rows are kept in Bareiss form so each new vector costs one pass over the prefix.
class SlotEnumerator {
 public:
  struct Slotted {
    const std::vector<IntRow>* vectors;
    int multiplicity;
  };

  SlotEnumerator(std::size_t dim, std::vector<Slotted> bodies) : dim_(dim) {
    for (std::size_t b = 0; b < bodies.size(); ++b)
      for (int k = 0; k < bodies[b].multiplicity; ++k) {
        slot_vectors_.push_back(bodies[b].vectors);
        first_of_body_.push_back(k == 0);
        remaining_after_.push_back(static_cast<std::size_t>(bodies[b].multiplicity - 1 - k));
      }
    if (slot_vectors_.size() > dim_) throw InputError("slot enumerator: more slots than dimensions");
  }

  std::size_t slots() const { return slot_vectors_.size(); }

  /// Calls make_acc() once per worker, feeds it leaves, and returns the accumulators in
  /// worker order. Top-level choices are dealt round-robin to workers.
  template <class Acc, class MakeAcc>
  std::vector<Acc> run(unsigned workers, MakeAcc make_acc) const {
    workers = std::max(1u, workers);
    std::vector<Acc> accs;
    for (unsigned w = 0; w < workers; ++w) accs.push_back(make_acc());
    run_workers(workers, [&](unsigned w) {
      State st(slots(), dim_);
      dfs(st, 0, w, workers, accs[w]);
    });
    return accs;
  }

 private:
  struct State {
    State(std::size_t s, std::size_t d) : rows(s, IntRow(d)), pivots(s), idx(s), chosen(s) {}
    std::vector<IntRow> rows;
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> idx;
    std::vector<const IntRow*> chosen;
    Integer tmp;
  };

  std::size_t dim_;
  std::vector<const std::vector<IntRow>*> slot_vectors_;
  std::vector<bool> first_of_body_;
  std::vector<std::size_t> remaining_after_;

  bool push(State& st, std::size_t slot, const IntRow& v) const {
    IntRow& r = st.rows[slot];
    for (std::size_t j = 0; j < dim_; ++j) r[j] = v[j];
    for (std::size_t k = 0; k < slot; ++k) {
      const IntRow& b = st.rows[k];
      const Integer& pk = b[st.pivots[k]];
      Integer f = r[st.pivots[k]];
      const Integer* prev = k > 0 ? &st.rows[k - 1][st.pivots[k - 1]] : nullptr;
      for (std::size_t j = 0; j < dim_; ++j) {
        mpz_mul(st.tmp.get_mpz_t(), pk.get_mpz_t(), r[j].get_mpz_t());
        mpz_submul(st.tmp.get_mpz_t(), f.get_mpz_t(), b[j].get_mpz_t());
        if (prev)
          mpz_divexact(r[j].get_mpz_t(), st.tmp.get_mpz_t(), prev->get_mpz_t());
        else
          mpz_swap(r[j].get_mpz_t(), st.tmp.get_mpz_t());
      }
    }
    for (std::size_t j = 0; j < dim_; ++j)
      if (r[j] != 0) {
        st.pivots[slot] = j;
        return true;
      }
    return false;
  }

  template <class Acc>
  void dfs(State& st, std::size_t slot, unsigned w, unsigned workers, Acc& acc) const {
    if (slot == slots()) {
      SlotLeaf leaf{st.chosen, st.pivots, st.rows[slot - 1][st.pivots[slot - 1]]};
      acc.leaf(leaf);
      return;
    }
    const auto& vecs = *slot_vectors_[slot];
    std::size_t start = first_of_body_[slot] ? 0 : st.idx[slot - 1] + 1;
    if (vecs.size() < remaining_after_[slot]) return;
    std::size_t end = vecs.size() - remaining_after_[slot];
    for (std::size_t i = start; i < end; ++i) {
      if (slot == 0 && i % workers != w) continue;
      if (!push(st, slot, vecs[i])) continue;
      st.idx[slot] = i;
      st.chosen[slot] = &vecs[i];
      dfs(st, slot + 1, w, workers, acc);
    }
  }
};

namespace detail {

struct AbsMinorSum {
  Integer sum;
  void leaf(const SlotLeaf& l) {
    if (l.minor < 0)
      sum -= l.minor;
    else
      sum += l.minor;
  }
};

/// Bodies of a list sorted by ascending generator count (stable), in integer form.
struct PreparedZonotopes {
  std::vector<IntegerForm> forms;
  std::vector<int> mult;
  Scalar factor = 1;  // product of content^multiplicity * multiplicity!
};

inline PreparedZonotopes prepare(const std::vector<std::pair<const Zonotope*, int>>& zs) {
  std::vector<std::size_t> order(zs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return zs[a].first->generators().size() < zs[b].first->generators().size();
  });
  PreparedZonotopes p;
  for (auto i : order) {
    IntegerForm f = integer_form(zs[i].first->generators());
    Scalar c;
    c = 1;
    for (int k = 0; k < zs[i].second; ++k) c *= f.content;
    p.factor *= c * Scalar(factorial(static_cast<unsigned>(zs[i].second)));
    p.forms.push_back(std::move(f));
    p.mult.push_back(zs[i].second);
  }
  return p;
}

}  // namespace detail

/// Mixed volume of zonotopes by generator enumeration:
/// V(Z_1..Z_d) = (1/d!) * sum over one generator per slot of |det|,
/// normalized so that V(K,...,K) = vol(K).
inline Scalar mv_zonotope(const BodyList& bl, unsigned workers = default_workers()) {
  bl.validate();
  std::vector<std::pair<const Zonotope*, int>> zs;
  for (const auto& [b, k] : bl.entries()) {
    if (!b.is_zonotope()) throw InputError("mv_zonotope: non-zonotope body");
    zs.emplace_back(&b.zonotope(), k);
  }
  auto prep = detail::prepare(zs);
  std::vector<SlotEnumerator::Slotted> slotted;
  for (std::size_t i = 0; i < prep.forms.size(); ++i) slotted.push_back({&prep.forms[i].vectors, prep.mult[i]});
  SlotEnumerator en(bl.dim(), std::move(slotted));
  auto accs = en.run<detail::AbsMinorSum>(workers, [] { return detail::AbsMinorSum{}; });
  Integer total = 0;
  for (const auto& a : accs) total += a.sum;
  Scalar r = prep.factor * Scalar(total) / Scalar(factorial(static_cast<unsigned>(bl.dim())));
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------------------
// Volumes

/// Volume of a zonotope: sum over d-subsets of generators of |det|.
inline Scalar zonotope_volume(const Zonotope& z) {
  const std::size_t d = z.dim();
  const auto& gens = z.generators();
  if (gens.size() < d) return 0;
  // Per-generator primitive integer vectors with individual scale factors.
  std::vector<IntRow> vecs;
  std::vector<Scalar> scales;
  for (const auto& g : gens) {
    IntegerForm f = integer_form({g});
    vecs.push_back(std::move(f.vectors.front()));
    scales.push_back(f.content);
  }
  std::vector<std::size_t> pick(d);
  std::iota(pick.begin(), pick.end(), 0);
  std::vector<IntRow> rows(d);
  Scalar vol = 0;
  while (true) {
    for (std::size_t i = 0; i < d; ++i) rows[i] = vecs[pick[i]];
    Integer dt = det_integer(rows);
    if (dt != 0) {
      Scalar term(dt < 0 ? Integer(-dt) : dt);
      for (auto i : pick) term *= scales[i];
      vol += term;
    }
    // next combination
    std::size_t i = d;
    while (i > 0 && pick[i - 1] == gens.size() - d + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < d; ++j) pick[j] = pick[j - 1] + 1;
  }
  return vol;
}

/// Largest dimension for which hull-based volumes of V-polytopes are supported.
inline constexpr std::size_t kMaxHullDim = 5;

inline Scalar volume(const Body& b) {
  if (b.is_zonotope()) return zonotope_volume(b.zonotope());
  if (b.dim() > kMaxHullDim) throw UnsupportedError("volume: V-polytope dimension exceeds 5");
  return ConvexHull(b.vpolytope().vertices()).volume();
}

/// Mixed volume of point-set hulls in R^k by inclusion-exclusion over the multiplicity
/// pattern: V(K_1[m_1],...,K_p[m_p]) = (1/k!) * sum_c prod binom(m_i,c_i) (-1)^(k-|c|) vol(sum c_i K_i).
inline Scalar mixed_volume_points(const std::vector<std::pair<std::vector<Vector>, int>>& bodies, std::size_t k) {
  if (bodies.size() == 1) return ConvexHull(bodies.front().first).volume();
  std::vector<int> c(bodies.size(), 0);
  Scalar total = 0;
  while (true) {
    std::size_t i = 0;
    while (i < c.size() && c[i] == bodies[i].second) c[i++] = 0;
    if (i == c.size()) break;
    ++c[i];
    std::vector<Vector> sum{Vector(k)};
    Scalar coeff = 1;
    int used = 0;
    for (std::size_t b = 0; b < bodies.size(); ++b) {
      if (c[b] == 0) continue;
      used += c[b];
      coeff *= Scalar(binomial(static_cast<unsigned>(bodies[b].second), static_cast<unsigned>(c[b])));
      std::vector<Vector> scaled = bodies[b].first;
      for (auto& v : scaled) v *= Scalar(c[b]);
      sum = minkowski_points(sum, scaled);
    }
    Scalar v = ConvexHull(std::move(sum)).volume();
    if ((static_cast<int>(k) - used) % 2 != 0) v = -v;
    total += coeff * v;
  }
  return total / Scalar(factorial(static_cast<unsigned>(k)));
}

/// Independent oracle: polarization of volume,
/// V(K_1..K_d) = (1/d!) sum_{S nonempty} (-1)^(d-|S|) vol(sum_{i in S} K_i).
/// Zonotope-only lists use the generator-subset volume formula (any d);
/// lists containing a V-polytope use exact hull volumes and require d <= 5.
inline Scalar mv_polarization(const BodyList& bl) {
  bl.validate();
  const std::size_t d = bl.dim();
  bool all_zonotopes = std::all_of(bl.entries().begin(), bl.entries().end(),
                                   [](const auto& e) { return e.first.is_zonotope(); });
  if (!all_zonotopes) {
    if (d > kMaxHullDim) throw UnsupportedError("mv_polarization: V-polytope input with dimension above 5");
    std::vector<std::pair<std::vector<Vector>, int>> pts;
    for (const auto& [b, k] : bl.entries()) pts.emplace_back(body_points(b), k);
    return mixed_volume_points(pts, d);
  }
  const auto& es = bl.entries();
  std::vector<int> c(es.size(), 0);
  Scalar total = 0;
  while (true) {
    std::size_t i = 0;
    while (i < c.size() && c[i] == es[i].second) c[i++] = 0;
    if (i == c.size()) break;
    ++c[i];
    std::vector<Vector> gens;
    Scalar coeff = 1;
    int used = 0;
    for (std::size_t b = 0; b < es.size(); ++b) {
      if (c[b] == 0) continue;
      used += c[b];
      coeff *= Scalar(binomial(static_cast<unsigned>(es[b].second), static_cast<unsigned>(c[b])));
      for (const auto& g : es[b].first.zonotope().generators()) gens.push_back(Scalar(c[b]) * g);
    }
    Scalar v = zonotope_volume(Zonotope(d, std::move(gens)));
    if ((static_cast<int>(d) - used) % 2 != 0) v = -v;
    total += coeff * v;
  }
  return total / Scalar(factorial(static_cast<unsigned>(d)));
}

// ---------------------------------------------------------------------------
// General engine

namespace detail {

/// Mixed volume with some V-polytope slots: zonotope slots are expanded over generators;
/// for independent generators v_1..v_{d-k} and completing coordinate axes e_F,
/// V(P_1..P_k, [0,v_1]..[0,v_{d-k}]) = (k!/d!) |det V_P| V_k(pi P_1, ..., pi P_k),
/// where pi(x) = x_F - V_F V_P^{-1} x_P is the projection along span(v).
struct HybridAcc {
  const std::vector<std::pair<const std::vector<Vector>*, int>>* polys;
  std::size_t dim;
  Scalar sum = 0;

  void leaf(const SlotLeaf& l) {
    const std::size_t s = l.chosen.size();
    const std::size_t k = dim - s;
    std::vector<bool> is_piv(dim, false);
    for (auto p : l.pivots) is_piv[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < dim; ++j)
      if (!is_piv[j]) free.push_back(j);
    // A = V_P^T (s x s): A(j, i) = v_i[P_j]; solve A^T-free via inverse of V_P.
    Matrix vp(s, s);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) vp(i, j) = Scalar((*l.chosen[i])[l.pivots[j]]);
    // coefficients a = (V_P^T)^{-1} x_P, i.e. solve sum_i a_i v_i[P_j] = x[P_j].
    Matrix aug(s, 2 * s);
    for (std::size_t j = 0; j < s; ++j) {
      for (std::size_t i = 0; i < s; ++i) aug(j, i) = vp(i, j);
      aug(j, s + j) = 1;
    }
    Echelon e = rref(std::move(aug));
    Matrix inv(s, s);  // a = inv * x_P
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) inv(i, j) = e.reduced(i, s + j);
    // C = V_F^T-part: pi(x)_f = x[F_f] - sum_i a_i v_i[F_f]
    Matrix c(k, s);
    for (std::size_t f = 0; f < k; ++f)
      for (std::size_t j = 0; j < s; ++j) {
        Scalar acc = 0;
        for (std::size_t i = 0; i < s; ++i) acc += Scalar((*l.chosen[i])[free[f]]) * inv(i, j);
        c(f, j) = acc;
      }
    std::vector<std::pair<std::vector<Vector>, int>> projected;
    for (const auto& [pts, mult] : *polys) {
      std::vector<Vector> q;
      q.reserve(pts->size());
      for (const auto& x : *pts) {
        Vector y(k);
        for (std::size_t f = 0; f < k; ++f) {
          Scalar acc = x[free[f]];
          for (std::size_t j = 0; j < s; ++j) acc -= c(f, j) * x[l.pivots[j]];
          y[f] = acc;
        }
        q.push_back(std::move(y));
      }
      projected.emplace_back(std::move(q), mult);
    }
    Scalar vk = mixed_volume_points(projected, k);
    sum += abs(Scalar(l.minor)) * vk;
  }
};

}  // namespace detail

/// Mixed volume of any body list. Zonotope-only lists go through mv_zonotope; lists with
/// V-polytopes (at most 5 polytope slots) use the zonotope-slot reduction above.
inline Scalar mixed_volume(const BodyList& bl, unsigned workers = default_workers()) {
  bl.validate();
  std::vector<std::pair<const Zonotope*, int>> zs;
  std::vector<std::pair<std::vector<Vector>, int>> poly_pts;
  std::size_t k = 0;
  for (const auto& [b, m] : bl.entries()) {
    if (b.is_zonotope()) {
      zs.emplace_back(&b.zonotope(), m);
    } else {
      poly_pts.emplace_back(body_points(b), m);
      k += static_cast<std::size_t>(m);
    }
  }
  if (k == 0) return mv_zonotope(bl, workers);
  if (k > kMaxHullDim) throw UnsupportedError("mixed_volume: more than 5 V-polytope slots");
  const std::size_t d = bl.dim();
  if (zs.empty()) return mixed_volume_points(poly_pts, d);

  auto prep = detail::prepare(zs);
  std::vector<SlotEnumerator::Slotted> slotted;
  for (std::size_t i = 0; i < prep.forms.size(); ++i) slotted.push_back({&prep.forms[i].vectors, prep.mult[i]});
  SlotEnumerator en(d, std::move(slotted));
  std::vector<std::pair<const std::vector<Vector>*, int>> polys;
  for (const auto& [pts, m] : poly_pts) polys.emplace_back(&pts, m);
  auto accs = en.run<detail::HybridAcc>(workers, [&] { return detail::HybridAcc{&polys, d}; });
  Scalar total = 0;
  for (const auto& a : accs) total += a.sum;
  Scalar r = prep.factor * total * Scalar(factorial(static_cast<unsigned>(k))) /
             Scalar(factorial(static_cast<unsigned>(d)));
  r.canonicalize();
  return r;
}

/// Convenience: V(K_1, ..., K_d) with each body listed once per slot.
inline Scalar mixed_volume(std::size_t dim, const std::vector<Body>& slots, unsigned workers = default_workers()) {
  BodyList bl(dim);
  for (const auto& b : slots) bl.add(b, 1);
  return mixed_volume(bl, workers);
}

/// First intrinsic volume of a zonotope, sum of generator lengths. Exact when every
/// length is rational, otherwise an enclosure of relative width at most 1e-15.
inline Enclosure intrinsic_v1(const Zonotope& z) {
  for (unsigned bits = 96;; bits *= 2) {
    Enclosure total{0, 0, true};
    for (const auto& g : z.generators()) total += sqrt_enclosure(dot(g, g), bits);
    if (total.exact || total.width() <= Scalar(1, 1000000000000000L) * total.lo) return total;
  }
}

}  // namespace mvhr
