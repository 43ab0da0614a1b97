#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "mvhr/geom.hpp"
#include "mvhr/linalg.hpp"
#include "mvhr/mixedvol.hpp"

namespace mvhr {

/// Discrete even measure on the sphere. An atom (d, rho) stands for mass rho*|d| at each
/// of d/|d| and -d/|d|, where d is a primitive integer vector whose first nonzero
/// coordinate is positive.
class AtomicMeasure {
 public:
  AtomicMeasure() = default;
  explicit AtomicMeasure(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  const std::map<IntRow, Scalar>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  /// Adds rho at the canonical representative of +-c, with c = t*d; the magnitude gained is |t|*rho.
  void add(IntRow c, const Scalar& rho) {
    Integer t = canonicalize(c);
    if (t == 0 || rho == 0) return;
    auto it = atoms_.try_emplace(std::move(c), 0).first;
    it->second += rho * Scalar(t);
    if (it->second == 0) atoms_.erase(it);
  }

  void merge(const AtomicMeasure& o) {
    for (const auto& [d, r] : o.atoms_) {
      auto& slot = atoms_[d];
      slot += r;
    }
    std::erase_if(atoms_, [](const auto& kv) { return kv.second == 0; });
  }

  /// Magnitude at direction c (any nonzero integer vector; sign and scale ignored).
  Scalar magnitude(IntRow c) const {
    if (canonicalize(c) == 0) return 0;
    auto it = atoms_.find(c);
    return it == atoms_.end() ? Scalar(0) : it->second;
  }

  friend bool operator==(const AtomicMeasure& a, const AtomicMeasure& b) { return a.atoms_ == b.atoms_; }

  /// Divides c by the gcd of its entries and fixes the sign; returns |scale| (0 for c = 0).
  static Integer canonicalize(IntRow& c) {
    Integer g = 0;
    for (const auto& x : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 0) return 0;
    int sign = 0;
    for (const auto& x : c)
      if (x != 0) {
        sign = x > 0 ? 1 : -1;
        break;
      }
    for (auto& x : c) {
      mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
      if (sign < 0) x = -x;
    }
    return g;
  }

 private:
  std::size_t dim_ = 0;
  std::map<IntRow, Scalar> atoms_;
};

namespace detail {

struct MeasureAcc {
  std::size_t n;
  AtomicMeasure m;
  std::vector<IntRow> rows;
  void leaf(const SlotLeaf& l) {
    rows.resize(l.chosen.size());
    for (std::size_t i = 0; i < l.chosen.size(); ++i) rows[i] = *l.chosen[i];
    m.add(cofactor_vector(rows, n), 1);
  }
};

}  // namespace detail

/// Mixed area measure S(Z_1[k_1], ..., Z_p[k_p], .) of zonotopes in R^n, sum k_i = n-1.
/// Each (n-1)-tuple of generators contributes its (n-1)-volume / (n-1)! at +-normal.
inline AtomicMeasure mixed_area_measure(const std::vector<std::pair<Zonotope, int>>& bodies, std::size_t n,
                                        unsigned workers = default_workers()) {
  if (n < 2) throw InputError("mixed_area_measure: n must be at least 2");
  std::size_t total = 0;
  std::vector<std::pair<const Zonotope*, int>> zs;
  for (const auto& [z, k] : bodies) {
    if (k <= 0) throw InputError("mixed_area_measure: multiplicity must be positive");
    if (z.dim() != n) throw InputError("mixed_area_measure: body dimension mismatch");
    total += static_cast<std::size_t>(k);
    zs.emplace_back(&z, k);
  }
  if (total != n - 1) throw InputError("mixed_area_measure: multiplicities must sum to n-1");
  auto prep = detail::prepare(zs);
  std::vector<SlotEnumerator::Slotted> slotted;
  for (std::size_t i = 0; i < prep.forms.size(); ++i) slotted.push_back({&prep.forms[i].vectors, prep.mult[i]});
  SlotEnumerator en(n, std::move(slotted));
  auto accs = en.run<detail::MeasureAcc>(workers, [n] { return detail::MeasureAcc{n, AtomicMeasure(n), {}}; });
  AtomicMeasure out(n);
  for (const auto& a : accs) out.merge(a.m);
  Scalar f = prep.factor / Scalar(factorial(static_cast<unsigned>(n - 1)));
  AtomicMeasure scaled(n);
  for (const auto& [d, r] : out.atoms()) scaled.add(d, r * f);
  return scaled;
}

/// S(K_1, K_2, B[n-3], .).
inline AtomicMeasure mixed_area_measure(const Zonotope& k1, const Zonotope& k2, const Zonotope& b, std::size_t n) {
  if (n < 3) throw InputError("mixed_area_measure: n must be at least 3");
  std::vector<std::pair<Zonotope, int>> bodies;
  if (k1 == k2)
    bodies.emplace_back(k1, 2);
  else
    bodies = {{k1, 1}, {k2, 1}};
  if (n > 3) {
    bool merged = false;
    for (auto& [z, k] : bodies)
      if (z == b) {
        k += static_cast<int>(n - 3);
        merged = true;
      }
    if (!merged) bodies.emplace_back(b, static_cast<int>(n - 3));
  }
  return mixed_area_measure(bodies, n);
}

inline bool measures_equal(const AtomicMeasure& a, const AtomicMeasure& b) { return a == b; }

/// First direction (in canonical order) where the two measures differ.
inline std::optional<std::pair<IntRow, std::pair<Scalar, Scalar>>> first_difference(const AtomicMeasure& a,
                                                                                    const AtomicMeasure& b) {
  auto ia = a.atoms().begin(), ib = b.atoms().begin();
  while (ia != a.atoms().end() || ib != b.atoms().end()) {
    if (ib == b.atoms().end() || (ia != a.atoms().end() && ia->first < ib->first))
      return std::make_pair(ia->first, std::make_pair(ia->second, Scalar(0)));
    if (ia == a.atoms().end() || ib->first < ia->first)
      return std::make_pair(ib->first, std::make_pair(Scalar(0), ib->second));
    if (ia->second != ib->second) return std::make_pair(ia->first, std::make_pair(ia->second, ib->second));
    ++ia;
    ++ib;
  }
  return std::nullopt;
}

/// Integral of the support function of z (both hemispheres) against the measure:
/// sum over atoms of rho * sum_g |<g, d>|.
inline Scalar pairing(const AtomicMeasure& mu, const Zonotope& z) {
  Scalar total = 0;
  for (const auto& [d, rho] : mu.atoms()) {
    Scalar s = 0;
    for (const auto& g : z.generators()) {
      Scalar x = 0;
      for (std::size_t j = 0; j < d.size(); ++j) x += g[j] * Scalar(d[j]);
      s += abs(x);
    }
    total += rho * s;
  }
  return total;
}

/// Linear conditions for sum_{a<=b} c_ab V(.[n-2], K_a, K_b) to be primitive relative to B:
/// one row per atom direction of the measures S(K_a, K_b, B[n-3], .), one column per pair.
struct PrimitivityConstraints {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<IntRow> directions;
  Matrix matrix;

  std::vector<std::vector<Scalar>> kernel() const { return nullspace(matrix); }
};

inline std::vector<std::pair<std::size_t, std::size_t>> unordered_pairs(std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b) out.emplace_back(a, b);
  return out;
}

inline PrimitivityConstraints primitivity_constraints(const std::vector<Zonotope>& pool, std::size_t n,
                                                      const Zonotope& ball) {
  if (n < 4) throw InputError("primitivity_constraints: n must be at least 4");
  if (pool.empty()) throw InputError("primitivity_constraints: empty pool");
  PrimitivityConstraints pc;
  pc.pairs = unordered_pairs(pool.size());
  std::vector<AtomicMeasure> cols;
  std::map<IntRow, std::size_t> row_of;
  for (auto [a, b] : pc.pairs) {
    cols.push_back(mixed_area_measure(pool[a], pool[b], ball, n));
    for (const auto& [d, r] : cols.back().atoms()) row_of.emplace(d, 0);
  }
  for (auto& [d, idx] : row_of) {
    idx = pc.directions.size();
    pc.directions.push_back(d);
  }
  pc.matrix = Matrix(pc.directions.size(), pc.pairs.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& [d, r] : cols[c].atoms()) pc.matrix(row_of.at(d), c) = r;
  return pc;
}

}  // namespace mvhr
