#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "mvhr/ball.hpp"
#include "mvhr/geom.hpp"
#include "mvhr/hull.hpp"
#include "mvhr/jacobi.hpp"
#include "mvhr/measures.hpp"
#include "mvhr/mixedvol.hpp"
#include "mvhr/report.hpp"
#include "mvhr/valg.hpp"

namespace mvhr {

namespace detail {

inline void require_bodies(const std::vector<Body>& a, std::size_t n, const char* who) {
  if (n < 2) throw InputError(std::string(who) + ": n must be at least 2");
  if (a.size() != n - 1) throw InputError(std::string(who) + ": need n-1 bodies");
  for (const auto& b : a) {
    if (b.dim() != n) throw InputError(std::string(who) + ": body dimension mismatch");
    if (!b.is_zonotope() && n > 2) throw UnsupportedError(std::string(who) + ": V-polytope bodies only for n = 2");
  }
}

inline json bodies_json(std::vector<Body> a) {
  std::sort(a.begin(), a.end(), body_less);
  json out = json::array();
  for (const auto& b : a) out.push_back(body_to_json(b));
  return out;
}

inline json ball_json(const Ball& b) {
  return json{{"n", b.n}, {"m", b.m}, {"seed", b.seed}, {"delta", to_string(b.delta)}};
}

/// Doubled-space mixed volume V(e1 A..., e2 A..., rest...).
struct Doubled {
  std::size_t n;
  StandardEmbeddings e;
  LinearEmbedding neg_iota2;

  explicit Doubled(std::size_t n_) : n(n_), e(standard_embeddings(n_)), neg_iota2(block_embedding(n_, 2, 1, -1)) {}

  /// V(iota1 A..., (+-)iota2 A..., Delta2 X, Delta2 Y).
  Scalar pair_term(const std::vector<Body>& a, bool negate_second, const Body& x, const Body& y,
                   unsigned workers) const {
    BodyList bl(2 * n);
    for (const auto& b : a) bl.add(apply_embedding(e.iota1, b), 1);
    for (const auto& b : a) bl.add(apply_embedding(negate_second ? neg_iota2 : e.iota2, b), 1);
    bl.add(apply_embedding(e.delta2, x), 1);
    bl.add(apply_embedding(e.delta2, y), 1);
    return mixed_volume(bl, workers);
  }
};

/// Quantities that depend only on the ball, cached per (n, m, seed).
struct BallConstants {
  Scalar vol;    // vol(B)
  Scalar big_n;  // V(iota1 B[n-1], iota2 B[n-1], Delta2 B[2])
  Scalar sum_nq; // sum over the 2n ball slots of big_n with that slot replaced by Q
  Scalar uq;     // V(B[n-1], Q)
  Scalar gamma;
};

inline std::shared_ptr<const BallConstants> ball_constants(const Ball& ball, unsigned workers) {
  static std::mutex mu;
  static std::map<std::tuple<std::size_t, std::size_t, std::uint64_t>, std::shared_ptr<const BallConstants>> cache;
  auto key = std::make_tuple(ball.n, ball.m, ball.seed);
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const std::size_t n = ball.n;
  const Zonotope& b = ball.body;
  const Zonotope q = unit_cube_around_ball(n);
  auto e = standard_embeddings(n);
  auto c = std::make_shared<BallConstants>();
  c->vol = volume(b);
  c->big_n = gamma_numerator(b, workers);
  c->gamma = 2 * c->big_n / (c->vol * c->vol);
  Body i1b = apply_embedding(e.iota1, Body(b)), i2b = apply_embedding(e.iota2, Body(b)),
       db = apply_embedding(e.delta2, Body(b));
  Body i1q = apply_embedding(e.iota1, Body(q)), i2q = apply_embedding(e.iota2, Body(q)),
       dq = apply_embedding(e.delta2, Body(q));
  const int k = static_cast<int>(n) - 1;
  Scalar s = 0;
  {
    BodyList bl(2 * n);
    bl.add(i1q, 1);
    if (k > 1) bl.add(i1b, k - 1);
    bl.add(i2b, k).add(db, 2);
    s += Scalar(k) * mixed_volume(bl, workers);
  }
  {
    BodyList bl(2 * n);
    bl.add(i1b, k).add(i2q, 1);
    if (k > 1) bl.add(i2b, k - 1);
    bl.add(db, 2);
    s += Scalar(k) * mixed_volume(bl, workers);
  }
  {
    BodyList bl(2 * n);
    bl.add(i1b, k).add(i2b, k).add(dq, 1).add(db, 1);
    s += 2 * mixed_volume(bl, workers);
  }
  c->sum_nq = s;
  {
    BodyList bl(n);
    bl.add(b, k).add(q, 1);
    c->uq = mixed_volume(bl, workers);
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, c).first->second;
}

inline Scalar v_with_ball(const std::vector<Body>& a, const Body& x, unsigned workers) {
  BodyList bl(x.dim());
  for (const auto& b : a) bl.add(b, 1);
  bl.add(x, 1);
  return mixed_volume(bl, workers);
}

inline bool all_equal_to(const std::vector<Body>& a, const Zonotope& z) {
  return std::all_of(a.begin(), a.end(), [&](const Body& b) { return b.is_zonotope() && b.zonotope() == z; });
}

inline bool all_zonotopes(const std::vector<Body>& a) {
  return std::all_of(a.begin(), a.end(), [](const Body& b) { return b.is_zonotope(); });
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Tolerance model
//
// delta(m) is the measured sup-deviation of h_{B_m} from 1; every ball slot of a
// mixed volume is charged delta times the same mixed volume with that slot replaced by
// Q = [-1,1]^n, which contains the unit ball.

/// Budget of the doubled-space terms V(iota1 A; +-iota2 A; Delta2 B[2]) for the given signs.
inline Scalar doubled_budget(const std::vector<Body>& a, const Ball& ball, bool plus_term, bool minus_term,
                             unsigned workers) {
  detail::Doubled dd(ball.n);
  Body q = unit_cube_around_ball(ball.n);
  Scalar c = 0;
  if (plus_term) c += 2 * dd.pair_term(a, false, q, ball.body, workers);
  if (minus_term) c += 2 * dd.pair_term(a, true, q, ball.body, workers);
  return c;
}

/// Relative first-order budget of gamma * V(A..., B)^2.
inline Scalar rhs_relative_budget(const std::vector<Body>& a, const Ball& ball, unsigned workers) {
  auto bc = detail::ball_constants(ball, workers);
  Scalar av = detail::v_with_ball(a, ball.body, workers);
  Scalar aq = detail::v_with_ball(a, unit_cube_around_ball(ball.n), workers);
  Scalar rel = bc->sum_nq / bc->big_n + 2 * Scalar(static_cast<long>(ball.n)) * bc->uq / bc->vol;
  if (av != 0) rel += 2 * aq / av;
  return rel;
}

// ---------------------------------------------------------------------------
// Main inequalities

/// V(i1 A; i2 A; D B[2]) >= V(i1 A; -i2 A; D B[2]).
inline CheckReport check_odd_inequality(const std::vector<Body>& a, std::size_t n, std::size_t m, std::uint64_t seed,
                                        unsigned workers = default_workers()) {
  Stopwatch sw;
  detail::require_bodies(a, n, "check_odd_inequality");
  auto ball = make_ball(n, m, seed);
  detail::Doubled dd(n);
  CheckReport r;
  r.id = "odd";
  r.n = n;
  r.m = m;
  r.seed = seed;
  r.inputs = json{{"A", detail::bodies_json(a)}, {"ball", detail::ball_json(*ball)}};
  r.lhs = dd.pair_term(a, false, ball->body, ball->body, workers);
  r.rhs = dd.pair_term(a, true, ball->body, ball->body, workers);
  r.deficit = r.lhs - r.rhs;
  r.exact_mode = detail::all_zonotopes(a);
  if (!r.exact_mode) {
    Scalar budget = doubled_budget(a, *ball, true, true, workers);
    r.tolerance = ball->delta * budget;
    r.extras["budget"] = to_string(budget);
  }
  r.verdict = judge(r.deficit, r.tolerance, r.exact_mode, r.exact_mode);
  r.extras["relative_to"] = "B_m";
  r.millis = sw.millis();
  return r;
}

namespace detail {

inline CheckReport even_like(const char* id, bool with_plus, const Scalar& gamma_factor, const std::vector<Body>& a,
                             std::size_t n, std::size_t m, std::uint64_t seed, unsigned workers) {
  Stopwatch sw;
  require_bodies(a, n, id);
  auto ball = make_ball(n, m, seed);
  auto bc = ball_constants(*ball, workers);
  Doubled dd(n);
  CheckReport r;
  r.id = id;
  r.n = n;
  r.m = m;
  r.seed = seed;
  r.inputs = json{{"A", bodies_json(a)}, {"ball", ball_json(*ball)}};
  Scalar minus = dd.pair_term(a, true, ball->body, ball->body, workers);
  Scalar plus = with_plus ? dd.pair_term(a, false, ball->body, ball->body, workers) : Scalar(0);
  r.lhs = plus + minus;
  Scalar av = v_with_ball(a, ball->body, workers);
  r.rhs = gamma_factor * bc->gamma * av * av;
  r.deficit = r.rhs - r.lhs;
  r.exact_mode = all_equal_to(a, ball->body);
  if (!r.exact_mode) {
    Scalar budget = doubled_budget(a, *ball, with_plus, true, workers) + r.rhs * rhs_relative_budget(a, *ball, workers);
    r.tolerance = ball->delta * budget;
    r.extras["budget"] = to_string(budget);
  }
  r.verdict = judge(r.deficit, r.tolerance, r.exact_mode, r.exact_mode);
  r.extras["gamma"] = to_string(bc->gamma);
  r.extras["relative_to"] = "B_m";
  r.millis = sw.millis();
  return r;
}

}  // namespace detail

/// V(i1 A; i2 A; D B[2]) + V(i1 A; -i2 A; D B[2]) <= gamma_n V(A..., B)^2.
inline CheckReport check_even_inequality(const std::vector<Body>& a, std::size_t n, std::size_t m,
                                         std::uint64_t seed, unsigned workers = default_workers()) {
  return detail::even_like("even", true, Scalar(1), a, n, m, seed, workers);
}

/// V(i1 A; -i2 A; D B[2]) <= (gamma_n / 2) V(A..., B)^2.
inline CheckReport check_corollary(const std::vector<Body>& a, std::size_t n, std::size_t m, std::uint64_t seed,
                                   unsigned workers = default_workers()) {
  return detail::even_like("corollary", false, Scalar(1, 2), a, n, m, seed, workers);
}

// ---------------------------------------------------------------------------
// Mixed area measures and the primitive quadratic form

namespace detail {

/// V(X1, X2, X3, X4, B[n-4]).
inline Scalar mv4(const Zonotope& x1, const Zonotope& x2, const Zonotope& x3, const Zonotope& x4, const Zonotope& b,
                  unsigned workers) {
  const std::size_t n = b.dim();
  BodyList bl(n);
  bl.add(x1, 1).add(x2, 1).add(x3, 1).add(x4, 1);
  if (n > 4) bl.add(b, static_cast<int>(n - 4));
  return mixed_volume(bl, workers);
}

inline json pool_json(const std::vector<Zonotope>& pool) {
  json out = json::array();
  for (const auto& z : pool) out.push_back(body_to_json(z));
  return out;
}

}  // namespace detail

/// V(K1[2],K2[2],B[n-4]) + V(L1[2],L2[2],B[n-4]) >= 2 V(K1,K2,L1,L2,B[n-4]) under
/// S(K1,K2,B[n-3],.) = S(L1,L2,B[n-3],.). Exact; an unmet hypothesis is vacuous.
inline CheckReport check_mixed_area_inequality(const Zonotope& k1, const Zonotope& k2, const Zonotope& l1,
                                               const Zonotope& l2, std::size_t n, std::size_t m, std::uint64_t seed,
                                               unsigned workers = default_workers()) {
  Stopwatch sw;
  if (n < 4) throw InputError("check_mixed_area_inequality: n must be at least 4");
  for (const auto* z : {&k1, &k2, &l1, &l2})
    if (z->dim() != n) throw InputError("check_mixed_area_inequality: body dimension mismatch");
  auto ball = make_ball(n, m, seed);
  const Zonotope& b = ball->body;
  CheckReport r;
  r.id = "mixed-area";
  r.n = n;
  r.m = m;
  r.seed = seed;
  r.exact_mode = true;
  r.inputs = json{{"K", detail::pool_json({k1, k2})}, {"L", detail::pool_json({l1, l2})}, {"ball", detail::ball_json(*ball)}};
  AtomicMeasure sk = mixed_area_measure(k1, k2, b, n), sl = mixed_area_measure(l1, l2, b, n);
  r.extras["hypothesis"] = measures_equal(sk, sl);
  r.extras["relative_to"] = "B_m";
  if (!measures_equal(sk, sl)) {
    r.verdict = Verdict::Vacuous;
    r.extras["note"] = "hypothesis not met";
    r.millis = sw.millis();
    return r;
  }
  r.lhs = detail::mv4(k1, k1, k2, k2, b, workers) + detail::mv4(l1, l1, l2, l2, b, workers);
  r.rhs = 2 * detail::mv4(k1, k2, l1, l2, b, workers);
  r.deficit = r.lhs - r.rhs;
  r.verdict = judge(r.deficit, 0, true);
  r.millis = sw.millis();
  return r;
}

/// Symmetric Gram matrix M[(a,b),(c,d)] = V(K_a, K_b, K_c, K_d, B[n-4]) over unordered pairs.
inline Matrix gram_form(const std::vector<Zonotope>& pool, const Zonotope& ball, unsigned workers = default_workers()) {
  auto pairs = unordered_pairs(pool.size());
  Matrix g(pairs.size(), pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i; j < pairs.size(); ++j) {
      auto [a, b] = pairs[i];
      auto [c, d] = pairs[j];
      g(i, j) = detail::mv4(pool[a], pool[b], pool[c], pool[d], ball, workers);
      g(j, i) = g(i, j);
    }
  return g;
}

inline Scalar quadratic_form(const Matrix& g, const std::vector<Scalar>& c) {
  Scalar s = 0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    Scalar row = 0;
    for (std::size_t j = 0; j < c.size(); ++j)
      if (c[j] != 0) row += g(i, j) * c[j];
    s += c[i] * row;
  }
  return s;
}

/// Positive semidefiniteness of the Gram form on B_m-primitive combinations of the pool.
inline CheckReport check_hr_psd(const std::vector<Zonotope>& pool, std::size_t n, std::size_t m, std::uint64_t seed,
                                unsigned workers = default_workers()) {
  Stopwatch sw;
  if (n < 4) throw InputError("check_hr_psd: n must be at least 4");
  if (pool.empty()) throw InputError("check_hr_psd: empty pool");
  auto ball = make_ball(n, m, seed);
  CheckReport r;
  r.id = "hr-psd";
  r.n = n;
  r.m = m;
  r.seed = seed;
  r.exact_mode = true;
  r.inputs = json{{"pool", detail::pool_json(pool)}, {"ball", detail::ball_json(*ball)}};
  r.extras["relative_to"] = "B_m";
  auto pc = primitivity_constraints(pool, n, ball->body);
  auto kernel = pc.kernel();
  r.extras["pairs"] = pc.pairs.size();
  r.extras["kernel_dim"] = kernel.size();
  if (kernel.empty()) {
    r.verdict = Verdict::Vacuous;
    r.extras["note"] = "empty primitive kernel";
    r.millis = sw.millis();
    return r;
  }
  Matrix g = gram_form(pool, ball->body, workers);
  json forms = json::array();
  Scalar min_form;
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    Scalar q = quadratic_form(g, kernel[i]);
    forms.push_back(to_string(q));
    if (i == 0 || q < min_form) min_form = q;
  }
  // Restricted Gram K^T M K, exact, then the floating-point spectrum.
  const std::size_t k = kernel.size();
  std::vector<std::vector<double>> red(k, std::vector<double>(k));
  double max_entry = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      Scalar s = 0;
      for (std::size_t p = 0; p < g.rows(); ++p) {
        if (kernel[i][p] == 0) continue;
        for (std::size_t q = 0; q < g.rows(); ++q)
          if (kernel[j][q] != 0) s += kernel[i][p] * g(p, q) * kernel[j][q];
      }
      red[i][j] = red[j][i] = s.get_d();
      max_entry = std::max(max_entry, std::abs(s.get_d()));
    }
  double gram_norm = 0;
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j) gram_norm = std::max(gram_norm, std::abs(g(i, j).get_d()));
  auto ev = symmetric_eigenvalues(red);
  double max_abs = 0;
  for (double x : ev) max_abs = std::max(max_abs, std::abs(x));
  bool spectrum_ok = ev.front() >= -1e-9 * std::max(max_abs, max_entry);
  json evj = json::array();
  for (double x : ev) evj.push_back(to_decimal(Scalar(x), 12));
  r.extras["kernel_forms"] = forms;
  r.extras["eigenvalues"] = evj;
  r.extras["gram_max_entry"] = to_decimal(Scalar(gram_norm), 12);
  r.extras["spectrum_ok"] = spectrum_ok;
  r.lhs = min_form;
  r.rhs = 0;
  r.deficit = min_form;
  r.verdict = (min_form >= 0 && spectrum_ok) ? Verdict::Pass : Verdict::Fail;
  r.millis = sw.millis();
  return r;
}

// ---------------------------------------------------------------------------
// Hard Lefschetz rank preservation

namespace detail {

inline void multisets(std::size_t pool, std::size_t size, std::size_t start, std::vector<std::size_t>& cur,
                      std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == size) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < pool; ++i) {
    cur.push_back(i);
    multisets(pool, size, i, cur, out);
    cur.pop_back();
  }
}

inline std::size_t evaluation_rank(const std::vector<Valuation>& vals, const std::vector<Body>& probes,
                                   unsigned workers) {
  Matrix ev(vals.size(), probes.size());
  for (std::size_t i = 0; i < vals.size(); ++i)
    for (std::size_t j = 0; j < probes.size(); ++j) ev(i, j) = evaluate(vals[i], probes[j], workers);
  return rank(ev);
}

}  // namespace detail

/// Source: span of V(.[n-i], multiset of size i from the pool). Image: convolution with
/// V(.[n-1], B_m) applied n-2i times. Ranks are compared via evaluations at probes tK_j + sB_m.
inline CheckReport check_hard_lefschetz_rank(const std::vector<Zonotope>& pool, std::size_t n, std::size_t i,
                                             std::size_t m, std::uint64_t seed, unsigned workers = default_workers()) {
  Stopwatch sw;
  if (2 * i >= n) throw DegreeError("check_hard_lefschetz_rank: need 2i < n");
  for (const auto& z : pool)
    if (z.dim() != n) throw InputError("check_hard_lefschetz_rank: body dimension mismatch");
  if (i > 0 && pool.empty()) throw InputError("check_hard_lefschetz_rank: empty pool");
  auto ball = make_ball(n, m, seed);
  const Zonotope& b = ball->body;
  CheckReport r;
  r.id = "hard-lefschetz";
  r.n = n;
  r.m = m;
  r.seed = seed;
  r.exact_mode = true;
  r.inputs = json{{"pool", detail::pool_json(pool)}, {"i", i}, {"ball", detail::ball_json(*ball)}};
  r.extras["relative_to"] = "B_m";

  std::vector<std::vector<std::size_t>> ms;
  std::vector<std::size_t> cur;
  detail::multisets(pool.size(), i, 0, cur, ms);
  Valuation lef = Valuation::mixed(n, n - 1, {Body(b)});
  std::vector<Valuation> source, image;
  for (const auto& s : ms) {
    std::vector<Body> refs;
    for (auto idx : s) refs.emplace_back(pool[idx]);
    Valuation v = Valuation::mixed(n, n - i, refs);
    Valuation w = v;
    for (std::size_t k = 0; k < n - 2 * i; ++k) w = convolve(w, lef);
    source.push_back(std::move(v));
    image.push_back(std::move(w));
  }
  std::vector<Body> probes;
  for (long s = 1; s <= 3; ++s) probes.emplace_back(scale(b, Scalar(s)));
  for (const auto& z : pool)
    for (long t = 1; t <= 2; ++t)
      for (long s = 1; s <= 3; ++s) probes.emplace_back(minkowski_sum(scale(z, Scalar(t)), scale(b, Scalar(s))));
  std::size_t rs = detail::evaluation_rank(source, probes, workers);
  std::size_t ri = detail::evaluation_rank(image, probes, workers);
  r.lhs = Scalar(static_cast<long>(rs));
  r.rhs = Scalar(static_cast<long>(ri));
  r.deficit = r.rhs - r.lhs;
  r.extras["source_dim"] = source.size();
  r.extras["probes"] = probes.size();
  r.verdict = judge(r.deficit, 0, true, true);
  r.millis = sw.millis();
  return r;
}

// ---------------------------------------------------------------------------
// Planar isoperimetric correspondence

enum class SignClass { Positive, Zero, Negative, Indeterminate };

inline const char* sign_class_name(SignClass c) {
  switch (c) {
    case SignClass::Positive: return "positive";
    case SignClass::Zero: return "zero";
    case SignClass::Negative: return "negative";
    case SignClass::Indeterminate: return "indeterminate";
  }
  return "indeterminate";
}

/// Sign class of a quantity known to lie in [lo, hi], with a zero band of half-width eps.
inline SignClass classify(const Scalar& lo, const Scalar& hi, const Scalar& eps) {
  if (lo > eps) return SignClass::Positive;
  if (hi < -eps) return SignClass::Negative;
  if (lo >= -eps && hi <= eps) return SignClass::Zero;
  return SignClass::Indeterminate;
}

/// Perimeter enclosure and area of a convex polygon given by points.
inline std::pair<Enclosure, Scalar> polygon_perimeter_area(const std::vector<Vector>& pts) {
  ConvexHull h(pts);
  Enclosure per{0, 0, true};
  if (h.affine_dim() < 2) throw InputError("polygon: degenerate");
  for (const auto& f : h.facets()) {
    Vector d = h.points()[f[0]] - h.points()[f[1]];
    per += sqrt_enclosure(dot(d, d), 96);
  }
  return {per, h.volume()};
}

/// Compares the even-inequality deficit with the isoperimetric deficit
/// length(boundary(A-A))^2/(4 pi) - area(A-A). Equal sign classes pass; opposite
/// certified signs fail.
inline CheckReport check_isoperimetric_n2(const Body& a, std::size_t m, unsigned workers = default_workers()) {
  Stopwatch sw;
  if (a.dim() != 2) throw InputError("check_isoperimetric_n2: body must be planar");
  CheckReport ev = check_even_inequality({a}, 2, m, 0, workers);
  auto ball = make_ball(2, m, 0);
  std::vector<Vector> pa = body_points(a), na;
  for (const auto& p : pa) na.push_back(-p);
  auto [per, area] = polygon_perimeter_area(minkowski_points(pa, na));
  Enclosure pi = pi_enclosure();
  Scalar iso_lo = per.lo * per.lo / (4 * pi.hi) - area;
  Scalar iso_hi = per.hi * per.hi / (4 * pi.lo) - area;
  const Scalar& d = ball->delta;
  Scalar iso_eps = 8 * d / ((1 - d) * (1 - d)) * per.hi * per.hi / (4 * pi.lo);
  SignClass cv = classify(ev.deficit, ev.deficit, ev.tolerance);
  SignClass ci = classify(iso_lo, iso_hi, iso_eps);

  CheckReport r = ev;
  r.id = "isoperimetric";
  r.inputs = json{{"A", body_to_json(a)}, {"ball", detail::ball_json(*ball)}};
  r.extras["valuation_class"] = sign_class_name(cv);
  r.extras["isoperimetric_class"] = sign_class_name(ci);
  r.extras["isoperimetric_deficit_lo"] = to_string(iso_lo);
  r.extras["isoperimetric_deficit_hi"] = to_string(iso_hi);
  r.extras["isoperimetric_tolerance"] = to_string(iso_eps);
  r.extras["isoperimetric_decimal"] = to_decimal(iso_lo);
  r.exact_mode = false;
  // A zero-band class only says |x| <= eps, so it is compatible with a certified sign;
  // such a pair is unresolved at this resolution rather than contradictory.
  if (cv == ci && cv != SignClass::Indeterminate)
    r.verdict = Verdict::Pass;
  else if ((cv == SignClass::Zero && ci != SignClass::Indeterminate) ||
           (ci == SignClass::Zero && cv != SignClass::Indeterminate))
    r.verdict = Verdict::PassWithinTolerance;
  else
    r.verdict = Verdict::Fail;
  r.millis = sw.millis();
  return r;
}

}  // namespace mvhr
