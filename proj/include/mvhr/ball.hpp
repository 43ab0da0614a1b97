#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "mvhr/geom.hpp"
#include "mvhr/rng.hpp"
#include "mvhr/scalar.hpp"

namespace mvhr {

/// Integer grid on which ball directions are snapped.
inline constexpr std::int64_t kBallGrid = std::int64_t{1} << 20;

/// Number of sample directions used to measure the support deviation of B_m.
inline constexpr std::size_t kDeviationSamples = 10000;

/// V_1 of the unit ball in R^n, n*kappa_n/kappa_{n-1}, as q * pi^e.
/// Uses r_1 = 2 and r_n * r_{n-1} = 2 pi (n-1).
inline std::pair<Scalar, int> v1_ball_exact_form(std::size_t n) {
  if (n == 0) throw InputError("v1_ball: n must be positive");
  Scalar q = 2;
  int e = 0;
  for (std::size_t k = 2; k <= n; ++k) {
    q = Scalar(2 * static_cast<long>(k - 1)) / q;
    e = 1 - e;
  }
  return {q, e};
}

/// Rational value (exact for odd n, within 1e-12 relative error for even n).
inline Scalar v1_ball_target(std::size_t n) {
  auto [q, e] = v1_ball_exact_form(n);
  return e == 0 ? q : Scalar(q * pi_approx());
}

namespace detail {

inline std::vector<IntRow> ball_directions(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::vector<IntRow> dirs;
  const double Q = static_cast<double>(kBallGrid);
  if (n == 2) {
    for (std::size_t k = 0; k < m; ++k) {
      double th = M_PI * static_cast<double>(k) / static_cast<double>(m);
      dirs.push_back({Integer(static_cast<long>(std::llround(Q * std::cos(th)))),
                      Integer(static_cast<long>(std::llround(Q * std::sin(th))))});
    }
    return dirs;
  }
  for (std::size_t i = 0; i < n && dirs.size() < m; ++i) {
    IntRow e(n, Integer(0));
    e[i] = Integer(static_cast<long>(kBallGrid));
    dirs.push_back(std::move(e));
  }
  Rng rng(seed);
  auto norm2 = [](const IntRow& v) {
    Integer s = 0;
    for (const auto& x : v) s += x * x;
    return s;
  };
  while (dirs.size() < m) {
    IntRow best;
    Scalar best_score = 2;
    for (int c = 0; c < 64; ++c) {
      std::vector<double> y(n);
      double r2 = 0;
      do {
        r2 = 0;
        for (auto& x : y) {
          x = static_cast<double>(rng.uniform_int(-kBallGrid, kBallGrid));
          r2 += x * x;
        }
      } while (r2 == 0 || r2 > Q * Q);
      double r = std::sqrt(r2);
      IntRow u(n);
      for (std::size_t j = 0; j < n; ++j) u[j] = Integer(static_cast<long>(std::llround(Q * y[j] / r)));
      Integer nu = norm2(u);
      if (nu == 0) continue;
      Scalar score = 0;
      for (const auto& w : dirs) {
        Integer d = 0;
        for (std::size_t j = 0; j < n; ++j) d += u[j] * w[j];
        Scalar c2(d * d, nu * norm2(w));
        c2.canonicalize();
        if (c2 > score) score = c2;
      }
      if (score < best_score) {
        best_score = score;
        best = std::move(u);
      }
    }
    dirs.push_back(std::move(best));
  }
  return dirs;
}

}  // namespace detail

/// Zonotopal approximant of the unit ball: m segments along well-spread directions,
/// scaled so that V_1 matches v1_ball_target(n). Axis directions come first for n >= 3;
/// for n = 2 the directions are equally spaced angles and the seed is unused.
inline Zonotope ball_zonotope(std::size_t n, std::size_t m, std::uint64_t seed = 0) {
  if (n == 0) throw InputError("ball_zonotope: n must be positive");
  if (m < n) throw InputError("ball_zonotope: m must be at least n");
  auto dirs = detail::ball_directions(n, m, seed);
  Enclosure total{0, 0, true};
  for (const auto& u : dirs) {
    Integer s = 0;
    for (const auto& x : u) s += x * x;
    total += sqrt_enclosure(Scalar(s), 96);
  }
  const Scalar target = v1_ball_target(n);
  Scalar scale = total.exact ? Scalar(target / total.lo) : round_dyadic(target / total.mid(), 80);
  std::vector<Vector> gens;
  for (const auto& u : dirs) {
    Vector g(n);
    for (std::size_t j = 0; j < n; ++j) g[j] = scale * Scalar(u[j]);
    gens.push_back(std::move(g));
  }
  return Zonotope(n, std::move(gens));
}

/// Exact rational unit vectors used to sample the sphere, as (integer numerators, common
/// denominator). Only a hemisphere is sampled; all bodies measured here are symmetric.
inline const std::vector<std::pair<IntRow, Integer>>& deviation_sample(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::vector<std::pair<IntRow, Integer>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::pair<IntRow, Integer>> out;
  out.reserve(kDeviationSamples);
  auto push = [&](const std::vector<Scalar>& u) {
    Integer l = 1;
    for (const auto& x : u) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
    IntRow w;
    for (const auto& x : u) w.push_back(Scalar(x * l).get_num());
    out.emplace_back(std::move(w), l);
  };
  if (n == 1) {
    push({Scalar(1)});
  } else if (n == 2) {
    for (std::size_t j = 0; j < kDeviationSamples; ++j) {
      double th = M_PI * (static_cast<double>(j) + 0.5) / static_cast<double>(kDeviationSamples);
      Scalar t = round_dyadic(Scalar(std::tan(th / 2)), 20);
      Scalar d = 1 + t * t;
      push({Scalar((1 - t * t) / d), Scalar(2 * t / d)});
    }
  } else {
    // Inverse stereographic projection of points of the unit (n-1)-ball.
    Rng rng(0x5eed0000ULL + n);
    const std::int64_t R = std::int64_t{1} << 20;
    while (out.size() < kDeviationSamples) {
      std::vector<Scalar> y(n - 1);
      Scalar r2 = 0;
      for (auto& x : y) {
        x = Scalar(rng.uniform_int(-R, R), R);
        r2 += x * x;
      }
      if (r2 > 1) continue;
      Scalar d = 1 + r2;
      std::vector<Scalar> u(n);
      for (std::size_t j = 0; j + 1 < n; ++j) u[j] = 2 * y[j] / d;
      u[n - 1] = (1 - r2) / d;
      push(u);
    }
  }
  return cache.emplace(n, std::move(out)).first->second;
}

/// max over the sample of |h(u) - 1|, where h is the support function of z centered at
/// the origin.
inline Scalar support_deviation(const Zonotope& z) {
  const std::size_t n = z.dim();
  IntegerForm f = integer_form(z.generators());
  Scalar worst = 0;
  for (const auto& [w, den] : deviation_sample(n)) {
    Integer sum = 0, d;
    for (const auto& g : f.vectors) {
      d = 0;
      for (std::size_t j = 0; j < n; ++j) d += g[j] * w[j];
      sum += d < 0 ? Integer(-d) : d;
    }
    Scalar q(sum, den);
    q.canonicalize();
    Scalar h = f.content * q / 2;
    Scalar dev = abs(h - 1);
    if (dev > worst) worst = dev;
  }
  return worst;
}

/// A ball approximant together with its measured deviation.
struct Ball {
  std::size_t n;
  std::size_t m;
  std::uint64_t seed;
  Zonotope body;
  Scalar delta;
};

/// Cached constructor; repeated requests for the same (n, m, seed) share one instance.
inline std::shared_ptr<const Ball> make_ball(std::size_t n, std::size_t m, std::uint64_t seed = 0) {
  if (n == 2) seed = 0;
  static std::mutex mu;
  static std::map<std::tuple<std::size_t, std::size_t, std::uint64_t>, std::shared_ptr<const Ball>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({n, m, seed});
    if (it != cache.end()) return it->second;
  }
  Zonotope z = ball_zonotope(n, m, seed);
  Scalar delta = support_deviation(z);
  auto b = std::make_shared<const Ball>(Ball{n, m, seed, std::move(z), std::move(delta)});
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_tuple(n, m, seed), b).first->second;
}

}  // namespace mvhr
