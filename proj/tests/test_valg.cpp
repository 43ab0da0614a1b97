#include <gtest/gtest.h>

#include "mvhr/ball.hpp"
#include "mvhr/instances.hpp"
#include "mvhr/io.hpp"
#include "mvhr/valg.hpp"
#include "test_util.hpp"

using namespace mvhr;
using mvhr::testing::random_polytope;
using mvhr::testing::random_zonotope;
using mvhr::testing::vec;

namespace {

Body square() { return Zonotope(2, {vec({1, 0}), vec({0, 1})}); }

std::vector<Body> negated(const std::vector<Body>& a) {
  std::vector<Body> out;
  for (const auto& x : a) out.push_back(negate(x));
  return out;
}

std::vector<Body> random_bodies(Rng& rng, std::size_t n, std::size_t count) {
  std::vector<Body> out;
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(random_full_zonotope(rng, n, n + 1));
  return out;
}

}  // namespace

TEST(Evaluate, VolumeOfUnitCube) {
  for (std::size_t n : {1u, 2u, 3u, 4u}) EXPECT_EQ(evaluate(Valuation::volume(n), Body(unit_cube(n))), 1);
}

TEST(Evaluate, EulerTermIsConstant) {
  Rng rng(31);
  auto refs = random_bodies(rng, 3, 3);
  Valuation chi_term = Valuation::mixed(3, 0, refs);
  Scalar expected = mixed_volume(3, refs);
  for (int t = 0; t < 5; ++t) EXPECT_EQ(evaluate(chi_term, Body(random_zonotope(rng, 3, 4))), expected);
  EXPECT_EQ(evaluate(euler_characteristic(3), Body(random_zonotope(rng, 3, 2))), 1);
}

TEST(Evaluate, Homogeneity) {
  Rng rng(32);
  for (std::size_t i = 0; i <= 3; ++i) {
    Valuation v = Valuation::mixed(3, i, random_bodies(rng, 3, 3 - i));
    v += Valuation::mixed(3, i, random_bodies(rng, 3, 3 - i), Scalar(-2, 3));
    Body k = (i % 2) ? Body(random_zonotope(rng, 3, 4)) : Body(random_polytope(rng, 3, 6));
    Scalar t(5, 2), ti = 1;
    for (std::size_t p = 0; p < i; ++p) ti *= t;
    EXPECT_EQ(evaluate(v, scale(k, t)), ti * evaluate(v, k)) << "degree " << i;
  }
}

TEST(Evaluate, DimensionMismatch) {
  EXPECT_THROW(evaluate(Valuation::volume(3), square()), InputError);
}

TEST(Valuation, MergesEqualTerms) {
  Rng rng(33);
  auto refs = random_bodies(rng, 2, 1);
  Valuation v = Valuation::mixed(2, 1, refs) + Valuation::mixed(2, 1, refs, Scalar(2));
  ASSERT_EQ(v.terms().size(), 1u);
  EXPECT_EQ(v.terms()[0].coeff, 3);
  EXPECT_TRUE((v - v).is_zero());
  Valuation mixed_deg = v + Valuation::volume(2);
  EXPECT_FALSE(mixed_deg.homogeneous());
  EXPECT_THROW(mixed_deg.degree(), DegreeError);
  EXPECT_THROW(BasisValuation(2, 1, {}), InputError);
  EXPECT_THROW(BasisValuation(2, 3, {}), InputError);
}

TEST(Convolve, VolumeIsUnit) {
  Rng rng(34);
  for (std::size_t i = 0; i <= 3; ++i) {
    Valuation phi = Valuation::mixed(3, i, random_bodies(rng, 3, 3 - i), Scalar(7, 3));
    EXPECT_EQ(convolve(Valuation::volume(3), phi), phi);
    EXPECT_EQ(convolve(phi, Valuation::volume(3)), phi);
  }
}

TEST(Convolve, PlanarExample) {
  Valuation a = Valuation::mixed(2, 1, {square()});
  Valuation c = convolve(a, a);
  ASSERT_EQ(c.terms().size(), 1u);
  EXPECT_EQ(c.terms()[0].basis.degree, 0u);
  EXPECT_EQ(c.terms()[0].coeff, Scalar(1, 2));
  // (1/2) V(C, C) chi = (1/2) chi
  Rng rng(1);
  EXPECT_EQ(evaluate(c, Body(random_zonotope(rng, 2, 3))), Scalar(1, 2));
}

TEST(Convolve, DegreeBookkeepingAndErrors) {
  Rng rng(35);
  const std::size_t n = 4;
  for (int t = 0; t < 10; ++t) {
    std::size_t i = static_cast<std::size_t>(rng.uniform_int(0, 4));
    std::size_t j = static_cast<std::size_t>(rng.uniform_int(0, 4));
    Valuation phi = Valuation::mixed(n, i, random_bodies(rng, n, n - i));
    Valuation psi = Valuation::mixed(n, j, random_bodies(rng, n, n - j));
    if (i + j < n) {
      EXPECT_THROW(convolve(phi, psi), DegreeError);
    } else {
      EXPECT_EQ(convolve(phi, psi).degree(), i + j - n);
    }
  }
}

TEST(Convolve, CommutativeAndBilinear) {
  Rng rng(36);
  const std::size_t n = 3;
  Valuation a = Valuation::mixed(n, 2, random_bodies(rng, n, 1)) + Valuation::mixed(n, 2, random_bodies(rng, n, 1), Scalar(-1, 2));
  Valuation b = Valuation::mixed(n, 2, random_bodies(rng, n, 1), Scalar(3));
  Valuation c = Valuation::mixed(n, 2, random_bodies(rng, n, 1));
  EXPECT_EQ(convolve(a, b), convolve(b, a));
  EXPECT_EQ(convolve(a, b + c), convolve(a, b) + convolve(a, c));
  EXPECT_EQ(convolve(Scalar(5) * a, b), Scalar(5) * convolve(a, b));
}

TEST(Convolve, EvaluationMatchesDirectFormula) {
  Rng rng(37);
  const std::size_t n = 3;
  for (int t = 0; t < 5; ++t) {
    auto ar = random_bodies(rng, n, 1), br = random_bodies(rng, n, 2);
    Valuation phi = Valuation::mixed(n, 2, ar), psi = Valuation::mixed(n, 1, br);
    Body k(random_zonotope(rng, n, 3));
    // i=2, j=1: binom(3,3)/binom(3,2) V(K[0], A, B1, B2)
    Scalar direct = Scalar(1, 3) * mixed_volume(n, {ar[0], br[0], br[1]});
    EXPECT_EQ(evaluate(convolve(phi, psi), k), direct);
    // i=j=2: binom(4,3)/binom(4,2) V(K, A, B)
    auto cr = random_bodies(rng, n, 1);
    Scalar direct2 = Scalar(2, 3) * mixed_volume(n, {k, ar[0], cr[0]});
    EXPECT_EQ(evaluate(convolve(phi, Valuation::mixed(n, 2, cr)), k), direct2);
  }
}

TEST(ProductComplementary, EulerIsUnit) {
  Valuation psi = Valuation::volume(3) + Valuation::volume(3);
  EXPECT_EQ(product_complementary(euler_characteristic(3), psi), 2);
}

TEST(ProductComplementary, PlanarSquare) {
  Valuation phi = Valuation::mixed(2, 1, {square()});
  EXPECT_EQ(product_complementary(phi, phi), Scalar(1, 2));
  EXPECT_THROW(product_complementary(phi, Valuation::volume(2)), DegreeError);
}

TEST(ProductComplementary, OddAnnihilation) {
  Rng rng(39);
  for (std::size_t n : {2u, 3u}) {
    const Zonotope& b = make_ball(n, 8)->body;
    for (int t = 0; t < 3; ++t) {
      std::vector<Body> a;
      for (std::size_t i = 0; i + 1 < n; ++i) a.emplace_back(random_polytope(rng, n, n + 2));
      Valuation odd = Valuation::mixed(n, 1, a) - Valuation::mixed(n, 1, negated(a));
      EXPECT_EQ(product_complementary(odd, Valuation::mixed(n, n - 1, {Body(b)})), 0);
    }
  }
}

TEST(EvaluateProduct, AgreesWithComplementaryProduct) {
  // For complementary degrees the product is c vol, so its value at K is c vol(K).
  Rng rng(40);
  for (std::size_t n : {2u, 3u}) {
    for (int t = 0; t < 3; ++t) {
      Valuation phi = Valuation::mixed(n, 1, random_bodies(rng, n, n - 1));
      Valuation psi = Valuation::mixed(n, n - 1, random_bodies(rng, n, 1));
      Body k(random_full_zonotope(rng, n, n + 1));
      EXPECT_EQ(evaluate_product(phi, psi, k), product_complementary(phi, psi) * volume(k)) << "n=" << n;
    }
  }
  Valuation v = Valuation::volume(2);
  EXPECT_THROW(evaluate_product(v, v, square()), DegreeError);
}

TEST(EvaluateProduct, EulerTimesPhi) {
  Rng rng(41);
  Valuation phi = Valuation::mixed(3, 2, random_bodies(rng, 3, 1));
  Body k(random_zonotope(rng, 3, 4));
  EXPECT_EQ(evaluate_product(euler_characteristic(3), phi, k), evaluate(phi, k));
}

TEST(TripleProduct, SymmetricReflectionInvariance) {
  Rng rng(42);
  const std::size_t n = 2;
  for (int t = 0; t < 3; ++t) {
    auto a = random_bodies(rng, n, 1), b = random_bodies(rng, n, 1), c = random_bodies(rng, n, 2);
    Scalar v = triple_product_coefficient(a, b, c[0], c[1]);
    EXPECT_EQ(triple_product_coefficient(a, negated(b), c[0], c[1]), v);
    EXPECT_EQ(triple_product_coefficient({scale(a[0], Scalar(3))}, b, c[0], c[1]), 3 * v);
  }
}

TEST(TripleProduct, PlanarRatioIsConstant) {
  // In the plane V(.[0], C1, C2) acts by the scalar V(C1, C2); the triple product is then a
  // fixed multiple of the complementary product.
  Rng rng(43);
  const std::size_t n = 2;
  auto c = random_bodies(rng, n, 2);
  std::optional<Scalar> ratio;
  for (int t = 0; t < 6; ++t) {
    auto a = random_bodies(rng, n, 1), b = random_bodies(rng, n, 1);
    Scalar p = product_complementary(Valuation::mixed(n, 1, a), Valuation::mixed(n, 1, b));
    ASSERT_NE(p, 0);
    Scalar r = triple_product_coefficient(a, b, c[0], c[1]) / p;
    if (ratio) EXPECT_EQ(r, *ratio);
    ratio = r;
  }
  EXPECT_GT(*ratio, 0);
}

TEST(Lambda, BallGivesTwo) {
  for (std::size_t n : {2u, 3u, 4u}) {
    const Zonotope& b = make_ball(n, n == 2 ? 8 : n)->body;
    EXPECT_EQ(lambda_projection(std::vector<Body>(n - 1, Body(b)), b), 2);
  }
}

TEST(Lambda, ScalesWithDegree) {
  Rng rng(44);
  const Zonotope& b = make_ball(3, 6, 5)->body;
  auto a = random_bodies(rng, 3, 2);
  Scalar l = lambda_projection(a, b);
  EXPECT_EQ(lambda_projection({scale(a[0], Scalar(2)), scale(a[1], Scalar(2))}, b), 4 * l);
}

TEST(Lambda, ProjectedValuationIsPrimitive) {
  Rng rng(45);
  for (std::size_t n : {2u, 3u}) {
    const Zonotope& bz = make_ball(n, 8)->body;
    Body b(bz);
    for (int t = 0; t < 3; ++t) {
      std::vector<Body> a;
      for (std::size_t i = 0; i + 1 < n; ++i) a.emplace_back(random_polytope(rng, n, n + 2));
      Valuation phi = Valuation::mixed(n, 1, a) + Valuation::mixed(n, 1, negated(a));
      Scalar l = lambda_projection(a, bz);
      Valuation psi = phi - l * Valuation::mixed(n, 1, std::vector<Body>(n - 1, b));
      EXPECT_EQ(product_complementary(psi, Valuation::mixed(n, n - 1, {b})), 0) << "n=" << n;
    }
  }
}

TEST(Gamma, Positive) {
  for (auto [n, m] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 4}, {2, 8}, {3, 3}, {3, 6}, {4, 4}})
    EXPECT_GT(gamma_n(n, make_ball(n, m)->body), 0) << n << "," << m;
  EXPECT_THROW(gamma_n(1, make_ball(1, 1)->body), InputError);
}

TEST(Gamma, PlanarSequenceConverges) {
  std::vector<Scalar> g;
  for (std::size_t m : {8u, 16u, 32u, 64u}) g.push_back(gamma_n(2, make_ball(2, m)->body));
  for (std::size_t k = 2; k < g.size(); ++k) EXPECT_LE(abs(g[k] - g[k - 1]), abs(g[k - 1] - g[k - 2]));
  // In the plane the ratio is scale and shape independent for symmetric bodies.
  for (const auto& x : g) EXPECT_EQ(x, Scalar(1, 3));
}

TEST(ValuationJson, RoundTrip) {
  Rng rng(46);
  Valuation v = Valuation::mixed(3, 1, random_bodies(rng, 3, 2), Scalar(-5, 7)) + Valuation::volume(3);
  EXPECT_EQ(valuation_from_json(json::parse(valuation_to_json(v).dump()), 3), v);
}
