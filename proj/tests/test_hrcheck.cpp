#include <gtest/gtest.h>

#include <Eigen/Dense>

#include "mvhr/hrcheck.hpp"
#include "mvhr/instances.hpp"
#include "test_util.hpp"

using namespace mvhr;
using mvhr::testing::vec;

namespace {

Zonotope sq(std::size_t n, std::size_t a, std::size_t b) {
  std::vector<Scalar> s(n, 0);
  s[a] = 1;
  s[b] = 1;
  return box(s);
}

std::vector<Body> symmetric_tuple(Rng& rng, std::size_t n) {
  std::vector<Body> a;
  for (std::size_t i = 0; i + 1 < n; ++i) a.emplace_back(random_full_zonotope(rng, n, n + 1));
  return a;
}

}  // namespace

TEST(OddCheck, SymmetricInputsAreExactEqualities) {
  Rng rng(51);
  for (std::size_t n : {2u, 3u}) {
    for (int t = 0; t < 3; ++t) {
      auto r = check_odd_inequality(symmetric_tuple(rng, n), n, 8, 1);
      EXPECT_TRUE(r.exact_mode);
      EXPECT_EQ(r.deficit, 0);
      EXPECT_EQ(r.verdict, Verdict::Pass);
    }
  }
}

TEST(OddCheck, TranslationInvariantReport) {
  Rng rng(52);
  VPolytope t = random_triangle(rng);
  std::vector<Vector> moved;
  for (const auto& v : t.vertices()) moved.push_back(v + vec({3, -2}));
  auto r1 = check_odd_inequality({Body(t)}, 2, 8, 0);
  auto r2 = check_odd_inequality({Body(VPolytope(2, moved))}, 2, 8, 0);
  EXPECT_EQ(r1.lhs, r2.lhs);
  EXPECT_EQ(r1.rhs, r2.rhs);
  EXPECT_EQ(r1.tolerance, r2.tolerance);
  EXPECT_EQ(r1.verdict, r2.verdict);

  Zonotope z = random_full_zonotope(rng, 2, 3);
  auto r3 = check_odd_inequality({Body(z)}, 2, 8, 0);
  auto r4 = check_odd_inequality({Body(translate_of(z, rng))}, 2, 8, 0);
  EXPECT_EQ(r3.lhs, r4.lhs);
  EXPECT_EQ(r3.rhs, r4.rhs);
}

TEST(OddCheck, TriangleAcrossLevels) {
  std::vector<Scalar> tol;
  for (std::size_t m : {8u, 16u, 32u}) {
    auto r = check_odd_inequality({Body(standard_triangle())}, 2, m, 0);
    EXPECT_TRUE(r.ok());
    EXPECT_GE(r.deficit, -r.tolerance);
    tol.push_back(r.tolerance);
  }
  EXPECT_LT(tol[1], tol[0]);
  EXPECT_LT(tol[2], tol[1]);
}

TEST(OddCheck, Guards) {
  Rng rng(53);
  EXPECT_THROW(check_odd_inequality({}, 2, 8, 0), InputError);
  std::vector<Body> poly3{Body(VPolytope(3, {vec({0, 0, 0}), vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1})})),
                          Body(random_full_zonotope(rng, 3, 3))};
  EXPECT_THROW(check_odd_inequality(poly3, 3, 8, 0), UnsupportedError);
}

TEST(EvenCheck, BallIsExactEquality) {
  for (std::size_t n : {2u, 3u}) {
    auto ball = make_ball(n, 8);
    auto r = check_even_inequality(std::vector<Body>(n - 1, Body(ball->body)), n, 8, 0);
    EXPECT_TRUE(r.exact_mode);
    EXPECT_EQ(r.deficit, 0);
    EXPECT_EQ(r.verdict, Verdict::Pass);
    auto c = check_corollary(std::vector<Body>(n - 1, Body(ball->body)), n, 8, 0);
    EXPECT_EQ(c.deficit, 0);
  }
}

TEST(EvenCheck, SquareScaleInvariance) {
  for (long s : {1L, 3L}) {
    auto r1 = check_even_inequality({Body(scale(unit_cube(2), Scalar(s)))}, 2, 8, 0);
    auto r2 = check_even_inequality({Body(scale(unit_cube(2), Scalar(s * 5, 2)))}, 2, 8, 0);
    Scalar f = Scalar(25, 4);
    EXPECT_EQ(r2.lhs, f * r1.lhs);
    EXPECT_EQ(r2.rhs, f * r1.rhs);
    EXPECT_EQ(r2.tolerance, f * r1.tolerance);
    EXPECT_EQ(r1.verdict, r2.verdict);
  }
}

TEST(EvenCheck, RandomSymmetricThreeDim) {
  Rng rng(54);
  for (int t = 0; t < 3; ++t) {
    auto r = check_even_inequality(symmetric_tuple(rng, 3), 3, 12, 1);
    EXPECT_TRUE(r.ok()) << to_decimal(r.deficit) << " tol " << to_decimal(r.tolerance);
  }
}

TEST(Corollary, HalfOfEvenLhsOnSymmetricInputs) {
  Rng rng(55);
  for (std::size_t n : {2u, 3u}) {
    auto a = symmetric_tuple(rng, n);
    auto e = check_even_inequality(a, n, 8, 0);
    auto c = check_corollary(a, n, 8, 0);
    EXPECT_EQ(2 * c.lhs, e.lhs);
    EXPECT_EQ(2 * c.rhs, e.rhs);
  }
}

TEST(Corollary, TriangleWithinTolerance) {
  auto r = check_corollary({Body(standard_triangle())}, 2, 16, 0);
  EXPECT_FALSE(r.exact_mode);
  EXPECT_TRUE(r.ok());
}

TEST(Tolerance, ShrinksWithResolutionAndScalesWithDilation) {
  EXPECT_LT(make_ball(2, 16)->delta, make_ball(2, 8)->delta);
  EXPECT_LT(make_ball(2, 32)->delta, make_ball(2, 16)->delta);
  Body t(standard_triangle());
  auto r1 = check_odd_inequality({t}, 2, 8, 0);
  auto r2 = check_odd_inequality({scale(t, Scalar(3))}, 2, 8, 0);
  // Both sides are quadratic in the body at n = 2.
  EXPECT_EQ(r2.deficit, 9 * r1.deficit);
  EXPECT_EQ(r2.tolerance, 9 * r1.tolerance);
}

TEST(MixedArea, TranslatesAndSwaps) {
  Rng rng(56);
  const std::size_t n = 4;
  Zonotope k1 = random_full_zonotope(rng, n, 5), k2 = random_full_zonotope(rng, n, 5);
  auto tr = check_mixed_area_inequality(k1, k2, translate_of(k1, rng), translate_of(k2, rng), n, 8, 0);
  EXPECT_EQ(tr.verdict, Verdict::Pass);
  EXPECT_EQ(tr.deficit, 0);
  auto sw = check_mixed_area_inequality(k1, k2, k2, k1, n, 8, 0);
  EXPECT_EQ(sw.verdict, Verdict::Pass);
  EXPECT_EQ(sw.deficit, 0);
}

TEST(MixedArea, HypothesisNotMetIsVacuous) {
  Rng rng(57);
  const std::size_t n = 4;
  Zonotope k1 = random_full_zonotope(rng, n, 5), k2 = random_full_zonotope(rng, n, 5);
  auto r = check_mixed_area_inequality(k1, k2, k1, scale(k2, Scalar(2)), n, 8, 0);
  EXPECT_EQ(r.verdict, Verdict::Vacuous);
  EXPECT_TRUE(r.ok());
  EXPECT_THROW(check_mixed_area_inequality(sq(3, 0, 1), sq(3, 0, 1), sq(3, 0, 1), sq(3, 0, 1), 3, 8, 0), InputError);
}

TEST(MixedArea, CoordinateSquareSplitting) {
  // With the axis-cube ball both pairs have the same mixed area measure, but the bodies differ.
  auto r = check_mixed_area_inequality(sq(4, 0, 2), sq(4, 1, 3), sq(4, 0, 1), sq(4, 2, 3), 4, 4, 0);
  ASSERT_EQ(r.verdict, Verdict::Pass);
  EXPECT_EQ(r.deficit, Scalar(1, 6));
}

TEST(MixedArea, SolvedBoxPartnersPass) {
  Rng rng(58);
  int found = 0;
  for (int attempt = 0; attempt < 200 && found < 3; ++attempt) {
    Zonotope a = random_box(rng, 4), b = random_box(rng, 4), c = random_box(rng, 4);
    auto d = box_partner(a, b, c);
    if (!d) continue;
    auto r = check_mixed_area_inequality(a, b, c, *d, 4, 4, 0);
    EXPECT_EQ(r.extras["hypothesis"], true);
    EXPECT_EQ(r.verdict, Verdict::Pass);
    EXPECT_GE(r.deficit, 0);
    ++found;
  }
  EXPECT_EQ(found, 3);
}

TEST(HrPsd, SingleBodyIsVacuous) {
  Rng rng(59);
  auto r = check_hr_psd({random_full_zonotope(rng, 4, 5)}, 4, 8, 0);
  EXPECT_EQ(r.verdict, Verdict::Vacuous);
}

TEST(HrPsd, TranslatePairHasZeroForm) {
  Rng rng(60);
  Zonotope k = random_full_zonotope(rng, 4, 5);
  auto r = check_hr_psd({k, translate_of(k, rng)}, 4, 8, 0);
  ASSERT_EQ(r.verdict, Verdict::Pass);
  EXPECT_EQ(r.extras["kernel_dim"], 2);
  for (const auto& f : r.extras["kernel_forms"]) EXPECT_EQ(parse_scalar(f.get<std::string>()), 0);
}

TEST(HrPsd, BoxPoolsAreSemidefinite) {
  Rng rng(61);
  for (int t = 0; t < 3; ++t) {
    std::vector<Zonotope> pool;
    for (int i = 0; i < 5; ++i) pool.push_back(random_box(rng, 4));
    auto r = check_hr_psd(pool, 4, 4, 0);
    ASSERT_EQ(r.verdict, Verdict::Pass);
    EXPECT_GT(r.extras["kernel_dim"].get<int>(), 0);
    EXPECT_GE(r.deficit, 0);
  }
}

TEST(HrPsd, SubsumesMixedAreaCheck) {
  // For a hypothesis-satisfying quadruple, e_{K1K2} - e_{L1L2} is primitive and its Gram form
  // is exactly the mixed-area deficit.
  Rng rng(62);
  int found = 0;
  for (int attempt = 0; attempt < 200 && found < 2; ++attempt) {
    Zonotope a = random_box(rng, 4), b = random_box(rng, 4), c = random_box(rng, 4);
    auto d = box_partner(a, b, c);
    if (!d) continue;
    std::vector<Zonotope> pool{a, b, c, *d};
    const Zonotope& ball = make_ball(4, 4)->body;
    auto pairs = unordered_pairs(4);
    std::vector<Scalar> v(pairs.size(), 0);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (pairs[i] == std::make_pair<std::size_t, std::size_t>(0, 1)) v[i] += 1;
      if (pairs[i] == std::make_pair<std::size_t, std::size_t>(2, 3)) v[i] -= 1;
    }
    auto pc = primitivity_constraints(pool, 4, ball);
    for (std::size_t r = 0; r < pc.matrix.rows(); ++r) {
      Scalar s = 0;
      for (std::size_t j = 0; j < v.size(); ++j) s += pc.matrix(r, j) * v[j];
      EXPECT_EQ(s, 0);
    }
    // Gram form is in the pair basis with V(K_a,K_b,K_c,K_d); the mixed-area check counts
    // each side once, so the two agree exactly.
    Scalar q = quadratic_form(gram_form(pool, ball), v);
    auto rep = check_mixed_area_inequality(a, b, c, *d, 4, 4, 0);
    EXPECT_EQ(q, rep.deficit);
    ++found;
  }
  EXPECT_EQ(found, 2);
}

TEST(HrPsd, Guards) {
  EXPECT_THROW(check_hr_psd({sq(3, 0, 1)}, 3, 8, 0), InputError);
  EXPECT_THROW(check_hr_psd({}, 4, 8, 0), InputError);
}

TEST(Jacobi, MatchesEigenOracle) {
  Rng rng(63);
  for (int t = 0; t < 20; ++t) {
    const int k = static_cast<int>(rng.uniform_int(1, 12));
    std::vector<std::vector<double>> a(k, std::vector<double>(k));
    Eigen::MatrixXd m(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j) {
        double x = static_cast<double>(rng.uniform_int(-1000, 1000)) / 37.0;
        a[i][j] = a[j][i] = x;
        m(i, j) = m(j, i) = x;
      }
    auto ev = symmetric_eigenvalues(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    auto ref = es.eigenvalues();
    ASSERT_EQ(ev.size(), static_cast<std::size_t>(k));
    double scale_ = std::max(1.0, ref.cwiseAbs().maxCoeff());
    for (int i = 0; i < k; ++i) EXPECT_NEAR(ev[i], ref(i), 1e-10 * scale_);
  }
}

TEST(Jacobi, ExactDiagonalAndRankOne) {
  auto ev = symmetric_eigenvalues({{3, 0, 0}, {0, -1, 0}, {0, 0, 2}});
  EXPECT_EQ(ev, (std::vector<double>{-1, 2, 3}));
  // v v^T with v = (1, 2, 2): eigenvalues 0, 0, 9
  auto r1 = symmetric_eigenvalues({{1, 2, 2}, {2, 4, 4}, {2, 4, 4}});
  EXPECT_NEAR(r1[0], 0, 1e-12);
  EXPECT_NEAR(r1[1], 0, 1e-12);
  EXPECT_NEAR(r1[2], 9, 1e-12);
}

TEST(HardLefschetz, DegreeZero) {
  auto r = check_hard_lefschetz_rank({}, 4, 0, 4, 0);
  EXPECT_EQ(r.lhs, 1);
  EXPECT_EQ(r.rhs, 1);
  EXPECT_EQ(r.verdict, Verdict::Pass);
}

TEST(HardLefschetz, IndependentPoolsPreserveRank) {
  Rng rng(64);
  for (int t = 0; t < 2; ++t) {
    std::vector<Zonotope> pool;
    for (int i = 0; i < 3; ++i) pool.push_back(random_full_zonotope(rng, 4, 5));
    auto r = check_hard_lefschetz_rank(pool, 4, 1, 8, 0);
    EXPECT_EQ(r.verdict, Verdict::Pass);
    EXPECT_EQ(r.lhs, 3);
  }
}

TEST(HardLefschetz, ScaledCopiesSpanRankOne) {
  Rng rng(65);
  Zonotope k = random_full_zonotope(rng, 4, 5);
  auto r = check_hard_lefschetz_rank({k, scale(k, Scalar(3)), scale(k, Scalar(1, 2))}, 4, 1, 8, 0);
  EXPECT_EQ(r.lhs, 1);
  EXPECT_EQ(r.rhs, 1);
  EXPECT_THROW(check_hard_lefschetz_rank({k}, 4, 2, 8, 0), DegreeError);
}

TEST(Isoperimetric, Classes) {
  auto ball = check_isoperimetric_n2(Body(make_ball(2, 32)->body), 32);
  EXPECT_EQ(ball.extras["valuation_class"], "zero");
  EXPECT_EQ(ball.extras["isoperimetric_class"], "zero");
  EXPECT_EQ(ball.verdict, Verdict::Pass);

  auto square = check_isoperimetric_n2(Body(unit_cube(2)), 32);
  EXPECT_EQ(square.extras["valuation_class"], "positive");
  EXPECT_EQ(square.extras["isoperimetric_class"], "positive");
  EXPECT_EQ(square.verdict, Verdict::Pass);
  EXPECT_THROW(check_isoperimetric_n2(Body(unit_cube(3)), 32), InputError);
}

TEST(Isoperimetric, TranslateGivesIdenticalReport) {
  Rng rng(66);
  VPolytope t = random_triangle(rng);
  std::vector<Vector> moved;
  for (const auto& v : t.vertices()) moved.push_back(v + vec({1, 5}));
  auto a = check_isoperimetric_n2(Body(t), 16);
  auto b = check_isoperimetric_n2(Body(VPolytope(2, moved)), 16);
  EXPECT_EQ(a.lhs, b.lhs);
  EXPECT_EQ(a.rhs, b.rhs);
  EXPECT_EQ(a.extras["isoperimetric_deficit_lo"], b.extras["isoperimetric_deficit_lo"]);
  EXPECT_EQ(a.verdict, b.verdict);
}

TEST(Report, JudgeSemantics) {
  EXPECT_EQ(judge(0, 0, true, true), Verdict::Pass);
  EXPECT_EQ(judge(Scalar(1, 9), 0, true, true), Verdict::Fail);
  EXPECT_EQ(judge(Scalar(-1, 9), 1, true), Verdict::Fail);
  EXPECT_EQ(judge(Scalar(-1, 9), Scalar(1, 8), false), Verdict::PassWithinTolerance);
  EXPECT_EQ(judge(Scalar(-1, 7), Scalar(1, 8), false), Verdict::Fail);
}
