#include <gtest/gtest.h>

#include <cmath>

#include "hsodm/errors.hpp"
#include "hsodm/rootfind.hpp"
#include "oracles.hpp"

using namespace hsodm;

TEST(BracketForH, FormulaPlugIn) {
  const Bracket a = bracket_for_h({1, 4, 1e-6}, -1, 2, 1);
  EXPECT_DOUBLE_EQ(a.delta_low, -2.0);
  EXPECT_DOUBLE_EQ(a.delta_high, 16.0);
  const Bracket b = bracket_for_h({1, 1, 1e-6}, 0, 1, 2);
  EXPECT_DOUBLE_EQ(b.delta_low, -1.0);
  EXPECT_DOUBLE_EQ(b.delta_high, 4.0);
  EXPECT_THROW(bracket_for_h({2, 1, 0}, 0, 1, 1), InvalidInput);
}

TEST(BracketForH, EndpointsStraddleTarget) {
  const auto h = diagonal_operator({-1, 2});
  const Vec phi{1, 0};
  const TargetInterval target{0.5, 2, 1e-6};
  const Bracket b = evaluate_bracket(h, phi, bracket_for_h(target, -1, 2, 1), {});
  EXPECT_GE(b.h_high, 2.0);
  EXPECT_LE(b.h_low, 0.5);
}

TEST(BisectH, RecoversGoldenRatioDelta) {
  const auto h = diagonal_operator({-1, 2});
  const TargetInterval target{1, 1, 1e-6};
  const auto r = bisect_h(h, {1, 0}, target, bracket_for_h(target, -1, 2, 1), {});
  EXPECT_NEAR(r.delta, 0.0, 1e-5);
  EXPECT_GE(r.sol.h, 1.0);
  EXPECT_LE(r.sol.h, 1.0 + 1e-6);
}

TEST(BisectH, ConvexTarget) {
  const auto h = diagonal_operator({1, 1});
  const TargetInterval target{0.25, 0.25, 1e-6};
  const auto r = bisect_h(h, {1, 0}, target, bracket_for_h(target, 1, 1, 1), {});
  EXPECT_GE(r.sol.h, 0.25);
  EXPECT_LE(r.sol.h, 0.25 + 1e-6);
  // independent check: h at the returned delta from the dense bordered matrix
  const auto e = oracle::leftmost(oracle::bordered(Eigen::MatrixXd::Identity(2, 2), Eigen::Vector2d(1, 0), r.delta));
  const double t = e.vector[2];
  const double dn2 = e.vector.head(2).squaredNorm() / (t * t);
  EXPECT_NEAR(e.value * e.value / dn2, r.sol.h, 1e-8);
}

TEST(BisectH, ImmediateAcceptanceAtMidpoint) {
  const auto h = diagonal_operator({-1, 2});
  const Vec phi{1, 0};
  Bracket b{-4.0, 4.0};
  // target built around h at the midpoint (delta = 0 gives h = 1)
  const auto r = bisect_h(h, phi, {0.9, 1.1, 0}, b, {});
  EXPECT_EQ(r.solves, 1);
}

TEST(BisectH, FirstTryIsUsed) {
  const auto h = diagonal_operator({-1, 2});
  const auto r = bisect_h(h, {1, 0}, {0.9, 1.1, 0}, Bracket{-10.0, 3.0}, {}, 0.0);
  EXPECT_EQ(r.solves, 1);
  EXPECT_EQ(r.delta, 0.0);
}

TEST(BisectH, HardCaseAndBudget) {
  const auto h = diagonal_operator({2, -1});
  SearchOptions o;
  EXPECT_THROW(bisect_h(h, {1, 0}, {1e-4, 1e-4, 0}, Bracket{-0.5, 100.0}, o), HardCase);
  o.max_steps = 2;
  EXPECT_THROW(bisect_h(diagonal_operator({-1, 2}), {1, 0}, {0.5, 0.5 + 1e-12, 0}, Bracket{-50, 50}, o),
               DegenerateInterval);
}

TEST(BisectH, HugeBracketStaysWithinBudget) {
  // closed-form brackets on badly scaled problems span many decades
  const auto h = diagonal_operator({-1e6, 3e6});
  const Vec phi{1e7, 2e6};
  const TargetInterval target{1e3, 2e3, 1e-6};
  const auto r = bisect_h(h, phi, target, bracket_for_h(target, -1e6, 3e6, norm(phi)), {});
  EXPECT_GE(r.sol.h, 1e3);
  EXPECT_LE(r.sol.h, 2e3 + 1e-6);
  EXPECT_LE(r.solves, 60);
}

TEST(Radius, IdentityClosedForm) {
  const auto r = bisect_for_radius(diagonal_operator({1, 1}), {3, 4}, 1.0, 1e-10);
  ASSERT_FALSE(r.interior);
  ASSERT_TRUE(r.sol && r.sol->d);
  EXPECT_NEAR((*r.sol->d)[0], -0.6, 1e-8);
  EXPECT_NEAR((*r.sol->d)[1], -0.8, 1e-8);
  EXPECT_NEAR(r.sol->theta, 4.0, 1e-7);
}

TEST(Radius, DiagonalAgainstSecularOracle) {
  Eigen::Matrix2d hm;
  hm << 1, 0, 0, 2;
  const auto o = oracle::trs(hm, Eigen::Vector2d(1, 1), 0.5);
  const auto r = bisect_for_radius(diagonal_operator({1, 2}), {1, 1}, 0.5, 1e-10);
  ASSERT_TRUE(r.sol && r.sol->d);
  EXPECT_NEAR((*r.sol->d)[0], o.d[0], 1e-6);
  EXPECT_NEAR((*r.sol->d)[1], o.d[1], 1e-6);
  EXPECT_NEAR(r.sol->theta, o.lambda, 1e-6);
}

TEST(Radius, Interior) {
  const auto r = bisect_for_radius(diagonal_operator({1, 2}), {1, 1}, 10.0, 1e-10);
  EXPECT_TRUE(r.interior);
  EXPECT_NEAR(norm(r.newton_step), std::sqrt(1.25), 1e-8);
}

TEST(Theta, IdentityClosedForm) {
  const auto r = newton_for_theta(diagonal_operator({1, 1}), {3, 4}, std::sqrt(5.0), 1e-12);
  ASSERT_TRUE(r.sol.d);
  EXPECT_NEAR((*r.sol.d)[0], -3.0 / (1.0 + std::sqrt(5.0)), 1e-8);
  EXPECT_NEAR((*r.sol.d)[1], -4.0 / (1.0 + std::sqrt(5.0)), 1e-8);
}

TEST(Theta, DiagonalClosedForm) {
  const auto r = newton_for_theta(diagonal_operator({1, 2}), {1, 1}, 1.0, 1e-12);
  ASSERT_TRUE(r.sol.d);
  EXPECT_NEAR((*r.sol.d)[0], -0.5, 1e-9);
  EXPECT_NEAR((*r.sol.d)[1], -1.0 / 3.0, 1e-9);
}

TEST(Theta, NewtonMatchesBisectionOnRandomSpd) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXd eigs = Eigen::VectorXd::LinSpaced(10, 0.5, 5.0);
    const auto a = oracle::with_spectrum(eigs, rng);
    const auto op = oracle::op_of(a);
    const Vec g = oracle::vec(oracle::gaussian(10, rng));
    SearchOptions so;
    so.ghm.eig_tol = 1e-13;
    const auto nr = newton_for_theta(op, g, 0.3, 1e-11, so);
    const auto bs = bisect_for_theta(op, g, 0.3, 1e-11, so);
    EXPECT_LE(nr.newton_steps + nr.bisect_steps, 8);
    ASSERT_TRUE(nr.sol.d && bs.sol.d);
    EXPECT_LE(norm(sub(*nr.sol.d, *bs.sol.d)), 1e-8 * (1.0 + norm(*bs.sol.d)));
    // and against the dense shifted solve
    const Eigen::VectorXd dref = -(a + 0.3 * Eigen::MatrixXd::Identity(10, 10)).ldlt().solve(oracle::ev(g));
    EXPECT_LE((oracle::ev(*nr.sol.d) - dref).norm(), 1e-8 * (1.0 + dref.norm()));
  }
}
