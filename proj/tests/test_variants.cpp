#include <gtest/gtest.h>

#include <cmath>

#include "hsodm/variants.hpp"
#include "oracles.hpp"

using namespace hsodm;

TEST(Trs, IdentityBoundary) {
  const auto r = trs_step(diagonal_operator({1, 1}), {3, 4}, 1.0);
  EXPECT_EQ(r.mode, StepMode::Boundary);
  EXPECT_NEAR(r.d[0], -0.6, 1e-8);
  EXPECT_NEAR(r.d[1], -0.8, 1e-8);
  EXPECT_NEAR(r.multiplier, 4.0, 1e-7);
}

TEST(Trs, Interior) {
  const auto r = trs_step(diagonal_operator({1, 2}), {1, 1}, 10.0);
  EXPECT_EQ(r.mode, StepMode::Interior);
  EXPECT_NEAR(r.d[0], -1.0, 1e-9);
  EXPECT_NEAR(r.d[1], -0.5, 1e-9);
  EXPECT_EQ(r.multiplier, 0.0);
}

TEST(Trs, RandomAgainstSecularOracle) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = oracle::random_symmetric(10, rng);
    const auto g = oracle::gaussian(10, rng);
    const auto o = oracle::trs(h, g, 0.5);
    if (o.interior) continue;
    const auto r = trs_step(oracle::op_of(h), oracle::vec(g), 0.5);
    EXPECT_LE((oracle::ev(r.d) - o.d).norm(), 1e-6 * (1.0 + o.d.norm())) << trial;
    EXPECT_NEAR(r.multiplier, o.lambda, 1e-6) << trial;
  }
}

TEST(Trs, HardCasePerturbed) {
  // g orthogonal to the leftmost eigenvector, radius beyond the easy-case range
  const auto r = trs_step(diagonal_operator({-1, 2}), {0, 1}, 2.0);
  EXPECT_NEAR(norm(r.d), 2.0, 1e-5);
  // solution family d = (+-sqrt(35)/3, -1/3) with multiplier 1
  EXPECT_NEAR(r.d[1], -1.0 / 3.0, 1e-6);
  EXPECT_NEAR(std::abs(r.d[0]), std::sqrt(35.0) / 3.0, 1e-6);
  EXPECT_NEAR(r.multiplier, 1.0, 1e-6);
}

TEST(GradReg, ClosedForms) {
  const auto a = gradreg_step(diagonal_operator({1, 1}), {3, 4}, 1.0);
  EXPECT_NEAR(a.d[0], -3.0 / (1.0 + std::sqrt(5.0)), 1e-8);
  EXPECT_NEAR(a.d[1], -4.0 / (1.0 + std::sqrt(5.0)), 1e-8);
  const auto b = gradreg_step(diagonal_operator({1, 2}), {1, 0}, 2.0);
  EXPECT_NEAR(b.d[0], -1.0 / 3.0, 1e-9);
  EXPECT_NEAR(b.d[1], 0.0, 1e-9);
  EXPECT_EQ(b.mode, StepMode::Shifted);
}

TEST(GradReg, RandomSpdAgainstDenseSolve) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXd eigs = Eigen::VectorXd::LinSpaced(20, 0.1, 4.0);
    const auto h = oracle::with_spectrum(eigs, rng);
    const auto g = oracle::gaussian(20, rng);
    const double reg = 1.5 * std::sqrt(g.norm());
    const Eigen::VectorXd dref = -(h + reg * Eigen::MatrixXd::Identity(20, 20)).ldlt().solve(g);
    const auto r = gradreg_step(oracle::op_of(h), oracle::vec(g), 1.5);
    EXPECT_LE((oracle::ev(r.d) - dref).norm(), 1e-8 * (1.0 + dref.norm()));
    EXPECT_LE(r.newton_steps, 10);
  }
}

TEST(InexactNewton, HalfSquaredNormOneStep) {
  const auto f = quadratic_objective({1, 0, 0, 1}, Vec{0, 0});
  const auto r = inexact_newton(*f, Vec{1, 1});
  EXPECT_EQ(r.status, RunStatus::Success);
  EXPECT_EQ(r.outer_iters, 1);
  EXPECT_LE(norm(r.x), 1e-12);
}

TEST(InexactNewton, TighterToleranceCostsMore) {
  const auto d = synthetic_dataset({5, 20, 200}).data;
  const auto f = logistic_l2_objective(d, 1e-5);
  std::mt19937_64 rng(5);
  const Vec x0 = scaled(oracle::vec(oracle::gaussian(20, rng)), 1.0);
  InexactNewtonConfig loose, tight;
  loose.lin_tol_loose = loose.lin_tol_tight = 1e-7;
  tight.lin_tol_loose = tight.lin_tol_tight = 1e-9;
  const auto a = inexact_newton(*f, x0, loose);
  const auto b = inexact_newton(*f, x0, tight);
  EXPECT_EQ(a.status, RunStatus::Success);
  EXPECT_EQ(b.status, RunStatus::Success);
  EXPECT_GE(b.krylov_iters, a.krylov_iters);
}

TEST(InexactNewton, HilbertQuadraticCostsMoreThanLanczos) {
  const auto hop = hilbert_operator(100, 1e-9);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vec b(100);
  for (double& v : b) v = u(rng);
  const auto f = quadratic_objective(to_dense(hop), b);
  InexactNewtonConfig c;
  c.max_outer = 1;
  const auto r = inexact_newton(*f, Vec(100, 0.0), c);
  ASSERT_GE(r.outer_iters, 1);
  const int ghm = lanczos_leftmost(build_ghm(GhmSpec{hop, scaled(b, -1.0), 0.0}), {1e-6, 500, std::nullopt, 0}).iters;
  EXPECT_GE(static_cast<double>(r.krylov_iters) / r.outer_iters, 2.0 * ghm);
}
