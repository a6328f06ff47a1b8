#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hsodm/errors.hpp"
#include "hsodm/ghm.hpp"
#include "hsodm/krylov.hpp"
#include "oracles.hpp"

using namespace hsodm;

TEST(Lanczos, DiagonalOperator) {
  const auto op = diagonal_operator({1, 2, 3});
  LanczosOptions o;
  o.tol = 1e-10;
  const EigResult r = lanczos_leftmost(op, o);
  EXPECT_NEAR(r.value, 1.0, 1e-10);
  EXPECT_NEAR(std::abs(r.vector[0]), 1.0, 1e-9);
  EXPECT_NEAR(norm(r.vector), 1.0, 1e-12);
}

TEST(Lanczos, ThreeByThreeGolden) {
  const auto op = dense_operator({-1, 0, 1, 0, 2, 0, 1, 0, 0}, 3);
  const EigResult r = lanczos_leftmost(op);
  EXPECT_NEAR(r.value, -std::numbers::phi, 1e-9);
}

TEST(Lanczos, ShiftedHilbertAgainstDense) {
  for (double shift : {1e-5, 1e-7, 1e-9}) {
    const EigResult r = lanczos_leftmost(hilbert_operator(100, shift), {1e-12, 500, std::nullopt, 7});
    EXPECT_NEAR(r.value, oracle::leftmost(oracle::hilbert(100, shift)).value, 1e-8) << shift;
  }
}

TEST(Lanczos, ResidualContractAndDeterminism) {
  std::mt19937_64 rng(11);
  const auto a = oracle::random_symmetric(60, rng);
  const auto op = oracle::op_of(a);
  LanczosOptions o{1e-9, 500, std::nullopt, 5};
  const EigResult r1 = lanczos_leftmost(op, o), r2 = lanczos_leftmost(op, o);
  EXPECT_EQ(r1.value, r2.value);
  EXPECT_EQ(r1.vector, r2.vector);
  const Eigen::VectorXd y = oracle::ev(r1.vector);
  const double res = (a * y - r1.value * y).norm();
  EXPECT_LE(res, 1e-9 * std::max({1.0, std::abs(r1.value), *op.norm_hint()}) * 1.0001);
  EXPECT_NEAR(r1.value, oracle::leftmost(a).value, 1e-8);
}

TEST(Lanczos, InvariantSubspaceRestart) {
  // start vector inside the span of e1, e2: the Krylov space stalls at 2
  const auto op = diagonal_operator({5, 6, -1, 3});
  LanczosOptions o;
  o.start = Vec{1, 1, 0, 0};
  const EigResult r = lanczos_leftmost(op, o);
  EXPECT_NEAR(r.value, -1.0, 1e-9);
}

TEST(Lanczos, StartAtNonLeftmostEigenvector) {
  const auto op = diagonal_operator({3, 1, 2, 0.5});
  LanczosOptions o;
  o.start = Vec{0, 1, 0, 0};
  EXPECT_NEAR(lanczos_leftmost(op, o).value, 0.5, 1e-10);
}

TEST(Lanczos, Errors) {
  EXPECT_THROW(lanczos_leftmost(SymmetricOperator(0, [](std::span<const double>, std::span<double>) {})),
               InvalidInput);
  LanczosOptions o;
  o.start = Vec{0, 0};
  EXPECT_THROW(lanczos_leftmost(diagonal_operator({1, 2}), o), InvalidInput);
  std::mt19937_64 rng(3);
  LanczosOptions tight{1e-15, 3, std::nullopt, 0};
  try {
    lanczos_leftmost(oracle::op_of(oracle::random_symmetric(40, rng)), tight);
    FAIL() << "expected NonConvergence";
  } catch (const NonConvergence& e) {
    EXPECT_EQ(e.iters, 3);
    EXPECT_EQ(e.best_vector.size(), 40u);
    EXPECT_GT(e.best_residual, 0.0);
  }
}

TEST(CG, SpecExamples) {
  const auto r = cg_solve(diagonal_operator({1, 1}), Vec{3, 4}, 1e-12, 10);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iters, 1);
  EXPECT_NEAR(r.solution[0], 3.0, 1e-12);
  EXPECT_NEAR(r.solution[1], 4.0, 1e-12);
  const auto s = cg_solve(diagonal_operator({1, 2}), Vec{1, 1}, 1e-12, 10);
  EXPECT_NEAR(s.solution[0], 1.0, 1e-12);
  EXPECT_NEAR(s.solution[1], 0.5, 1e-12);
}

TEST(CG, IndefiniteThrows) { EXPECT_THROW(cg_solve(diagonal_operator({1, -1}), Vec{1, 1}, 1e-10, 10), Indefinite); }

TEST(CG, HilbertDegradesAgainstLanczos) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vec b(100);
  for (double& x : b) x = u(rng);
  const auto a = hilbert_operator(100, 1e-9);
  const auto cg = cg_solve(a, scaled(b, -1.0), 1e-6, 1000);
  LanczosOptions o{1e-6, 500, std::nullopt, 0};
  const int ghm = lanczos_leftmost(build_ghm(GhmSpec{a, b, 0.0}), o).iters;
  EXPECT_TRUE(!cg.converged || cg.iters > 10 * ghm) << cg.iters << " vs " << ghm;
}

TEST(CG, ConvergedImpliesResidualContract) {
  std::mt19937_64 rng(9);
  Eigen::VectorXd eigs = Eigen::VectorXd::LinSpaced(30, 0.1, 10.0);
  const auto a = oracle::with_spectrum(eigs, rng);
  const Eigen::VectorXd b = oracle::gaussian(30, rng);
  const auto r = cg_solve(oracle::op_of(a), oracle::vec(b), 1e-9, 200);
  ASSERT_TRUE(r.converged);
  EXPECT_LE((b - a * oracle::ev(r.solution)).norm(), 1e-9 * std::max(1.0, b.norm()) * 1.01);
}

TEST(GMRES, SpecExamples) {
  const auto r = gmres_solve(diagonal_operator({1, 1, 1}), unit(3, 0), 1e-12, 10);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iters, 1);
  EXPECT_NEAR(r.solution[0], 1.0, 1e-12);
  const auto s = gmres_solve(diagonal_operator({1, 2, 3}), Vec{1, 1, 1}, 1e-12, 10);
  EXPECT_NEAR(s.solution[0], 1.0, 1e-10);
  EXPECT_NEAR(s.solution[1], 0.5, 1e-10);
  EXPECT_NEAR(s.solution[2], 1.0 / 3.0, 1e-10);
}

TEST(GMRES, FullNeverWorseThanRestarted) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Vec b(100);
  for (double& x : b) x = u(rng);
  const auto a = hilbert_operator(100, 1e-5);
  const auto full = gmres_solve(a, b, 1e-6, 1000);
  const auto restarted = gmres_solve(a, b, 1e-6, 1000, 20);
  ASSERT_TRUE(full.converged);
  EXPECT_LE(full.iters, restarted.iters);
}

TEST(GMRES, RestartedConvergesOnWellConditioned) {
  std::mt19937_64 rng(12);
  Eigen::VectorXd eigs = Eigen::VectorXd::LinSpaced(80, 1.0, 50.0);
  const auto a = oracle::with_spectrum(eigs, rng);
  const Eigen::VectorXd b = oracle::gaussian(80, rng);
  const auto r = gmres_solve(oracle::op_of(a), oracle::vec(b), 1e-10, 2000, 5);
  ASSERT_TRUE(r.converged);
  EXPECT_LE((b - a * oracle::ev(r.solution)).norm(), 1e-8 * b.norm());
}

TEST(Operators, HilbertEntries) {
  const Vec y = hilbert_operator(3, 0.0).apply(unit(3, 0));
  EXPECT_DOUBLE_EQ(y[0], 1.0);
  EXPECT_DOUBLE_EQ(y[1], 0.5);
  EXPECT_DOUBLE_EQ(y[2], 1.0 / 3.0);
  const Vec z = hilbert_operator(2, 1.0).apply(Vec{1, 0});
  EXPECT_DOUBLE_EQ(z[0], 2.0);
  EXPECT_DOUBLE_EQ(z[1], 0.5);
}

TEST(Operators, HilbertConditionTracksShift) {
  const auto dense = to_dense(hilbert_operator(100, 1e-7));
  Eigen::Map<const Eigen::Matrix<double, -1, -1, Eigen::RowMajor>> a(dense.data(), 100, 100);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  const double cond = es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
  EXPECT_GT(cond, 1e6);
  EXPECT_LT(cond, 1e8);
}

TEST(Operators, NormalEquations) {
  SparseDataset x;
  x.rows = 2;
  x.cols = 2;
  x.row_ptr = {0, 1, 2};
  x.col_idx = {0, 1};
  x.values = {1, 1};
  x.labels = {0, 0};
  const Vec y = normal_equations_operator(x, 0.0).apply(Vec{1, 2});
  EXPECT_DOUBLE_EQ(y[0], 0.5);
  EXPECT_DOUBLE_EQ(y[1], 1.0);

  SparseDataset r;
  r.rows = 1;
  r.cols = 2;
  r.row_ptr = {0, 2};
  r.col_idx = {0, 1};
  r.values = {1, 1};
  r.labels = {1};
  const Vec z = normal_equations_operator(r, 1.0).apply(Vec{1, 0});
  EXPECT_DOUBLE_EQ(z[0], 2.0);
  EXPECT_DOUBLE_EQ(z[1], 1.0);
}

TEST(Operators, NormalEquationsMatchDenseOnSlice) {
  const SparseDataset full = synthetic_dataset({3, 80, 300, 0.2}).data;
  const SparseDataset d = full.leading_columns(50);
  const auto dense = d.dense_row_major();
  Eigen::Map<const Eigen::Matrix<double, -1, -1, Eigen::RowMajor>> xm(dense.data(), d.rows, d.cols);
  const Eigen::MatrixXd a = xm.transpose() * xm / static_cast<double>(d.rows) +
                            1e-3 * Eigen::MatrixXd::Identity(50, 50);
  std::mt19937_64 rng(1);
  Eigen::VectorXd v = oracle::gaussian(50, rng);
  v.normalize();
  const Vec y = normal_equations_operator(d, 1e-3).apply(oracle::vec(v));
  EXPECT_LE((oracle::ev(y) - a * v).norm(), 1e-10);
}

TEST(Operators, SymmetryAndPurity) {
  std::mt19937_64 rng(8);
  const SparseDataset d = synthetic_dataset({1, 30, 100, 0.3}).data;
  std::vector<SymmetricOperator> ops = {hilbert_operator(30, 1e-3), normal_equations_operator(d, 1e-2),
                                        oracle::op_of(oracle::random_symmetric(30, rng)),
                                        diagonal_operator(std::vector<double>(30, 2.0))};
  ops.push_back(negated(ops[0]));
  ops.push_back(shifted(ops[1], 3.0));
  for (const auto& op : ops) {
    Vec x = oracle::vec(oracle::gaussian(30, rng).normalized());
    Vec y = oracle::vec(oracle::gaussian(30, rng).normalized());
    const Vec x_copy = x;
    const Vec ax = op.apply(x), ay = op.apply(y);
    EXPECT_EQ(x, x_copy);
    EXPECT_LE(std::abs(dot(x, ay) - dot(y, ax)), 1e-10 * norm(ax) * norm(y) + 1e-300);
  }
}

TEST(Operators, DenseRejectsAsymmetric) { EXPECT_THROW(dense_operator({1, 2, 3, 4}, 2), InvalidInput); }

TEST(Operators, MatvecCounterIsShared) {
  const auto op = diagonal_operator({1, 2});
  const auto copy = op;
  copy.apply(Vec{1, 1});
  EXPECT_EQ(op.matvec_count(), 1u);
  const auto fresh = op.with_fresh_counter();
  fresh.apply(Vec{1, 1});
  EXPECT_EQ(op.matvec_count(), 1u);
  EXPECT_EQ(fresh.matvec_count(), 1u);
}
