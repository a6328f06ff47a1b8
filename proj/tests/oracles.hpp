#pragma once
// Independent dense references for the unit and acceptance tests. Nothing
// here calls into the Krylov code.

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "hsodm/krylov.hpp"
#include "hsodm/vec.hpp"

namespace oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

inline hsodm::SymmetricOperator op_of(const MatrixXd& a) {
  std::vector<double> rm(a.size());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) rm[i * a.cols() + j] = a(i, j);
  return hsodm::dense_operator(std::move(rm), static_cast<std::size_t>(a.rows()));
}

inline VectorXd ev(const hsodm::Vec& v) { return Eigen::Map<const VectorXd>(v.data(), v.size()); }
inline hsodm::Vec vec(const VectorXd& v) { return hsodm::Vec(v.data(), v.data() + v.size()); }

inline VectorXd gaussian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  VectorXd v(n);
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = nd(rng);
  return v;
}

// Q diag(eigs) Q^T with Haar-ish Q from a QR of a Gaussian matrix.
inline MatrixXd with_spectrum(const VectorXd& eigs, std::mt19937_64& rng) {
  const auto n = eigs.size();
  MatrixXd g(n, n);
  for (Eigen::Index j = 0; j < n; ++j) g.col(j) = gaussian(n, rng);
  const MatrixXd q = Eigen::HouseholderQR<MatrixXd>(g).householderQ();
  MatrixXd a = q * eigs.asDiagonal() * q.transpose();
  return 0.5 * (a + a.transpose());
}

inline MatrixXd random_symmetric(std::size_t n, std::mt19937_64& rng) {
  MatrixXd g(n, n);
  for (Eigen::Index j = 0; j < g.cols(); ++j) g.col(j) = gaussian(n, rng);
  return 0.5 * (g + g.transpose());
}

inline MatrixXd hilbert(std::size_t n, double shift) {
  MatrixXd a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 1.0 / static_cast<double>(i + j + 1);
  a.diagonal().array() += shift;
  return a;
}

struct Eig {
  double value;
  VectorXd vector;
};

inline Eig leftmost(const MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(a);
  return {es.eigenvalues()[0], es.eigenvectors().col(0)};
}

inline MatrixXd bordered(const MatrixXd& h, const VectorXd& phi, double delta) {
  const auto n = h.rows();
  MatrixXd f(n + 1, n + 1);
  f.topLeftCorner(n, n) = h;
  f.topRightCorner(n, 1) = phi;
  f.bottomLeftCorner(1, n) = phi.transpose();
  f(n, n) = delta;
  return f;
}

struct Trs {
  VectorXd d;
  double lambda;
  bool interior;
};

// min g^T d + 0.5 d^T H d, ||d|| <= r, by bisection on the secular equation
// ||(H + lambda I)^{-1} g|| = r over the dense eigendecomposition. Assumes
// the easy case (g not orthogonal to the leftmost eigenspace).
inline Trs trs(const MatrixXd& h, const VectorXd& g, double r) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(h);
  const VectorXd lam = es.eigenvalues();
  const VectorXd c = es.eigenvectors().transpose() * g;
  auto step_norm = [&](double l) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < c.size(); ++i) s += c[i] * c[i] / ((lam[i] + l) * (lam[i] + l));
    return std::sqrt(s);
  };
  auto step = [&](double l) {
    VectorXd y(c.size());
    for (Eigen::Index i = 0; i < c.size(); ++i) y[i] = -c[i] / (lam[i] + l);
    return VectorXd(es.eigenvectors() * y);
  };
  if (lam[0] > 0.0 && step_norm(0.0) <= r) return {step(0.0), 0.0, true};
  double lo = std::max(0.0, -lam[0]), hi = lo + g.norm() / r + 1.0;
  while (step_norm(hi) > r) hi *= 2.0;
  for (int it = 0; it < 400 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (step_norm(mid) > r ? lo : hi) = mid;
  }
  const double l = 0.5 * (lo + hi);
  return {step(l), l, false};
}

}  // namespace oracle
