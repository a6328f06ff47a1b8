#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "hsodm/errors.hpp"
#include "hsodm/krylov.hpp"

namespace hsodm {
namespace {

// Solves (T - sigma I) x = x in place for a symmetric tridiagonal T with
// diagonal a and off-diagonal b. Gaussian elimination with partial pivoting
// (the dgtsv scheme); exact zero pivots are nudged so inverse iteration at a
// computed eigenvalue stays finite.
void tridiagonal_shifted_solve(std::span<const double> a, std::span<const double> b, double sigma,
                               std::vector<double>& x) {
  const std::size_t m = a.size();
  constexpr double kTiny = std::numeric_limits<double>::min() * 1e20;
  std::vector<double> d(m), du(b.begin(), b.end()), dl(b.begin(), b.end());
  std::vector<double> du2(m > 2 ? m - 2 : 0, 0.0);
  for (std::size_t i = 0; i < m; ++i) d[i] = a[i] - sigma;

  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = kTiny;
      const double fact = dl[i] / d[i];
      d[i + 1] -= fact * du[i];
      x[i + 1] -= fact * x[i];
    } else {
      const double fact = d[i] / dl[i];
      d[i] = dl[i];
      const double temp = d[i + 1];
      d[i + 1] = du[i] - fact * temp;
      if (i + 2 < m) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du2[i];
      }
      du[i] = temp;
      const double xt = x[i];
      x[i] = x[i + 1];
      x[i + 1] = xt - fact * x[i + 1];
    }
  }
  if (d[m - 1] == 0.0) d[m - 1] = kTiny;

  x[m - 1] /= d[m - 1];
  if (m > 1) x[m - 2] = (x[m - 2] - du[m - 2] * x[m - 1]) / d[m - 2];
  for (std::size_t k = m; k-- > 2;) {
    const std::size_t i = k - 2;
    x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
  }
}

struct RitzPair {
  double value;
  std::vector<double> vector;
};

// Smallest eigenpair of the tridiagonal block T[from, to).
RitzPair smallest_ritz(const std::vector<double>& alpha, const std::vector<double>& beta, std::size_t from,
                       std::size_t to) {
  const std::size_t m = to - from;
  if (m == 1) return {alpha[from], {1.0}};
  Eigen::VectorXd diag(m), sub(m - 1);
  for (std::size_t i = 0; i < m; ++i) diag[i] = alpha[from + i];
  for (std::size_t i = 0; i + 1 < m; ++i) sub[i] = beta[from + i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  const double lambda = es.eigenvalues()[0];

  std::span<const double> a(alpha.data() + from, m);
  std::span<const double> b(beta.data() + from, m - 1);
  std::vector<double> s(m, 1.0 / std::sqrt(static_cast<double>(m)));
  for (int it = 0; it < 3; ++it) {
    tridiagonal_shifted_solve(a, b, lambda, s);
    // an exact shift leaves entries near 1/kTiny; rescale before squaring
    double big = 0.0;
    for (double v : s) big = std::max(big, std::abs(v));
    for (double& v : s) v /= big;
    double nrm = 0.0;
    for (double v : s) nrm += v * v;
    nrm = std::sqrt(nrm);
    for (double& v : s) v /= nrm;
  }
  return {lambda, std::move(s)};
}

Vec random_unit(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec v(n);
  for (double& x : v) x = normal(rng);
  const double nrm = norm(v);
  kernels::scal(1.0 / nrm, v);
  return v;
}

// Two passes of classical Gram-Schmidt against the stored basis.
void orthogonalize(const std::vector<Vec>& basis, Vec& w) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const Vec& q : basis) kernels::axpy(-dot(q, w), q, w);
  }
}

}  // namespace

double estimate_norm(const SymmetricOperator& op, std::uint64_t seed, int steps) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  Vec x = random_unit(op.dim(), rng);
  Vec y(op.dim());
  double est = 0.0;
  for (int i = 0; i < steps; ++i) {
    op.apply(x, y);
    const double ny = norm(y);
    est = std::max(est, ny);
    if (ny == 0.0) break;
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = y[k] / ny;
  }
  return est;
}

EigResult lanczos_leftmost(const SymmetricOperator& op, const LanczosOptions& options) {
  const std::size_t n = op.dim();
  if (n == 0) throw InvalidInput("lanczos: operator has dimension 0");
  if (!(options.tol > 0.0)) throw InvalidInput("lanczos: tol must be positive");
  if (options.max_iter <= 0) throw InvalidInput("lanczos: max_iter must be positive");

  std::mt19937_64 rng(options.seed);
  Vec q;
  if (options.start) {
    if (options.start->size() != n) throw InvalidInput("lanczos: start vector has wrong dimension");
    const double nrm = norm(*options.start);
    if (!(nrm > 0.0) || !std::isfinite(nrm)) throw InvalidInput("lanczos: start vector norm must be in (0, inf)");
    q = scaled(*options.start, 1.0 / nrm);
  } else {
    q = random_unit(n, rng);
  }

  const double norm_hint = op.norm_hint() ? *op.norm_hint() : estimate_norm(op, options.seed);
  const double breakdown = 1e-13 * std::max(1.0, norm_hint);

  std::vector<Vec> basis;    // Q
  std::vector<Vec> images;   // A Q
  std::vector<double> alpha, beta;
  std::size_t block_start = 0;

  EigResult out;
  double best_residual = std::numeric_limits<double>::infinity();
  double best_value = 0.0;
  Vec best_vector;

  auto assemble = [&](const std::vector<double>& s, Vec& y, Vec& ay) {
    y.assign(n, 0.0);
    ay.assign(n, 0.0);
    for (std::size_t i = 0; i < s.size(); ++i) {
      kernels::axpy(s[i], basis[i], y);
      kernels::axpy(s[i], images[i], ay);
    }
  };

  const int max_iter = options.max_iter;
  for (int j = 0; j < max_iter; ++j) {
    basis.push_back(q);
    Vec w = op.apply(q);
    images.push_back(w);
    const double a = dot(q, w);
    alpha.push_back(a);
    orthogonalize(basis, w);
    double b = norm(w);

    const std::size_t m = alpha.size();
    RitzPair ritz = smallest_ritz(alpha, beta, 0, m);
    out.ritz_history.push_back(ritz.value);
    const double scale_tol = options.tol * std::max({1.0, std::abs(ritz.value), norm_hint});

    double estimate = std::abs(b * ritz.vector.back());
    if (block_start > 0 && estimate <= scale_tol) {
      // after an invariant-subspace restart the newest block must also settle
      RitzPair tail = smallest_ritz(alpha, beta, block_start, m);
      estimate = std::max(estimate, std::abs(b * tail.vector.back()));
    }

    const bool exhausted = basis.size() == n;
    // At a breakdown the Ritz pair is exact but only for the invariant
    // subspace found so far. A random block start touches every eigenspace
    // (almost surely) so that pair is leftmost; a caller's start may not be.
    const bool breaking = b <= breakdown && !exhausted && options.start && block_start == 0;
    if ((estimate <= scale_tol && !breaking) || exhausted) {
      Vec y, ay;
      assemble(ritz.vector, y, ay);
      const double ny = norm(y);
      kernels::scal(1.0 / ny, y);
      kernels::scal(1.0 / ny, ay);
      kernels::axpy(-ritz.value, y, ay);
      const double residual = norm(ay);
      if (residual < best_residual) {
        best_residual = residual;
        best_value = ritz.value;
        best_vector = y;
      }
      if (residual <= scale_tol) {
        out.value = ritz.value;
        out.vector = std::move(y);
        out.iters = j + 1;
        out.residual = residual;
        return out;
      }
      if (exhausted) break;
    }

    if (b <= breakdown) {
      // Invariant subspace found before convergence of the whole space:
      // continue from a fresh direction orthogonal to everything so far.
      Vec fresh = random_unit(n, rng);
      orthogonalize(basis, fresh);
      const double nf = norm(fresh);
      if (nf <= 1e-8) break;
      kernels::scal(1.0 / nf, fresh);
      beta.push_back(0.0);
      block_start = m;
      q = std::move(fresh);
    } else {
      beta.push_back(b);
      kernels::scal(1.0 / b, w);
      q = std::move(w);
    }
  }

  if (best_vector.empty()) {
    RitzPair ritz = smallest_ritz(alpha, beta, 0, alpha.size());
    Vec y, ay;
    assemble(ritz.vector, y, ay);
    const double ny = norm(y);
    kernels::scal(1.0 / ny, y);
    kernels::scal(1.0 / ny, ay);
    kernels::axpy(-ritz.value, y, ay);
    best_residual = norm(ay);
    best_value = ritz.value;
    best_vector = std::move(y);
  }
  throw NonConvergence("lanczos: residual tolerance not met", best_value, std::move(best_vector), best_residual,
                       static_cast<int>(alpha.size()));
}

}  // namespace hsodm
