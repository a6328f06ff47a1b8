#include "hsodm/ghm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hsodm/errors.hpp"

namespace hsodm {

Vec GhmSolution::eigenvector() const {
  Vec y = v;
  y.push_back(t);
  return y;
}

SymmetricOperator build_ghm(const GhmSpec& spec) {
  const std::size_t n = spec.hess.dim();
  if (spec.phi.size() != n) throw InvalidInput("ghm: phi length does not match the Hessian dimension");
  std::optional<double> hint;
  if (spec.hess.norm_hint()) hint = std::max(*spec.hess.norm_hint(), std::abs(spec.delta)) + norm(spec.phi);
  auto phi = std::make_shared<const Vec>(spec.phi);
  const SymmetricOperator hess = spec.hess;
  const double delta = spec.delta;
  return SymmetricOperator(
      n + 1,
      [hess, phi, delta, n](std::span<const double> x, std::span<double> y) {
        const double t = x[n];
        hess.apply(x.first(n), y.first(n));
        kernels::axpy(t, *phi, y.first(n));
        y[n] = dot(*phi, x.first(n)) + delta * t;
      },
      hint);
}

GhmSolution solve_ghm(const GhmSpec& spec, const GhmOptions& options) {
  if (!(options.eig_tol > 0.0)) throw InvalidInput("ghm: eig_tol must be positive");
  if (!(options.t_threshold > 0.0) || !(options.delta_cap > 0.0))
    throw InvalidInput("ghm: t_threshold and delta_cap must be positive");
  const std::size_t n = spec.hess.dim();
  const SymmetricOperator F = build_ghm(spec);

  LanczosOptions lo;
  lo.tol = options.eig_tol;
  lo.max_iter = options.max_iter;
  lo.seed = options.seed;
  lo.start = options.warm;
  EigResult eig = lanczos_leftmost(F, lo);

  GhmSolution sol;
  sol.lambda1 = eig.value;
  sol.eig_iters = eig.iters;
  sol.eig_residual = eig.residual;
  double t = eig.vector[n];
  if (t < 0.0) {
    kernels::scal(-1.0, eig.vector);
    t = -t;
  }
  sol.t = t;
  sol.v.assign(eig.vector.begin(), eig.vector.begin() + static_cast<std::ptrdiff_t>(n));
  sol.hard_case = std::abs(t) <= options.t_threshold;
  sol.semidefinite = eig.value >= -options.eig_tol;
  sol.theta = sol.semidefinite ? 0.0 : -eig.value;
  sol.omega = sol.theta * sol.theta;

  if (sol.hard_case) {
    sol.Delta = options.delta_cap;
  } else {
    Vec d = scaled(sol.v, 1.0 / t);
    sol.Delta = dot(d, d);
    if (!sol.semidefinite) sol.d = std::move(d);
  }
  if (sol.Delta > 0.0)
    sol.h = sol.omega / sol.Delta;
  else
    sol.h = sol.omega > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return sol;
}

OptimalityResiduals check_optimality(const GhmSpec& spec, const GhmSolution& sol) {
  if (sol.semidefinite) return {};
  Vec r = spec.hess.apply(sol.v);
  kernels::axpy(sol.theta, sol.v, r);
  kernels::axpy(sol.t, spec.phi, r);
  OptimalityResiduals out;
  out.r1 = norm(r);
  out.r2 = std::abs(dot(spec.phi, sol.v) + sol.t * (spec.delta + sol.theta));
  return out;
}

double theta_upper_bound(const GhmSpec& spec, double lambda1_H) {
  return std::max({-spec.delta, -lambda1_H, 0.0}) + norm(spec.phi);
}

double theta_upper_bound(const GhmSpec& spec, const LanczosOptions& eig) {
  return theta_upper_bound(spec, lanczos_leftmost(spec.hess, eig).value);
}

}  // namespace hsodm
