#include <cmath>
#include <vector>

#include "hsodm/errors.hpp"
#include "hsodm/krylov.hpp"

namespace hsodm {

LinSolveResult cg_solve(const SymmetricOperator& op, std::span<const double> b, double tol, int max_iter) {
  const std::size_t n = op.dim();
  if (b.size() != n) throw InvalidInput("cg: right-hand side has wrong dimension");
  if (!(tol > 0.0) || max_iter <= 0) throw InvalidInput("cg: tol and max_iter must be positive");

  LinSolveResult out;
  out.solution.assign(n, 0.0);
  Vec r(b.begin(), b.end());
  Vec p = r;
  Vec ap(n);
  const double target = tol * std::max(1.0, norm(b));
  double rr = dot(r, r);
  out.residual_norm = std::sqrt(rr);

  while (out.residual_norm > target && out.iters < max_iter) {
    op.apply(p, ap);
    ++out.iters;
    const double curvature = dot(p, ap);
    if (!(curvature > 0.0)) throw Indefinite("cg: nonpositive curvature", curvature, out.iters);
    const double alpha = rr / curvature;
    kernels::axpy(alpha, p, out.solution);
    kernels::axpy(-alpha, ap, r);
    const double rr_next = dot(r, r);
    kernels::axpby(1.0, r, rr_next / rr, p);
    rr = rr_next;
    out.residual_norm = std::sqrt(rr);
  }
  out.converged = out.residual_norm <= target;
  return out;
}

LinSolveResult gmres_solve(const SymmetricOperator& op, std::span<const double> b, double tol, int max_iter,
                           std::optional<int> restart) {
  const std::size_t n = op.dim();
  if (b.size() != n) throw InvalidInput("gmres: right-hand side has wrong dimension");
  if (!(tol > 0.0) || max_iter <= 0) throw InvalidInput("gmres: tol and max_iter must be positive");
  if (restart && *restart <= 0) throw InvalidInput("gmres: restart must be positive");

  LinSolveResult out;
  out.solution.assign(n, 0.0);
  const double target = tol * std::max(1.0, norm(b));
  const int cycle = restart ? *restart : max_iter;

  Vec r(b.begin(), b.end());
  double beta = norm(r);
  out.residual_norm = beta;
  bool first = true;

  while (out.residual_norm > target && out.iters < max_iter) {
    if (!first) {
      // residual refresh for the next cycle
      r = op.apply(out.solution);
      ++out.iters;
      for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];
      beta = norm(r);
      out.residual_norm = beta;
      if (beta <= target || out.iters >= max_iter) break;
    }
    first = false;

    const int m = cycle;
    std::vector<Vec> basis;
    basis.push_back(scaled(r, 1.0 / beta));
    std::vector<std::vector<double>> hcol;  // column j of the Hessenberg, already rotated
    std::vector<double> cs, sn;
    std::vector<double> g{beta};
    int steps = 0;

    for (int j = 0; j < m && out.iters < max_iter; ++j) {
      Vec w = op.apply(basis[j]);
      ++out.iters;
      std::vector<double> h(j + 2, 0.0);
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i <= j; ++i) {
          const double c = dot(basis[i], w);
          h[i] += c;
          kernels::axpy(-c, basis[i], w);
        }
      }
      h[j + 1] = norm(w);
      const double hnext = h[j + 1];

      for (int i = 0; i < j; ++i) {
        const double t = cs[i] * h[i] + sn[i] * h[i + 1];
        h[i + 1] = -sn[i] * h[i] + cs[i] * h[i + 1];
        h[i] = t;
      }
      const double rnorm = std::hypot(h[j], h[j + 1]);
      const double c = rnorm == 0.0 ? 1.0 : h[j] / rnorm;
      const double s = rnorm == 0.0 ? 0.0 : h[j + 1] / rnorm;
      cs.push_back(c);
      sn.push_back(s);
      h[j] = rnorm;
      h[j + 1] = 0.0;
      g.push_back(-s * g[j]);
      g[j] *= c;
      hcol.push_back(std::move(h));
      steps = j + 1;
      out.residual_norm = std::abs(g[j + 1]);

      if (out.residual_norm <= target || hnext <= 1e-14 * rnorm) break;
      kernels::scal(1.0 / hnext, w);
      basis.push_back(std::move(w));
    }

    // back substitution on the triangular factor
    std::vector<double> y(steps, 0.0);
    for (int i = steps - 1; i >= 0; --i) {
      double s = g[i];
      for (int k = i + 1; k < steps; ++k) s -= hcol[k][i] * y[k];
      y[i] = hcol[i][i] == 0.0 ? 0.0 : s / hcol[i][i];
    }
    for (int i = 0; i < steps; ++i) kernels::axpy(y[i], basis[i], out.solution);
    if (!restart) break;
  }
  out.converged = out.residual_norm <= target;
  return out;
}

}  // namespace hsodm
