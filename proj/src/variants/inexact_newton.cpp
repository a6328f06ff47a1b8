#include <algorithm>
#include <chrono>
#include <cmath>

#include "hsodm/errors.hpp"
#include "hsodm/krylov.hpp"
#include "hsodm/variants.hpp"

namespace hsodm {

RunResult inexact_newton(const Objective& obj, std::span<const double> x0, const InexactNewtonConfig& config) {
  if (x0.size() != obj.dim()) throw InvalidInput("inewton: x0 has wrong dimension");
  if (!(config.c1 > 0.0 && config.c1 < 1.0) || !(config.backtrack > 0.0 && config.backtrack < 1.0))
    throw InvalidInput("inewton: need c1 and backtrack in (0, 1)");
  const auto start = std::chrono::steady_clock::now();
  auto now_ns = [&] {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count();
  };

  RunResult res;
  Vec x(x0.begin(), x0.end());
  double f = obj.value(x);
  Vec g = obj.gradient(x);

  auto row = [&](int k, std::int64_t kry, std::int64_t mv, double step, const std::string& status) {
    TraceRecord r;
    r.run_id = config.run_id;
    r.algo = "inewton";
    r.k = k;
    r.j = 0;
    r.f = f;
    r.grad_norm = norm(g);
    r.rho = step;  // accepted step length
    r.krylov_iters = kry;
    r.matvecs = mv;
    r.wall_ns = now_ns();
    r.status = status;
    res.trace.push_back(std::move(r));
  };
  auto finish = [&](RunStatus st, int k, const std::string& msg) {
    res.status = st;
    res.message = msg;
    res.x = x;
    res.f = f;
    res.grad_norm = norm(g);
    res.outer_iters = k;
    res.wall_ns = now_ns();
    return res;
  };

  for (int k = 0;; ++k) {
    const double gn = norm(g);
    if (gn <= config.eps) {
      row(k, 0, 0, kNotApplicable, "success");
      return finish(RunStatus::Success, k, "gradient tolerance reached");
    }
    if (k >= config.max_outer) {
      row(k, 0, 0, kNotApplicable, "budget");
      return finish(RunStatus::Budget, k, "outer iteration budget exhausted");
    }
    const SymmetricOperator H = obj.hessian(x);
    // the solvers stop at tol * max(1, ||b||); keep the forcing relative to ||g||
    const double lin_tol = (gn <= config.switch_grad ? config.lin_tol_tight : config.lin_tol_loose) *
                           std::min(1.0, gn);
    LinSolveResult ls = config.solver == LinearSolver::CG
                            ? cg_solve(H, g, lin_tol, config.max_lin_iter)
                            : gmres_solve(H, g, lin_tol, config.max_lin_iter, config.restart);
    res.krylov_iters += ls.iters;
    res.matvecs += static_cast<std::int64_t>(H.matvec_count());
    Vec d = scaled(ls.solution, -1.0);
    double slope = dot(g, d);
    if (!(slope < 0.0)) {
      // not a descent direction: fall back to steepest descent
      d = scaled(g, -1.0);
      slope = -gn * gn;
    }
    double alpha = 1.0;
    bool accepted = false;
    Vec xn;
    double fn = f;
    for (int i = 0; i <= config.max_halvings; ++i) {
      xn = add_scaled(x, alpha, d);
      fn = obj.value(xn);
      if (fn <= f + config.c1 * alpha * slope) {
        accepted = true;
        break;
      }
      alpha *= config.backtrack;
    }
    if (!accepted) {
      row(k, ls.iters, static_cast<std::int64_t>(H.matvec_count()), kNotApplicable, "stagnation");
      return finish(RunStatus::Stagnation, k, "line search failed");
    }
    row(k, ls.iters, static_cast<std::int64_t>(H.matvec_count()), alpha, ls.converged ? "step" : "step-inexact");
    x = std::move(xn);
    f = fn;
    g = obj.gradient(x);
  }
}

}  // namespace hsodm
