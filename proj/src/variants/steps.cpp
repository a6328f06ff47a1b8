#include <cmath>

#include "hsodm/errors.hpp"
#include "hsodm/variants.hpp"

namespace hsodm {

const char* step_mode_name(StepMode m) {
  switch (m) {
    case StepMode::Boundary: return "boundary";
    case StepMode::Interior: return "interior";
    case StepMode::Shifted: return "shifted";
  }
  return "?";
}

namespace {

// Classical hard-case answer: p solves (H - lambda1 I) p = -g off the leftmost
// eigenvector u and d = p + tau u lands on the sphere. The perturbed retry is
// kept for when g is not orthogonal enough to u or p is already too long.
bool hard_case_completion(const SymmetricOperator& hess, const Vec& g, double radius, const EigResult& left,
                          StepResult& out) {
  const Vec& u = left.vector;
  const double gn = norm(g);
  const double gu = dot(g, u);
  if (std::abs(gu) > 1e-8 * gn) return false;
  Vec rhs = g;
  kernels::axpy(-gu, u, rhs);
  kernels::scal(-1.0, rhs);
  const auto n = static_cast<int>(hess.dim());
  LinSolveResult p = cg_solve(shifted(hess, -left.value), rhs, 1e-12, 10 * n + 50);
  out.krylov_iters += p.iters;
  if (!p.converged) return false;
  kernels::axpy(-dot(p.solution, u), u, p.solution);
  const double pn = norm(p.solution);
  if (!(pn <= radius)) return false;
  const double tau = std::sqrt(radius * radius - pn * pn);
  out.d = std::move(p.solution);
  kernels::axpy(tau, u, out.d);
  out.multiplier = -left.value;
  out.mode = StepMode::Boundary;
  return true;
}

}  // namespace

StepResult trs_step(const SymmetricOperator& hess, const Vec& g, double radius, const StepOptions& options) {
  if (!(radius > 0.0)) throw InvalidInput("trs: radius must be positive");
  if (g.size() != hess.dim()) throw InvalidInput("trs: g has wrong dimension");
  if (!(norm(g) > 0.0)) throw InvalidInput("trs: g must be nonzero");
  SearchOptions so;
  so.ghm.eig_tol = options.eig_tol;
  so.ghm.seed = options.seed;
  so.max_steps = options.max_steps;

  StepResult out;
  so.on_solve = [&](double, const GhmSolution& sol) { out.krylov_iters += sol.eig_iters; };
  Vec phi = g;
  for (int attempt = 0; attempt < 2; ++attempt) {
    try {
      RadiusResult rr = bisect_for_radius(hess, phi, radius, options.tol, so);
      out.ghm_solves += rr.solves;
      out.krylov_iters += rr.krylov_iters;
      if (rr.interior) {
        out.d = std::move(rr.newton_step);
        out.multiplier = 0.0;
        out.mode = StepMode::Interior;
      } else {
        out.d = *rr.sol->d;
        out.multiplier = rr.sol->theta;
        out.mode = StepMode::Boundary;
      }
      return out;
    } catch (const HardCase&) {
      if (attempt == 1) throw;
      LanczosOptions lo{options.eig_tol, 500, std::nullopt, options.seed};
      const EigResult left = lanczos_leftmost(hess, lo);
      out.krylov_iters += left.iters;
      if (hard_case_completion(hess, g, radius, left, out)) return out;
      kernels::axpy(1e-10 * norm(g), left.vector, phi);
    }
  }
  throw AlgorithmFailure("trs: unreachable");
}

StepResult gradreg_step(const SymmetricOperator& hess, const Vec& g, double gamma_coeff, const StepOptions& options) {
  if (!(gamma_coeff > 0.0)) throw InvalidInput("gradreg: gamma must be positive");
  if (g.size() != hess.dim()) throw InvalidInput("gradreg: g has wrong dimension");
  const double gn = norm(g);
  if (!(gn > 0.0)) throw InvalidInput("gradreg: g must be nonzero");
  const double half = 0.5 * gamma_coeff * std::sqrt(gn);
  const SymmetricOperator shifted_hess = shifted(hess, half);
  SearchOptions so;
  so.ghm.eig_tol = options.eig_tol;
  so.ghm.seed = options.seed;
  so.max_steps = options.max_steps;
  std::int64_t iters = 0;
  so.on_solve = [&](double, const GhmSolution& sol) { iters += sol.eig_iters; };
  ThetaResult tr = newton_for_theta(shifted_hess, g, half, options.tol * std::max(1.0, half), so);
  StepResult out;
  out.d = *tr.sol.d;
  out.multiplier = tr.sol.theta;
  out.ghm_solves = tr.solves;
  out.krylov_iters = iters;
  out.mode = StepMode::Shifted;
  out.newton_steps = tr.newton_steps;
  return out;
}

}  // namespace hsodm
