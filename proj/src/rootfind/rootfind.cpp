#include "hsodm/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "hsodm/errors.hpp"

namespace hsodm {
namespace {

GhmSolution solve_at(const SymmetricOperator& hess, const Vec& phi, double delta, const SearchOptions& options,
                     int& solves) {
  GhmSolution sol = solve_ghm(GhmSpec{hess, phi, delta}, options.ghm);
  ++solves;
  if (options.on_solve) options.on_solve(delta, sol);
  return sol;
}

[[noreturn]] void throw_hard(double delta, const GhmSolution& sol) {
  throw HardCase("bordered solve hit the hard case", delta, sol.lambda1, sol.v, sol.t);
}

bool collapsed(double lo, double hi) {
  return hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max({1.0, std::abs(lo), std::abs(hi)});
}

// Arithmetic midpoint, or the midpoint in asinh space while the bracket
// spans several orders of magnitude (the closed-form h bracket can reach
// 1e25 on badly scaled problems).
double split(double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  if (hi - lo < 1e3 * std::max(1.0, std::min(std::abs(lo), std::abs(hi)))) return mid;
  const double s = std::sinh(0.5 * (std::asinh(lo) + std::asinh(hi)));
  return (s > lo && s < hi) ? s : mid;
}

}  // namespace

Bracket bracket_for_h(const TargetInterval& target, double lambda1_H, double lambdad_H, double phi_norm) {
  if (!(target.lo > 0.0 && target.lo <= target.hi)) throw InvalidInput("target interval needs 0 < lo <= hi");
  const double a = std::abs(lambda1_H);
  Bracket b;
  b.delta_low = std::min(lambda1_H, -std::sqrt(target.hi));
  b.delta_high = std::max((1.0 + a) * (1.0 + a) * (1.0 + lambdad_H + a) / target.lo, phi_norm * phi_norm);
  return b;
}

Bracket evaluate_bracket(const SymmetricOperator& hess, const Vec& phi, Bracket bracket, const SearchOptions& options) {
  int solves = 0;
  GhmSolution at_low = solve_at(hess, phi, bracket.delta_low, options, solves);
  if (at_low.hard_case && !at_low.semidefinite) throw_hard(bracket.delta_low, at_low);
  GhmSolution at_high = solve_at(hess, phi, bracket.delta_high, options, solves);
  if (at_high.hard_case && !at_high.semidefinite) throw_hard(bracket.delta_high, at_high);
  bracket.h_high = at_low.semidefinite ? 0.0 : at_low.h;
  bracket.h_low = at_high.semidefinite ? 0.0 : at_high.h;
  return bracket;
}

SearchResult bisect_h(const SymmetricOperator& hess, const Vec& phi, const TargetInterval& target, Bracket bracket,
                      const SearchOptions& options, std::optional<double> first_try) {
  if (!(bracket.delta_low < bracket.delta_high)) throw InvalidInput("bisect_h: bracket must satisfy low < high");
  double lo = bracket.delta_low, hi = bracket.delta_high;
  SearchResult out;

  // +1: h above the target (move delta up), -1: below (move down), 0: inside
  auto classify = [&](double delta, GhmSolution& sol) {
    sol = solve_at(hess, phi, delta, options, out.solves);
    if (sol.semidefinite) return -1;
    if (sol.hard_case) throw_hard(delta, sol);
    if (sol.h < target.lo) return -1;
    if (sol.h > target.hi + target.sigma) return 1;
    return 0;
  };

  std::optional<double> probe;
  if (first_try && *first_try > lo && *first_try < hi) probe = *first_try;
  while (true) {
    if (out.solves >= options.max_steps)
      throw DegenerateInterval("bisect_h: step budget exhausted", lo, hi);
    if (collapsed(lo, hi)) throw DegenerateInterval("bisect_h: bracket collapsed", lo, hi);
    const double delta = probe ? *probe : split(lo, hi);
    probe.reset();
    GhmSolution sol;
    const int side = classify(delta, sol);
    if (side == 0) {
      out.delta = delta;
      out.sol = std::move(sol);
      return out;
    }
    if (side > 0)
      lo = delta;
    else
      hi = delta;
  }
}

RadiusResult bisect_for_radius(const SymmetricOperator& hess, const Vec& g, double radius, double tol,
                               const SearchOptions& options) {
  if (!(radius > 0.0) || !(tol > 0.0)) throw InvalidInput("bisect_for_radius: radius and tol must be positive");
  RadiusResult out;
  LanczosOptions lo;
  lo.tol = options.ghm.eig_tol;
  lo.seed = options.ghm.seed;
  lo.max_iter = options.ghm.max_iter;
  const EigResult left = lanczos_leftmost(hess, lo);
  const EigResult right = lanczos_leftmost(negated(hess), lo);
  out.krylov_iters += left.iters + right.iters;
  const double lambda1 = left.value, lambdad = -right.value;
  const double gnorm = norm(g);
  const double target = radius * radius;
  const double accept = tol * std::max(1.0, radius);

  if (lambda1 > options.ghm.eig_tol * std::max(1.0, lambdad)) {
    LinSolveResult newton = cg_solve(hess, g, 1e-13, 10 * static_cast<int>(hess.dim()) + 50);
    out.krylov_iters += newton.iters;
    if (newton.converged && norm(newton.solution) <= radius) {
      out.interior = true;
      out.newton_step = scaled(newton.solution, -1.0);
      return out;
    }
  }

  // psi(delta) = 1/||d|| - 1/radius is decreasing; NaN marks a solve without d.
  // A hard-case solve sits above the radius crossing, so it is treated like a
  // missing d and only raised once the bracket can shrink no further.
  std::optional<std::pair<double, GhmSolution>> hard;
  auto eval = [&](double delta, GhmSolution& sol) {
    sol = solve_at(hess, g, delta, options, out.solves);
    if (sol.hard_case && !sol.semidefinite) {
      hard.emplace(delta, sol);
      return std::numeric_limits<double>::quiet_NaN();
    }
    if (sol.semidefinite || sol.Delta <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    return 1.0 / std::sqrt(sol.Delta) - 1.0 / radius;
  };

  double a, b;
  if (radius < 1.0) {
    a = std::min(lambda1, lambda1 - gnorm * (1.0 - target) / target);
    b = lambdad;
  } else {
    a = lambda1;
    b = lambdad;
  }
  if (!(a < b)) b = a + 1.0;

  GhmSolution sa, sb;
  double pa = eval(a, sa);
  for (int k = 0; !(pa > 0.0) && k < 60; ++k) {
    if (std::isfinite(pa) && std::abs(pa) * radius * std::sqrt(sa.Delta) <= accept) {
      out.delta = a;
      out.sol = std::move(sa);
      return out;
    }
    a -= 2.0 * (std::abs(a) + 1.0);
    pa = eval(a, sa);
  }
  double pb = eval(b, sb);
  for (int k = 0; !(pb < 0.0) && !std::isnan(pb) && k < 60; ++k) {
    b += 2.0 * (std::abs(b) + 1.0);
    pb = eval(b, sb);
  }
  if (!(pa > 0.0) && hard) throw_hard(hard->first, hard->second);
  if (!(pa > 0.0) || !(pb < 0.0 || std::isnan(pb)))
    throw DegenerateInterval("bisect_for_radius: could not bracket the radius", a, b);

  // Illinois regula falsi with bisection whenever an end carries no d
  int side = 0;
  double fa = pa, fb = pb;
  while (out.solves < options.max_steps) {
    if (collapsed(a, b)) break;
    double c;
    if (std::isnan(fb))
      c = 0.5 * (a + b);
    else {
      c = b - fb * (b - a) / (fb - fa);
      if (!(c > a && c < b)) c = 0.5 * (a + b);
    }
    GhmSolution sc;
    const double pc = eval(c, sc);
    if (std::isfinite(pc) && std::abs(std::sqrt(sc.Delta) - radius) <= accept) {
      out.delta = c;
      out.sol = std::move(sc);
      return out;
    }
    if (pc > 0.0) {
      a = c;
      fa = pc;
      if (side == -1 && std::isfinite(fb)) fb *= 0.5;
      side = -1;
    } else {
      b = c;
      fb = pc;
      if (side == 1) fa *= 0.5;
      side = 1;
    }
  }
  if (hard && std::isnan(fb)) throw_hard(hard->first, hard->second);
  throw DegenerateInterval("bisect_for_radius: no delta met the radius tolerance", a, b);
}

namespace {

ThetaResult theta_search(const SymmetricOperator& hess, const Vec& g, double theta_target, double tol,
                         const SearchOptions& options, bool use_newton) {
  if (!(theta_target > 0.0) || !(tol > 0.0)) throw InvalidInput("theta search: target and tol must be positive");
  if (!(norm(g) > 0.0)) throw InvalidInput("theta search: g must be nonzero");
  ThetaResult out;
  // theta >= -delta, so theta(-2 target) >= 2 target
  double lo = -2.0 * theta_target;
  double hi = std::numeric_limits<double>::infinity();

  auto eval = [&](double delta) {
    GhmSolution sol = solve_at(hess, g, delta, options, out.solves);
    if (sol.hard_case && !sol.semidefinite && sol.theta > theta_target + tol) throw_hard(delta, sol);
    return sol;
  };

  double delta = lo;
  GhmSolution sol = eval(delta);
  if (!use_newton) {
    // grow an upper end, then bisect
    double step = 2.0 * theta_target + 1.0;
    double up = lo + step;
    GhmSolution su = eval(up);
    while (su.theta >= theta_target && out.solves < options.max_steps) {
      lo = up;
      step *= 2.0;
      up += step;
      su = eval(up);
    }
    hi = up;
  }

  while (out.solves < options.max_steps) {
    const double err = sol.theta - theta_target;
    if (std::abs(err) <= tol && !sol.hard_case) {
      out.delta = delta;
      out.sol = std::move(sol);
      return out;
    }
    if (err > 0.0)
      lo = std::max(lo, delta);
    else
      hi = std::min(hi, delta);

    double next = std::numeric_limits<double>::quiet_NaN();
    if (use_newton && !sol.hard_case && !sol.semidefinite) next = delta + err * (sol.Delta + 1.0);
    if (std::isfinite(next) && next > lo && next < hi) {
      ++out.newton_steps;
    } else if (std::isfinite(hi)) {
      next = 0.5 * (lo + hi);
      ++out.bisect_steps;
    } else {
      next = lo + 2.0 * (std::abs(lo) + 1.0);
      ++out.bisect_steps;
    }
    if (std::isfinite(hi) && collapsed(lo, hi)) break;
    delta = next;
    sol = eval(delta);
  }
  throw NonConvergence("theta search: target not reached", delta, sol.eigenvector(), std::abs(sol.theta - theta_target),
                       out.solves);
}

}  // namespace

ThetaResult newton_for_theta(const SymmetricOperator& hess, const Vec& g, double theta_target, double tol,
                             const SearchOptions& options) {
  return theta_search(hess, g, theta_target, tol, options, true);
}

ThetaResult bisect_for_theta(const SymmetricOperator& hess, const Vec& g, double theta_target, double tol,
                             const SearchOptions& options) {
  SearchOptions wide = options;
  wide.max_steps = std::max(options.max_steps, 200);
  return theta_search(hess, g, theta_target, tol, wide, false);
}

}  // namespace hsodm
