#include "hsodm/adaptive.hpp"

#include <chrono>
#include <cmath>

#include "hsodm/errors.hpp"

namespace hsodm {
namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ns(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
}

// Eigen tolerance tightened with ||phi|| so d = v/t stays accurate near a
// stationary point.
double forced_tol(double eig_tol, double phi_norm) { return std::max(1e-14, eig_tol * std::min(1.0, phi_norm)); }

SymmetricOperator hessian_at(const Objective& obj, std::span<const double> x, std::uint64_t seed) {
  SymmetricOperator H = obj.hessian(x);
  if (!H.norm_hint()) H = H.with_norm_hint(1.1 * estimate_norm(H, seed));
  return H;
}

// Actual change f(x+d) - f(x). When the change is near roundoff the
// trapezoid rule on the gradient replaces the cancelling difference.
double actual_change(const Objective& obj, std::span<const double> x, std::span<const double> g,
                     std::span<const double> d, double f_old, double f_new, double model) {
  if (std::abs(model) >= 1e-8 * std::max(1.0, std::abs(f_old))) return f_new - f_old;
  const Vec g_new = obj.gradient(add_scaled(x, 1.0, d));
  return 0.5 * (dot(g, d) + dot(g_new, d));
}

double rho_of(double change, double model) {
  if (!(model < 0.0)) return -std::numeric_limits<double>::infinity();
  return change / model;
}

}  // namespace

void AdaptiveConfig::validate() const {
  if (!(0.0 < eta1 && eta1 < eta2 && eta2 < 1.0)) throw InvalidInput("adaptive: need 0 < eta1 < eta2 < 1");
  if (!(gamma1 > 1.0)) throw InvalidInput("adaptive: need gamma1 > 1");
  if (!(gamma2 > 1.0 && gamma3 >= gamma2)) throw InvalidInput("adaptive: need gamma3 >= gamma2 > 1");
  if (!(gamma4 > 0.0 && gamma4 <= 1.0)) throw InvalidInput("adaptive: need 0 < gamma4 <= 1");
  if (!(h_min > 0.0) || !(sigma > 0.0) || !(kappa_phi > 0.0) || !(eps > 0.0) || !(kappa_h > 0.0))
    throw InvalidInput("adaptive: h_min, sigma, kappa_phi, kappa_h and eps must be positive");
  if (!(rho0 >= eta1 && rho0 < eta2)) throw InvalidInput("adaptive: need eta1 <= rho0 < eta2");
  if (max_outer <= 0 || max_inner <= 0 || max_total_ghm <= 0) throw InvalidInput("adaptive: budgets must be positive");
  if (!(eig_tol > 0.0)) throw InvalidInput("adaptive: eig_tol must be positive");
}

std::pair<double, double> interval_update(double rho_prev, double h_prev, const AdaptiveConfig& c) {
  const double s = std::sqrt(h_prev);
  const double floor = std::sqrt(c.h_min);
  double a, b;
  if (rho_prev > c.eta2) {
    a = c.gamma4 * s;
    b = s;
  } else if (rho_prev >= c.eta1) {
    a = s / c.gamma1;
    b = c.gamma2 * s;
  } else {
    a = c.gamma2 * s;
    b = c.gamma3 * s;
  }
  a = std::max(a, floor);
  b = std::max(b, a);
  return {a, b};
}

double cubic_model_value(std::span<const double> phi, const SymmetricOperator& hess, double h,
                         std::span<const double> d) {
  if (!(h >= 0.0)) throw InvalidInput("cubic model: h must be nonnegative");
  const Vec hd = hess.apply(d);
  const double nd = norm(d);
  return dot(phi, d) + 0.5 * dot(d, hd) + std::sqrt(h) / 3.0 * nd * nd * nd;
}

double ratio_test(double f_old, double f_new, double model_decrement) {
  if (std::abs(model_decrement) < 1e-14 * std::max(1.0, std::abs(f_old)))
    return -std::numeric_limits<double>::infinity();
  return (f_new - f_old) / model_decrement;
}

EscapeResult hard_case_escape(const Objective& obj, std::span<const double> x, std::span<const double> g,
                              double lambda1, std::span<const double> v, double h_prev, const AdaptiveConfig& config) {
  config.validate();
  if (!(lambda1 < 0.0)) throw InvalidInput("hard case escape: needs lambda1(H) < 0");
  if (!(h_prev > 0.0)) throw InvalidInput("hard case escape: h_prev must be positive");
  const SymmetricOperator H = hessian_at(obj, x, config.seed);
  const double f_old = obj.value(x);
  const double lambdad = -lanczos_leftmost(negated(H), LanczosOptions{config.eig_tol, 500, std::nullopt, config.seed}).value;

  const int bound = static_cast<int>(std::floor(std::log(config.kappa_h / h_prev) / std::log(config.gamma2))) + 1;
  EscapeResult out;
  double h_ref = h_prev;
  for (int i = 0; i < std::max(bound, 1); ++i) {
    Vec phi(g.begin(), g.end());
    kernels::axpy(config.kappa_phi * lambda1 * lambda1 / (config.gamma3 * config.gamma3 * h_ref), v, phi);
    TargetInterval target{config.gamma2 * config.gamma2 * h_ref, config.gamma3 * config.gamma3 * h_ref, config.sigma};

    SearchOptions so;
    so.ghm.eig_tol = forced_tol(config.eig_tol, norm(phi));
    so.ghm.seed = config.seed;
    so.ghm.t_threshold = config.t_threshold;
    so.ghm.delta_cap = config.delta_cap;
    so.max_steps = config.max_inner;
    so.on_solve = [&](double, const GhmSolution& sol) { out.krylov_iters += sol.eig_iters; };
    const Bracket br = bracket_for_h(target, lambda1, lambdad, norm(phi));
    SearchResult sr = bisect_h(H, phi, target, br, so);
    out.inner_solves += sr.solves;
    ++out.escalations;

    const Vec& d = *sr.sol.d;
    const double model = cubic_model_value(phi, H, sr.sol.h, d);
    const Vec xn = add_scaled(x, 1.0, d);
    const double f_new = obj.value(xn);
    const double rho = rho_of(actual_change(obj, x, g, d, f_old, f_new, model), model);
    out.d = d;
    out.phi_used = phi;
    out.h_new = sr.sol.h;
    out.delta = sr.delta;
    out.theta = sr.sol.theta;
    out.rho = rho;
    out.model_decrement = model;
    out.f_new = f_new;
    if (rho >= config.eta1) return out;
    h_ref = sr.sol.h;
  }
  throw AlgorithmFailure("hard case escape: no successful step within " + std::to_string(bound) + " escalations");
}

AdaptiveResult adaptive_hsodm(const Objective& obj, std::span<const double> x0, const AdaptiveConfig& config) {
  config.validate();
  if (x0.size() != obj.dim()) throw InvalidInput("adaptive: x0 has wrong dimension");
  const auto start = Clock::now();
  AdaptiveResult res;
  Vec x(x0.begin(), x0.end());
  double f = obj.value(x);
  Vec g = obj.gradient(x);
  double gn = norm(g);

  double h_prev = 0.0;
  double rho_prev = config.rho0;
  double delta_prev = config.delta0 ? *config.delta0 : -gn;
  bool have_h = false;
  bool moved = true;
  std::optional<SymmetricOperator> H;
  double lambda1 = 0.0, lambdad = 0.0;
  Vec v1;
  std::uint64_t mv_mark = 0;

  auto push = [&](int k, int j, double delta, double theta, double h, double rho, std::int64_t kry,
                  const std::string& status) {
    TraceRecord r;
    r.run_id = config.run_id;
    r.algo = "adaptive";
    r.k = k;
    r.j = j;
    r.f = f;
    r.grad_norm = gn;
    r.delta = delta;
    r.theta = theta;
    r.h = h;
    r.rho = rho;
    r.krylov_iters = kry;
    const std::uint64_t mv = H ? H->matvec_count() : 0;
    r.matvecs = static_cast<std::int64_t>(mv - mv_mark);
    mv_mark = mv;
    res.matvecs += r.matvecs;
    res.krylov_iters += kry;
    r.wall_ns = elapsed_ns(start);
    r.status = status;
    res.trace.push_back(std::move(r));
  };

  auto finish = [&](RunStatus st, int k, int j, const std::string& msg) {
    res.status = st;
    res.message = msg;
    res.x = x;
    res.f = f;
    res.grad_norm = gn;
    res.lambda1_final = lambda1;
    res.outer_iters = k;
    push(k, j, kNotApplicable, kNotApplicable, kNotApplicable, kNotApplicable, 0, status_name(st));
    res.wall_ns = elapsed_ns(start);
    return res;
  };

  const double curvature_floor = -std::sqrt(config.eps);
  for (int k = 0;; ++k) {
    if (moved) {
      H = hessian_at(obj, x, config.seed);
      mv_mark = 0;
      LanczosOptions lo{config.eig_tol, 500, std::nullopt, config.seed};
      EigResult left = lanczos_leftmost(*H, lo);
      EigResult right = lanczos_leftmost(negated(*H), lo);
      lambda1 = left.value;
      lambdad = -right.value;
      v1 = std::move(left.vector);
      push(k, 0, kNotApplicable, kNotApplicable, kNotApplicable, kNotApplicable, left.iters + right.iters, "eigs");
      moved = false;
    }
    if (gn <= config.eps && lambda1 >= curvature_floor) return finish(RunStatus::Success, k, 1, "eps-SOSP reached");
    if (k >= config.max_outer) return finish(RunStatus::Budget, k, 1, "outer iteration budget exhausted");
    if (res.ghm_solves >= config.max_total_ghm) return finish(RunStatus::Budget, k, 1, "bordered solve budget exhausted");

    int j = 0;
    const Vec& phi = g;
    SearchOptions so;
    so.ghm.eig_tol = forced_tol(config.eig_tol, gn);
    so.ghm.seed = config.seed;
    so.ghm.t_threshold = config.t_threshold;
    so.ghm.delta_cap = config.delta_cap;
    so.max_steps = config.max_inner;
    std::optional<std::pair<double, GhmSolution>> best;
    double best_gap = std::numeric_limits<double>::infinity();
    TargetInterval target;
    so.on_solve = [&](double delta, const GhmSolution& sol) {
      ++res.ghm_solves;
      push(k, ++j, delta, sol.theta, sol.h, kNotApplicable, sol.eig_iters, "search");
      if (sol.d && sol.h > 0.0) {
        const double lh = std::log(sol.h);
        const double gap = std::max({0.0, std::log(target.lo) - lh, lh - std::log(target.hi + target.sigma)});
        if (gap < best_gap) {
          best_gap = gap;
          best = std::make_pair(delta, sol);
        }
      }
    };

    AdaptiveStep step;
    step.k = k;
    step.x = x;
    step.f_old = f;
    step.grad_norm = gn;
    step.h_prev = h_prev;
    std::optional<GhmSolution> chosen;
    double chosen_delta = delta_prev;
    bool hard = false;

    try {
      if (!have_h) {
        target = TargetInterval{config.h_min, config.h_min * config.gamma2 * config.gamma2, config.sigma};
        GhmSolution sol = solve_ghm(GhmSpec{*H, phi, delta_prev}, so.ghm);
        so.on_solve(delta_prev, sol);
        if (sol.hard_case && !sol.semidefinite) {
          hard = true;
          h_prev = 1.0;
        } else if (!sol.semidefinite && sol.h >= config.h_min) {
          chosen = std::move(sol);
        } else {
          const Bracket br = bracket_for_h(target, lambda1, lambdad, gn);
          SearchResult sr = bisect_h(*H, phi, target, br, so, delta_prev);
          chosen = std::move(sr.sol);
          chosen_delta = sr.delta;
        }
        have_h = true;
      } else {
        const auto [a, b] = interval_update(rho_prev, h_prev, config);
        target = TargetInterval{a * a, b * b, config.sigma};
        const Bracket br = bracket_for_h(target, lambda1, lambdad, gn);
        SearchResult sr = bisect_h(*H, phi, target, br, so, delta_prev);
        chosen = std::move(sr.sol);
        chosen_delta = sr.delta;
      }
    } catch (const HardCase&) {
      hard = true;
    } catch (const DegenerateInterval&) {
      if (best) {
        chosen_delta = best->first;
        chosen = best->second;
      }
    }

    if (hard && lambda1 >= 0.0) {
      // theta > 0 with t ~ 0 is impossible for H >= 0; treat as h too small
      hard = false;
      if (best) {
        chosen_delta = best->first;
        chosen = best->second;
      }
    }

    if (hard) {
      if (!(h_prev > 0.0)) h_prev = 1.0;
      step.h_prev = h_prev;
      EscapeResult er;
      try {
        er = hard_case_escape(obj, x, g, lambda1, v1, h_prev, config);
      } catch (const Error& e) {
        return finish(RunStatus::Failure, k, j + 1, e.what());
      }
      res.ghm_solves += er.inner_solves;
      ++res.escapes;
      step.escape = true;
      step.escalations = er.escalations;
      step.d = er.d;
      step.phi = er.phi_used;
      step.h = er.h_new;
      step.theta = er.theta;
      step.delta = er.delta;
      step.rho = er.rho;
      step.model_decrement = er.model_decrement;
      step.ghm_solves = er.inner_solves;
      step.accepted = true;
      push(k, ++j, er.delta, er.theta, er.h_new, er.rho, er.krylov_iters, "escape");
      x = add_scaled(x, 1.0, er.d);
      f = er.f_new;
      g = obj.gradient(x);
      gn = norm(g);
      step.f_new = f;
      step.grad_norm_new = gn;
      res.steps.push_back(std::move(step));
      h_prev = std::max(er.h_new, config.h_min);
      rho_prev = er.rho;
      delta_prev = er.delta;
      moved = true;
      continue;
    }

    if (!chosen || !chosen->d) return finish(RunStatus::Failure, k, j + 1, "no usable bordered solution");

    const Vec& d = *chosen->d;
    const double model = cubic_model_value(phi, *H, chosen->h, d);
    Vec xn = add_scaled(x, 1.0, d);
    const double f_new = obj.value(xn);
    const double rho = rho_of(actual_change(obj, x, g, d, f, f_new, model), model);

    step.d = d;
    step.phi = phi;
    step.h = chosen->h;
    step.theta = chosen->theta;
    step.delta = chosen_delta;
    step.rho = rho;
    step.model_decrement = model;
    step.f_new = f_new;
    step.ghm_solves = j;
    step.accepted = rho >= config.eta1;

    h_prev = std::max(chosen->h, config.h_min);
    rho_prev = rho;
    delta_prev = chosen_delta;
    if (step.accepted) {
      x = std::move(xn);
      f = f_new;
      g = obj.gradient(x);
      gn = norm(g);
      step.grad_norm_new = gn;
      moved = true;
    }
    push(k, ++j, chosen_delta, chosen->theta, chosen->h, rho, 0, step.accepted ? "accepted" : "rejected");
    res.steps.push_back(std::move(step));
  }
}

}  // namespace hsodm
