#include "hsodm/homotopy.hpp"

#include <chrono>
#include <cmath>

#include "hsodm/errors.hpp"

namespace hsodm {

void HomotopyConfig::validate() const {
  if (!(beta > 0.0)) throw InvalidInput("homotopy: beta must be positive");
  if (!(eps > 0.0) || !(eig_tol > 0.0)) throw InvalidInput("homotopy: eps and eig_tol must be positive");
  if (max_epochs <= 0 || max_inner <= 0) throw InvalidInput("homotopy: budgets must be positive");
}

double initial_mu(double g0_norm, double beta) { return 2.0 * (beta + 1.0) * (1.0 + g0_norm * g0_norm); }

double shrink_factor(double x_norm, double beta) {
  const double a = 3.0 * (beta + 1.0) * (1.0 + x_norm);
  return a / (1.0 + a);
}

double centering_threshold(double mu, double beta) { return mu / (1.0 + 3.0 * (beta + 1.0)); }

int inner_bound(double beta) {
  const double r = (std::log(1.0 + 3.0 * (beta + 1.0)) - std::log(beta + 1.0)) / (std::log(3.0) - std::log(2.0));
  return std::max(1, static_cast<int>(std::ceil(std::log2(r))));
}

int inner_bound_initial(double beta, double mu0) {
  const double num = std::max(std::log(1.0 + 3.0 * (1.0 + beta)) - std::log(mu0), std::log(2.0));
  return std::max(1, static_cast<int>(std::ceil(std::log2(num / std::log(2.0)))) + 1);
}

HomotopyStep homotopy_ghm_step(const Objective& obj, std::span<const double> x, double mu, double eig_tol,
                               const std::optional<Vec>& warm, std::uint64_t seed) {
  if (!(mu > 0.0)) throw InvalidInput("homotopy step: mu must be positive");
  HomotopyStep out;
  out.phi = obj.gradient(x);
  kernels::axpy(mu, x, out.phi);
  SymmetricOperator H = obj.hessian(x);
  if (!H.norm_hint()) H = H.with_norm_hint(1.1 * estimate_norm(H, seed));
  GhmOptions opts;
  opts.eig_tol = std::max(1e-14, eig_tol * std::min(1.0, norm(out.phi)));
  opts.seed = seed;
  opts.warm = warm;
  out.sol = solve_ghm(GhmSpec{H, out.phi, -mu}, opts);
  if (out.sol.hard_case || !out.sol.d)
    throw ConvexityViolation("homotopy step: hard case on a problem assumed convex");
  out.d = *out.sol.d;
  out.matvecs = static_cast<std::int64_t>(H.matvec_count());
  return out;
}

EpochResult iacghm(const Objective& obj, std::span<const double> x_start, double mu, const HomotopyConfig& config,
                   std::optional<Vec>& warm) {
  EpochResult out;
  out.mu = mu;
  out.x.assign(x_start.begin(), x_start.end());
  const double threshold = centering_threshold(mu, config.beta);
  for (int j = 0;; ++j) {
    Vec r = obj.gradient(out.x);
    kernels::axpy(mu, out.x, r);
    const double e = norm(r);
    out.residuals.push_back(e);
    if (e <= threshold) {
      out.centering_residual = e;
      out.rho = shrink_factor(norm(out.x), config.beta);
      out.inner_iters = j;
      return out;
    }
    if (j >= config.max_inner)
      throw ConcordanceMisconfigured("iacghm: centering not reached in " + std::to_string(config.max_inner) +
                                     " steps; beta may be too small");
    const std::optional<Vec> start = config.warm_start ? warm : std::nullopt;
    HomotopyStep step = homotopy_ghm_step(obj, out.x, mu, config.eig_tol, start, config.seed);
    out.lanczos_iters += step.sol.eig_iters;
    out.matvecs += step.matvecs;
    if (config.warm_start) warm = step.sol.eigenvector();
    kernels::axpy(1.0, step.d, out.x);
  }
}

HomotopyResult homotopy_hsodm(const Objective& obj, const HomotopyConfig& config, std::optional<Vec> x0) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  auto now_ns = [&] {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count();
  };
  HomotopyResult res;
  Vec x = x0 ? *x0 : Vec(obj.dim(), 0.0);
  if (x.size() != obj.dim()) throw InvalidInput("homotopy: x0 has wrong dimension");
  Vec g = obj.gradient(x);
  double mu = initial_mu(norm(g), config.beta);
  res.mu0 = mu;
  std::optional<Vec> warm;

  auto row = [&](int k, int j, double rho, std::int64_t kry, const std::string& status) {
    TraceRecord r;
    r.run_id = config.run_id;
    r.algo = "homotopy";
    r.k = k;
    r.j = j;
    r.f = obj.value(x);
    r.grad_norm = norm(g);
    r.delta = -mu;
    r.mu = mu;
    r.rho = rho;
    r.krylov_iters = kry;
    r.wall_ns = now_ns();
    r.status = status;
    res.trace.push_back(std::move(r));
  };
  auto finish = [&](RunStatus st, int k, const std::string& msg) {
    res.status = st;
    res.message = msg;
    res.x = x;
    res.f = obj.value(x);
    res.grad_norm = norm(g);
    res.outer_iters = k;
    row(k, 0, kNotApplicable, 0, status_name(st));
    res.wall_ns = now_ns();
    return res;
  };

  for (int k = 0;; ++k) {
    if (norm(g) <= config.eps) return finish(RunStatus::Success, k, "gradient tolerance reached");
    if (k >= config.max_epochs) return finish(RunStatus::Budget, k, "epoch budget exhausted");
    EpochResult ep;
    try {
      ep = iacghm(obj, x, mu, config, warm);
    } catch (const Error& e) {
      return finish(RunStatus::Failure, k, e.what());
    }
    x = ep.x;
    g = obj.gradient(x);
    res.lanczos_iters += ep.lanczos_iters;
    res.krylov_iters += ep.lanczos_iters;
    res.ghm_solves += ep.inner_iters;
    res.matvecs += ep.matvecs;
    // record at the epoch's mu, then shrink
    row(k, 1, ep.rho, ep.lanczos_iters, "centered");
    res.trace.back().matvecs = ep.matvecs;
    mu *= ep.rho;
    res.epochs.push_back(std::move(ep));
  }
}

}  // namespace hsodm
