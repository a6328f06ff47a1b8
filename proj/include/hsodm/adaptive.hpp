#pragma once
// Adaptive HSODM for nonconvex objectives.

#include <utility>

#include "hsodm/problems.hpp"
#include "hsodm/rootfind.hpp"
#include "hsodm/trace.hpp"

namespace hsodm {

struct AdaptiveConfig {
  double eta1 = 0.1;
  double eta2 = 0.9;
  double gamma1 = 2.0;
  double gamma2 = 2.0;
  double gamma3 = 4.0;
  double gamma4 = 0.8;
  double h_min = 1e-6;
  double sigma = 1e-6;
  double kappa_phi = 1.0;
  double kappa_h = 1e8;  // caps the escape loop
  double eps = 1e-8;
  std::optional<double> delta0;  // default -||g(x0)||
  double rho0 = 0.5;
  int max_outer = 500;
  int max_inner = 60;  // bordered solves per outer iteration
  std::int64_t max_total_ghm = 30000;
  double eig_tol = 1e-10;
  double t_threshold = 1e-6;
  double delta_cap = 1e8;
  std::uint64_t seed = 0;
  std::string run_id = "adaptive";

  // Throws InvalidInput when the ordering constraints fail.
  void validate() const;
};

// Interval on sqrt(h) for the next search, lower end floored at sqrt(h_min).
std::pair<double, double> interval_update(double rho_prev, double h_prev, const AdaptiveConfig& config);

// phi^T d + 0.5 d^T H d + (sqrt(h)/3) ||d||^3
double cubic_model_value(std::span<const double> phi, const SymmetricOperator& hess, double h,
                         std::span<const double> d);

// (f_new - f_old) / model_decrement, or -inf when the decrement is negligible.
double ratio_test(double f_old, double f_new, double model_decrement);

struct EscapeResult {
  Vec d;
  Vec phi_used;
  double h_new = 0.0;
  double delta = 0.0;
  double theta = 0.0;
  double rho = 0.0;
  double model_decrement = 0.0;
  double f_new = 0.0;
  int escalations = 0;  // perturbation rounds, 1 when the first succeeds
  int inner_solves = 0;
  std::int64_t krylov_iters = 0;
};

// Perturbs phi along the leftmost eigenvector v of H(x) and raises the h
// target until a step passes the ratio test.
EscapeResult hard_case_escape(const Objective& obj, std::span<const double> x, std::span<const double> g,
                              double lambda1, std::span<const double> v, double h_prev, const AdaptiveConfig& config);

// One accepted or rejected trial, for post-hoc checks.
struct AdaptiveStep {
  int k = 0;
  Vec x;  // iterate the step was taken from
  Vec d;
  Vec phi;
  double f_old = 0.0;
  double f_new = 0.0;
  double grad_norm = 0.0;
  double grad_norm_new = kNotApplicable;  // at x + d, accepted steps only
  double h = 0.0;
  double theta = 0.0;
  double delta = 0.0;
  double rho = 0.0;
  double model_decrement = 0.0;
  bool accepted = false;
  bool escape = false;
  int escalations = 0;
  double h_prev = 0.0;
  int ghm_solves = 0;
};

struct AdaptiveResult : RunResult {
  std::vector<AdaptiveStep> steps;
  double lambda1_final = 0.0;
  int escapes = 0;
};

AdaptiveResult adaptive_hsodm(const Objective& obj, std::span<const double> x0, const AdaptiveConfig& config = {});

}  // namespace hsodm
