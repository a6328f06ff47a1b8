#pragma once
// Homotopy HSODM for concordant convex objectives: follow the minimizers of
// f(x) + (mu/2)||x||^2 as mu shrinks geometrically.

#include "hsodm/ghm.hpp"
#include "hsodm/problems.hpp"
#include "hsodm/trace.hpp"

namespace hsodm {

struct HomotopyConfig {
  double beta = 1.0;
  double eps = 1e-8;
  int max_epochs = 5000;
  int max_inner = 50;
  double eig_tol = 1e-10;
  std::uint64_t seed = 0;
  bool warm_start = true;
  double t_threshold = 1e-6;
  std::string run_id = "homotopy";

  void validate() const;
};

// 2 (beta + 1) (1 + ||g0||^2)
double initial_mu(double g0_norm, double beta);
// 3(beta+1)(1+||x||) / (1 + 3(beta+1)(1+||x||))
double shrink_factor(double x_norm, double beta);
// mu / (1 + 3(beta+1))
double centering_threshold(double mu, double beta);
// Inner-iteration constants for epochs k >= 1 and for epoch 0.
int inner_bound(double beta);
int inner_bound_initial(double beta, double mu0);

struct HomotopyStep {
  Vec d;
  Vec phi;  // g + mu x
  GhmSolution sol;
  std::int64_t matvecs = 0;
};

// Bordered solve with phi = g(x) + mu x and delta = -mu.
// Throws ConvexityViolation when the solve lands on the hard case.
HomotopyStep homotopy_ghm_step(const Objective& obj, std::span<const double> x, double mu, double eig_tol,
                               const std::optional<Vec>& warm, std::uint64_t seed = 0);

struct EpochResult {
  Vec x;
  double mu = 0.0;
  double rho = 0.0;
  int inner_iters = 0;
  double centering_residual = 0.0;  // ||g(x) + mu x|| at return
  std::vector<double> residuals;    // e_0, e_1, ... over the inner loop
  std::int64_t lanczos_iters = 0;
  std::int64_t matvecs = 0;
};

// Inexact centering for one mu. `warm` carries the last [v; t] between
// calls when warm starting is enabled. Throws ConcordanceMisconfigured when
// max_inner steps do not reach the centering condition.
EpochResult iacghm(const Objective& obj, std::span<const double> x_start, double mu, const HomotopyConfig& config,
                   std::optional<Vec>& warm);

struct HomotopyResult : RunResult {
  std::vector<EpochResult> epochs;
  double mu0 = 0.0;
  std::int64_t lanczos_iters = 0;
};

// Starts from the origin unless x0 is given (which voids the mu0 rule).
HomotopyResult homotopy_hsodm(const Objective& obj, const HomotopyConfig& config,
                              std::optional<Vec> x0 = std::nullopt);

}  // namespace hsodm
