#pragma once
// Bordered (n+1)-dimensional model F = [[H, phi], [phi^T, delta]] and its
// leftmost eigenpair, with the derived primal/dual quantities.

#include <optional>

#include "hsodm/krylov.hpp"

namespace hsodm {

struct GhmSpec {
  SymmetricOperator hess;
  Vec phi;
  double delta = 0.0;
};

struct GhmOptions {
  double eig_tol = 1e-10;
  std::optional<Vec> warm;  // start vector for Lanczos, length n+1
  std::uint64_t seed = 0;
  double t_threshold = 1e-6;
  double delta_cap = 1e8;  // stands in for ||d||^2 when t is numerically zero
  int max_iter = 500;
};

struct GhmSolution {
  double lambda1 = 0.0;  // leftmost eigenvalue of F
  Vec v;
  double t = 0.0;         // sign chosen so that t >= 0
  double theta = 0.0;     // max(0, -lambda1), or 0 when semidefinite
  std::optional<Vec> d;   // v / t, absent when semidefinite or hard case
  double Delta = 0.0;     // ||v/t||^2, or delta_cap in the hard case
  double omega = 0.0;     // theta^2
  double h = 0.0;         // omega / Delta (+inf when Delta = 0 < theta)
  bool hard_case = false; // |t| <= t_threshold
  bool semidefinite = false;
  int eig_iters = 0;
  double eig_residual = 0.0;

  // [v; t]
  Vec eigenvector() const;
};

// apply([v; t]) = [H v + t phi; phi^T v + delta t]; one H matvec per apply.
SymmetricOperator build_ghm(const GhmSpec& spec);

GhmSolution solve_ghm(const GhmSpec& spec, const GhmOptions& options = {});

struct OptimalityResiduals {
  double r1 = 0.0;  // ||(H + theta I) v + t phi||
  double r2 = 0.0;  // |phi^T v + t (delta + theta)|
};
OptimalityResiduals check_optimality(const GhmSpec& spec, const GhmSolution& sol);

// max{-delta, -lambda1(H), 0} + ||phi||
double theta_upper_bound(const GhmSpec& spec, double lambda1_H);
double theta_upper_bound(const GhmSpec& spec, const LanczosOptions& eig = {});

struct HardCaseDiagnostics {
  double lambda1_H = 0.0;
  double lambdad_H = 0.0;
  double projection_norm = 0.0;  // norm of phi's component on the leftmost eigenspace of H
  Vec leftmost_vector;           // a unit vector in that eigenspace
  std::optional<double> alpha_tilde1;      // dense mode only
  std::optional<double> convex_threshold;  // phi^T H^+ phi, dense mode with H >= 0
};

// dense_mode materializes H (n <= 500) and uses a dense eigendecomposition;
// otherwise two Lanczos runs on H and -H.
HardCaseDiagnostics diagnostics(const GhmSpec& spec, bool dense_mode, const LanczosOptions& eig = {});

}  // namespace hsodm
