#pragma once
// One-dimensional searches over delta for the bordered model.

#include <functional>
#include <limits>

#include "hsodm/ghm.hpp"

namespace hsodm {

struct TargetInterval {
  double lo = 1.0;      // l
  double hi = 1.0;      // nu
  double sigma = 1e-6;  // slack on h, accept h in [lo, hi + sigma]
};

struct Bracket {
  double delta_low = 0.0;
  double delta_high = 0.0;
  double h_low = std::numeric_limits<double>::quiet_NaN();   // h at delta_high
  double h_high = std::numeric_limits<double>::quiet_NaN();  // h at delta_low
};

struct SearchOptions {
  GhmOptions ghm;
  int max_steps = 60;
  // called after every bordered solve made by a search
  std::function<void(double delta, const GhmSolution&)> on_solve;
};

// Closed-form bracket: delta_low = min{lambda1, -sqrt(nu)},
// delta_high = max{(1+|lambda1|)^2 (1+lambda_d+|lambda1|)/l, ||phi||^2}.
Bracket bracket_for_h(const TargetInterval& target, double lambda1_H, double lambdad_H, double phi_norm);

// Evaluates h at both ends of `bracket` (two solves) and fills h_low/h_high.
// Throws HardCase when an end lands on t ~ 0 with theta > 0.
Bracket evaluate_bracket(const SymmetricOperator& hess, const Vec& phi, Bracket bracket, const SearchOptions& options);

struct SearchResult {
  double delta = 0.0;
  GhmSolution sol;
  int solves = 0;
};

// Bisection for h(delta) in [lo, hi + sigma]. `first_try` is evaluated
// before the first midpoint when it lies inside the bracket. A semidefinite
// solve counts as h = 0. Throws HardCase (t ~ 0, theta > 0) or
// DegenerateInterval (bracket collapsed or step budget spent).
SearchResult bisect_h(const SymmetricOperator& hess, const Vec& phi, const TargetInterval& target, Bracket bracket,
                      const SearchOptions& options, std::optional<double> first_try = std::nullopt);

struct RadiusResult {
  double delta = 0.0;
  std::optional<GhmSolution> sol;  // absent for an interior solution
  bool interior = false;
  Vec newton_step;                 // -H^{-1} g when interior
  int solves = 0;
  int krylov_iters = 0;            // Lanczos/CG iterations outside the bordered solves
};

// Finds delta with ||d(delta)|| = radius to tol * max(1, radius).
RadiusResult bisect_for_radius(const SymmetricOperator& hess, const Vec& g, double radius, double tol,
                               const SearchOptions& options = {});

struct ThetaResult {
  double delta = 0.0;
  GhmSolution sol;
  int solves = 0;
  int newton_steps = 0;  // accepted Newton updates
  int bisect_steps = 0;  // safeguard midpoints
};

// Safeguarded Newton on theta(delta) = theta_target using
// d theta / d delta = -1 / (Delta + 1), started from delta = -2 theta_target.
ThetaResult newton_for_theta(const SymmetricOperator& hess, const Vec& g, double theta_target, double tol,
                             const SearchOptions& options = {});

// Reference: the same root by plain bisection.
ThetaResult bisect_for_theta(const SymmetricOperator& hess, const Vec& g, double theta_target, double tol,
                             const SearchOptions& options = {});

}  // namespace hsodm
