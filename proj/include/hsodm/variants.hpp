#pragma once
// Classical steps realized through the bordered model, and the
// inexact-Newton line-search baseline.

#include "hsodm/problems.hpp"
#include "hsodm/rootfind.hpp"
#include "hsodm/trace.hpp"

namespace hsodm {

enum class StepMode { Boundary, Interior, Shifted };
const char* step_mode_name(StepMode m);

struct StepResult {
  Vec d;
  double multiplier = 0.0;  // TRS lambda or the dual theta
  int ghm_solves = 0;
  std::int64_t krylov_iters = 0;
  StepMode mode = StepMode::Boundary;
  int newton_steps = 0;
};

struct StepOptions {
  double eig_tol = 1e-12;
  double tol = 1e-11;
  std::uint64_t seed = 0;
  int max_steps = 60;
};

// min g^T d + 0.5 d^T H d subject to ||d|| <= radius.
StepResult trs_step(const SymmetricOperator& hess, const Vec& g, double radius, const StepOptions& options = {});

// d = -(H + gamma ||g||^{1/2} I)^{-1} g, solved on the shifted Hessian
// H + (gamma/2)||g||^{1/2} I with the dual fixed at the same value.
StepResult gradreg_step(const SymmetricOperator& hess, const Vec& g, double gamma_coeff,
                        const StepOptions& options = {});

enum class LinearSolver { CG, GMRES };

struct InexactNewtonConfig {
  double eps = 1e-8;
  double lin_tol_loose = 1e-6;
  double lin_tol_tight = 1e-9;
  double switch_grad = 1e-4;  // use the tight tolerance once ||g|| <= switch_grad
  LinearSolver solver = LinearSolver::CG;
  std::optional<int> restart;
  int max_lin_iter = 2000;
  double c1 = 1e-4;
  double backtrack = 0.5;
  int max_halvings = 50;
  int max_outer = 500;
  std::string run_id = "inewton";
};

RunResult inexact_newton(const Objective& obj, std::span<const double> x0, const InexactNewtonConfig& config = {});

}  // namespace hsodm
