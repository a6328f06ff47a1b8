#pragma once
// Krylov engines over SymmetricOperator: Lanczos for the leftmost eigenpair,
// CG, and (restarted) GMRES. Plus the concrete operators used by the
// experiments.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hsodm/dataio.hpp"
#include "hsodm/operator.hpp"

namespace hsodm {

struct EigResult {
  double value = 0.0;
  Vec vector;             // unit norm
  int iters = 0;          // Lanczos steps (one matvec each)
  double residual = 0.0;  // ||A y - value y||, recomputed from stored products
  std::vector<double> ritz_history;  // smallest Ritz value after each step
};

struct LanczosOptions {
  double tol = 1e-10;
  int max_iter = 500;
  std::optional<Vec> start;
  std::uint64_t seed = 0;
};

// Leftmost eigenpair with full reorthogonalization. Converged when
// ||A y - lambda y|| <= tol * max(1, |lambda|, norm_hint). When the operator
// carries no norm hint a 10-step power iteration supplies one.
EigResult lanczos_leftmost(const SymmetricOperator& op, const LanczosOptions& options = {});

// Power-iteration estimate of ||A||; uses `steps` matvecs.
double estimate_norm(const SymmetricOperator& op, std::uint64_t seed, int steps = 10);

struct LinSolveResult {
  Vec solution;
  int iters = 0;
  bool converged = false;
  double residual_norm = 0.0;
};

// Converged when ||b - A x|| <= tol * max(1, ||b||). Starts from x = 0.
// Throws Indefinite if p^T A p <= 0 is met.
LinSolveResult cg_solve(const SymmetricOperator& op, std::span<const double> b, double tol, int max_iter);

// restart = nullopt runs full GMRES. iters counts every matvec, including the
// residual refresh at each restart.
LinSolveResult gmres_solve(const SymmetricOperator& op, std::span<const double> b, double tol, int max_iter,
                           std::optional<int> restart = std::nullopt);

// H_ij = 1/(i+j-1) (1-based) plus shift * I.
SymmetricOperator hilbert_operator(std::size_t n, double shift);

// (1/N) X^T X + gamma I applied with two sparse passes.
SymmetricOperator normal_equations_operator(const SparseDataset& data, double gamma);

// Row-major dense symmetric matrix. Symmetry is checked on construction.
SymmetricOperator dense_operator(std::vector<double> row_major, std::size_t n);
SymmetricOperator diagonal_operator(std::vector<double> diag);
SymmetricOperator negated(const SymmetricOperator& op);
// A + shift * I
SymmetricOperator shifted(const SymmetricOperator& op, double shift);

// Materialize by applying to unit vectors (n matvecs). Desk-scale only.
std::vector<double> to_dense(const SymmetricOperator& op);

}  // namespace hsodm
