#pragma once
// Smooth objectives with analytic derivatives, plus a finite-difference
// checker.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hsodm/dataio.hpp"
#include "hsodm/operator.hpp"

namespace hsodm {

enum class Convexity { Convex, Nonconvex };

struct ObjectiveInfo {
  std::string name;
  Convexity convexity = Convexity::Nonconvex;
  std::optional<double> beta;       // concordance constant, when known
  std::optional<double> lipschitz;  // Hessian Lipschitz estimate, when known
};

class Objective {
 public:
  virtual ~Objective() = default;
  virtual std::size_t dim() const = 0;
  virtual double value(std::span<const double> x) const = 0;
  virtual Vec gradient(std::span<const double> x) const = 0;
  virtual Vec hess_vec(std::span<const double> x, std::span<const double> v) const = 0;
  // Upper bound on ||H(x)||, when cheap.
  virtual std::optional<double> hessian_norm_bound(std::span<const double> x) const;
  // Row-major n x n; built from hess_vec by default, n <= 500 only.
  virtual std::optional<std::vector<double>> dense_hessian(std::span<const double> x) const;
  const ObjectiveInfo& info() const { return info_; }

  // H(x) as an operator. Holds a copy of x and a reference to *this.
  SymmetricOperator hessian(std::span<const double> x) const;

 protected:
  ObjectiveInfo info_;
};

using ObjectivePtr = std::shared_ptr<const Objective>;

// (1/2N) ||X b - y||^2 + (gamma/2) ||b||^2
ObjectivePtr least_squares_objective(const SparseDataset& data, double gamma);
// (1/m) sum log(1 + exp(-y_i a_i^T x)) + (gamma/2) ||x||^2, labels in {-1, +1}
ObjectivePtr logistic_l2_objective(const SparseDataset& data, double gamma);
// sum_ij a_ij exp(x_i - x_j), A row-major n x n and entrywise nonnegative
ObjectivePtr matrix_balancing_objective(std::vector<double> a, std::size_t n);
// 0.5 x^T A x - b^T x, A dense symmetric row-major
ObjectivePtr quadratic_objective(std::vector<double> a, Vec b);
// -x1^2/2 + x2^2
ObjectivePtr saddle_objective();
// -x1^2/2 + x1^4/4 + x2^2/2
ObjectivePtr quartic_objective();
// exp(x), one variable
ObjectivePtr exponential_objective();

struct DerivativeReport {
  double max_grad_error = 0.0;  // relative
  double max_hess_error = 0.0;  // relative
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

DerivativeReport check_derivatives(const Objective& obj, const std::vector<Vec>& points, double tol_g, double tol_h);

struct ConcordanceEstimate {
  bool threshold_ok = false;  // gamma > (2/m) sum ||a_i||^2
  double beta = 0.0;
};

// max_i ||a_i|| * M / (2 mu) with M = max |l'''| = 1/(6 sqrt 3) for the logit
// loss and mu = gamma / lambda_max((1/m) sum a_i a_i^T).
ConcordanceEstimate concordance_beta_logistic(const SparseDataset& data, double gamma);

// beta of a sum of a_ij exp(x_i - x_j) for steps with ||d|| <= step_bound.
double concordance_beta_balancing(double step_bound = 1.0);

}  // namespace hsodm
