#include <cmath>

#include "hsodm/errors.hpp"
#include "hsodm/krylov.hpp"
#include "hsodm/problems.hpp"

namespace hsodm {
namespace {

void require_dim(std::span<const double> x, std::size_t n) {
  if (x.size() != n) throw InvalidInput("objective: point has wrong dimension");
}

class LeastSquares final : public Objective {
 public:
  LeastSquares(const SparseDataset& data, double gamma) : data_(data), gamma_(gamma) {
    data_.validate();
    info_.name = "lsq";
    info_.convexity = Convexity::Convex;
    info_.lipschitz = 0.0;
    info_.beta = 1e-12;
  }
  std::size_t dim() const override { return data_.cols; }
  double value(std::span<const double> x) const override {
    require_dim(x, dim());
    const Vec r = residual(x);
    return 0.5 * dot(r, r) / static_cast<double>(data_.rows) + 0.5 * gamma_ * dot(x, x);
  }
  Vec gradient(std::span<const double> x) const override {
    require_dim(x, dim());
    const Vec r = residual(x);
    Vec g(dim());
    data_.multiply_transpose(r, g);
    kernels::axpby(gamma_, x, 1.0 / static_cast<double>(data_.rows), g);
    return g;
  }
  Vec hess_vec(std::span<const double> x, std::span<const double> v) const override {
    require_dim(x, dim());
    require_dim(v, dim());
    Vec u(data_.rows), y(dim());
    data_.multiply(v, u);
    data_.multiply_transpose(u, y);
    kernels::axpby(gamma_, v, 1.0 / static_cast<double>(data_.rows), y);
    return y;
  }
  std::optional<double> hessian_norm_bound(std::span<const double>) const override {
    return data_.frobenius_norm_sq() / static_cast<double>(data_.rows) + gamma_;
  }

 private:
  Vec residual(std::span<const double> x) const {
    Vec r(data_.rows);
    data_.multiply(x, r);
    kernels::axpy(-1.0, data_.labels, r);
    return r;
  }
  SparseDataset data_;
  double gamma_;
};

// log(1 + exp(-z)) without overflow
double logit_loss(double z) { return std::log1p(std::exp(-std::abs(z))) + std::max(0.0, -z); }
// 1 / (1 + exp(z))
double sigmoid_neg(double z) {
  if (z >= 0.0) {
    const double e = std::exp(-z);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(z));
}

class Logistic final : public Objective {
 public:
  Logistic(const SparseDataset& data, double gamma) : data_(data), gamma_(gamma) {
    data_.validate();
    for (double y : data_.labels)
      if (y != 1.0 && y != -1.0) throw DataError("logistic: labels must be -1 or +1");
    if (data_.rows == 0) throw DataError("logistic: empty dataset");
    info_.name = "logistic";
    info_.convexity = Convexity::Convex;
  }
  std::size_t dim() const override { return data_.cols; }
  double value(std::span<const double> x) const override {
    require_dim(x, dim());
    double s = 0.0;
    for (std::size_t i = 0; i < data_.rows; ++i) s += logit_loss(data_.labels[i] * data_.row_dot(i, x));
    return s / static_cast<double>(data_.rows) + 0.5 * gamma_ * dot(x, x);
  }
  Vec gradient(std::span<const double> x) const override {
    require_dim(x, dim());
    Vec u(data_.rows);
    for (std::size_t i = 0; i < data_.rows; ++i) {
      const double z = data_.labels[i] * data_.row_dot(i, x);
      u[i] = -data_.labels[i] * sigmoid_neg(z);
    }
    Vec g(dim());
    data_.multiply_transpose(u, g);
    kernels::axpby(gamma_, x, 1.0 / static_cast<double>(data_.rows), g);
    return g;
  }
  Vec hess_vec(std::span<const double> x, std::span<const double> v) const override {
    require_dim(x, dim());
    require_dim(v, dim());
    Vec u(data_.rows);
    for (std::size_t i = 0; i < data_.rows; ++i) {
      const double z = data_.row_dot(i, x);
      const double s = sigmoid_neg(z);
      u[i] = s * (1.0 - s) * data_.row_dot(i, v);
    }
    Vec y(dim());
    data_.multiply_transpose(u, y);
    kernels::axpby(gamma_, v, 1.0 / static_cast<double>(data_.rows), y);
    return y;
  }
  std::optional<double> hessian_norm_bound(std::span<const double>) const override {
    return 0.25 * data_.frobenius_norm_sq() / static_cast<double>(data_.rows) + gamma_;
  }

 private:
  SparseDataset data_;
  double gamma_;
};

class Balancing final : public Objective {
 public:
  Balancing(std::vector<double> a, std::size_t n) : a_(std::move(a)), n_(n) {
    if (n == 0 || a_.size() != n * n) throw DataError("balancing: expected an n x n matrix");
    for (double v : a_)
      if (!(v >= 0.0)) throw DataError("balancing: entries must be nonnegative");
    info_.name = "balancing";
    info_.convexity = Convexity::Convex;
    info_.beta = concordance_beta_balancing();
  }
  std::size_t dim() const override { return n_; }
  double value(std::span<const double> x) const override {
    require_dim(x, n_);
    double s = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (a_[i * n_ + j] != 0.0) s += a_[i * n_ + j] * std::exp(x[i] - x[j]);
    return s;
  }
  Vec gradient(std::span<const double> x) const override {
    require_dim(x, n_);
    Vec g(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        const double a = a_[i * n_ + j];
        if (a == 0.0) continue;
        const double w = a * std::exp(x[i] - x[j]);
        g[i] += w;
        g[j] -= w;
      }
    return g;
  }
  Vec hess_vec(std::span<const double> x, std::span<const double> v) const override {
    require_dim(x, n_);
    require_dim(v, n_);
    Vec y(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) {
        const double a = a_[i * n_ + j];
        if (a == 0.0 || i == j) continue;
        const double c = a * std::exp(x[i] - x[j]) * (v[i] - v[j]);
        y[i] += c;
        y[j] -= c;
      }
    return y;
  }

 private:
  std::vector<double> a_;
  std::size_t n_;
};

class Quadratic final : public Objective {
 public:
  Quadratic(std::vector<double> a, Vec b) : a_(std::move(a)), b_(std::move(b)) {
    const std::size_t n = b_.size();
    if (n == 0 || a_.size() != n * n) throw InvalidInput("quadratic: expected n x n matrix and length-n vector");
    double fro = 0.0;
    for (double v : a_) fro += v * v;
    fro_ = std::sqrt(fro);
    info_.name = "quadratic";
    info_.convexity = Convexity::Convex;
    info_.lipschitz = 0.0;
    info_.beta = 1e-12;
  }
  std::size_t dim() const override { return b_.size(); }
  double value(std::span<const double> x) const override {
    const Vec ax = apply(x);
    return 0.5 * dot(x, ax) - dot(b_, x);
  }
  Vec gradient(std::span<const double> x) const override { return sub(apply(x), b_); }
  Vec hess_vec(std::span<const double>, std::span<const double> v) const override { return apply(v); }
  std::optional<double> hessian_norm_bound(std::span<const double>) const override { return fro_; }

 private:
  Vec apply(std::span<const double> x) const {
    require_dim(x, dim());
    Vec y(dim());
    kernels::active().gemv(a_.data(), dim(), dim(), x.data(), y.data());
    return y;
  }
  std::vector<double> a_;
  Vec b_;
  double fro_ = 0.0;
};

// Two-variable fixtures: f = c2 x1^2 + q x1^4 + c3 x2^2
class Polynomial2 final : public Objective {
 public:
  Polynomial2(std::string name, double c2, double q, double c3) : c2_(c2), q_(q), c3_(c3) {
    info_.name = std::move(name);
    info_.convexity = Convexity::Nonconvex;
  }
  std::size_t dim() const override { return 2; }
  double value(std::span<const double> x) const override {
    require_dim(x, 2);
    const double x1 = x[0], x2 = x[1];
    return c2_ * x1 * x1 + q_ * x1 * x1 * x1 * x1 + c3_ * x2 * x2;
  }
  Vec gradient(std::span<const double> x) const override {
    require_dim(x, 2);
    return {2.0 * c2_ * x[0] + 4.0 * q_ * x[0] * x[0] * x[0], 2.0 * c3_ * x[1]};
  }
  Vec hess_vec(std::span<const double> x, std::span<const double> v) const override {
    require_dim(x, 2);
    require_dim(v, 2);
    return {(2.0 * c2_ + 12.0 * q_ * x[0] * x[0]) * v[0], 2.0 * c3_ * v[1]};
  }
  std::optional<double> hessian_norm_bound(std::span<const double> x) const override {
    return std::max(std::abs(2.0 * c2_ + 12.0 * q_ * x[0] * x[0]), std::abs(2.0 * c3_));
  }

 private:
  double c2_, q_, c3_;
};

class Exponential final : public Objective {
 public:
  Exponential() {
    info_.name = "exponential";
    info_.convexity = Convexity::Convex;
    info_.beta = 1.0;
  }
  std::size_t dim() const override { return 1; }
  double value(std::span<const double> x) const override {
    require_dim(x, 1);
    return std::exp(x[0]);
  }
  Vec gradient(std::span<const double> x) const override { return {value(x)}; }
  Vec hess_vec(std::span<const double> x, std::span<const double> v) const override {
    require_dim(v, 1);
    return {value(x) * v[0]};
  }
  std::optional<double> hessian_norm_bound(std::span<const double> x) const override { return value(x); }
};

}  // namespace

ObjectivePtr least_squares_objective(const SparseDataset& data, double gamma) {
  if (!(gamma >= 0.0)) throw InvalidInput("lsq: gamma must be nonnegative");
  return std::make_shared<LeastSquares>(data, gamma);
}

ObjectivePtr logistic_l2_objective(const SparseDataset& data, double gamma) {
  if (!(gamma >= 0.0)) throw InvalidInput("logistic: gamma must be nonnegative");
  return std::make_shared<Logistic>(data, gamma);
}

ObjectivePtr matrix_balancing_objective(std::vector<double> a, std::size_t n) {
  return std::make_shared<Balancing>(std::move(a), n);
}

ObjectivePtr quadratic_objective(std::vector<double> a, Vec b) {
  return std::make_shared<Quadratic>(std::move(a), std::move(b));
}

ObjectivePtr saddle_objective() { return std::make_shared<Polynomial2>("saddle", -0.5, 0.0, 1.0); }
ObjectivePtr quartic_objective() { return std::make_shared<Polynomial2>("quartic", -0.5, 0.25, 0.5); }
ObjectivePtr exponential_objective() { return std::make_shared<Exponential>(); }

ConcordanceEstimate concordance_beta_logistic(const SparseDataset& data, double gamma) {
  ConcordanceEstimate out;
  if (data.rows == 0 || data.cols == 0) throw InvalidInput("concordance: empty dataset");
  double sum_sq = 0.0, max_row = 0.0;
  for (std::size_t i = 0; i < data.rows; ++i) {
    const double r = data.row_norm_sq(i);
    sum_sq += r;
    max_row = std::max(max_row, std::sqrt(r));
  }
  const double m = static_cast<double>(data.rows);
  out.threshold_ok = gamma > 2.0 * sum_sq / m;

  LanczosOptions lo;
  lo.tol = 1e-10;
  const double nu = -lanczos_leftmost(negated(normal_equations_operator(data, 0.0)), lo).value;
  const double m_logit = 1.0 / (6.0 * std::sqrt(3.0));
  const double mu = gamma / nu;
  out.beta = max_row * m_logit / (2.0 * mu);
  return out;
}

double concordance_beta_balancing(double step_bound) {
  if (!(step_bound > 0.0)) throw InvalidInput("balancing: step bound must be positive");
  const double s = std::sqrt(2.0) * step_bound;
  return std::sqrt(2.0) * (std::exp(s) - 1.0 - s) / (s * s);
}

}  // namespace hsodm
