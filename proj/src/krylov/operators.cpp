#include <cmath>
#include <numbers>

#include "hsodm/errors.hpp"
#include "hsodm/krylov.hpp"

namespace hsodm {

SymmetricOperator hilbert_operator(std::size_t n, double shift) {
  if (n == 0) throw InvalidInput("hilbert: n must be positive");
  if (!(shift >= 0.0)) throw InvalidInput("hilbert: shift must be nonnegative");
  auto table = std::make_shared<std::vector<double>>(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) (*table)[i * n + j] = 1.0 / static_cast<double>(i + j + 1);
  return SymmetricOperator(
      n,
      [table, n, shift](std::span<const double> x, std::span<double> y) {
        kernels::active().gemv(table->data(), n, n, x.data(), y.data());
        if (shift != 0.0) kernels::axpy(shift, x, y);
      },
      std::numbers::pi + shift);
}

SymmetricOperator normal_equations_operator(const SparseDataset& data, double gamma) {
  if (!(gamma >= 0.0)) throw InvalidInput("normal equations: gamma must be nonnegative");
  if (data.rows == 0 || data.cols == 0) throw InvalidInput("normal equations: empty design matrix");
  auto shared = std::make_shared<const SparseDataset>(data);
  const double inv_n = 1.0 / static_cast<double>(data.rows);
  return SymmetricOperator(
      data.cols,
      [shared, inv_n, gamma](std::span<const double> x, std::span<double> y) {
        Vec u(shared->rows);
        shared->multiply(x, u);
        shared->multiply_transpose(u, y);
        kernels::axpby(gamma, x, inv_n, y);
      },
      data.frobenius_norm_sq() * inv_n + gamma);
}

SymmetricOperator dense_operator(std::vector<double> row_major, std::size_t n) {
  if (n == 0 || row_major.size() != n * n) throw InvalidInput("dense operator: expected n*n entries");
  double fro = 0.0;
  for (double v : row_major) fro += v * v;
  fro = std::sqrt(fro);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(row_major[i * n + j] - row_major[j * n + i]) > 1e-12 * std::max(1.0, fro))
        throw InvalidInput("dense operator: matrix is not symmetric");
  auto table = std::make_shared<const std::vector<double>>(std::move(row_major));
  return SymmetricOperator(
      n,
      [table, n](std::span<const double> x, std::span<double> y) {
        kernels::active().gemv(table->data(), n, n, x.data(), y.data());
      },
      fro);
}

SymmetricOperator diagonal_operator(std::vector<double> diag) {
  if (diag.empty()) throw InvalidInput("diagonal operator: empty diagonal");
  double bound = 0.0;
  for (double v : diag) bound = std::max(bound, std::abs(v));
  auto d = std::make_shared<const std::vector<double>>(std::move(diag));
  return SymmetricOperator(
      d->size(),
      [d](std::span<const double> x, std::span<double> y) {
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = (*d)[i] * x[i];
      },
      bound);
}

SymmetricOperator negated(const SymmetricOperator& op) {
  return SymmetricOperator(
      op.dim(),
      [op](std::span<const double> x, std::span<double> y) {
        op.apply(x, y);
        kernels::scal(-1.0, y);
      },
      op.norm_hint());
}

SymmetricOperator shifted(const SymmetricOperator& op, double shift) {
  std::optional<double> hint;
  if (op.norm_hint()) hint = *op.norm_hint() + std::abs(shift);
  return SymmetricOperator(
      op.dim(),
      [op, shift](std::span<const double> x, std::span<double> y) {
        op.apply(x, y);
        kernels::axpy(shift, x, y);
      },
      hint);
}

std::vector<double> to_dense(const SymmetricOperator& op) {
  const std::size_t n = op.dim();
  std::vector<double> out(n * n);
  Vec e(n, 0.0), col(n);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    op.apply(e, col);
    e[j] = 0.0;
    for (std::size_t i = 0; i < n; ++i) out[i * n + j] = col[i];
  }
  return out;
}

}  // namespace hsodm
