#include "hsodm/kernels.hpp"

namespace hsodm::kernels {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpby_scalar(double a, const double* x, double b, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = a * x[i] + b * y[i];
}

void scal_scalar(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

double sumsq_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
  return s;
}

void gemv_scalar(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
  for (std::size_t i = 0; i < rows; ++i) y[i] = dot_scalar(a + i * cols, x, cols);
}

void gemv_t_scalar(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
  for (std::size_t j = 0; j < cols; ++j) y[j] = 0.0;
  for (std::size_t i = 0; i < rows; ++i) axpy_scalar(x[i], a + i * cols, y, cols);
}

double sparse_dot_scalar(const double* val, const int* idx, std::size_t nnz, const double* x) {
  double s = 0.0;
  for (std::size_t k = 0; k < nnz; ++k) s += val[k] * x[idx[k]];
  return s;
}

constexpr KernelTable kScalar{Isa::Scalar,  dot_scalar,  axpy_scalar,   axpby_scalar, scal_scalar,
                              sumsq_scalar, gemv_scalar, gemv_t_scalar, sparse_dot_scalar};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

}  // namespace hsodm::kernels
