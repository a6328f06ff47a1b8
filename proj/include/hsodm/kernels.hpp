#pragma once
// Dense vector kernels used by every Krylov loop.
//
// Two implementations exist: a portable scalar reference and an AVX2/FMA
// variant. The variant is chosen once per process from CPUID; setting
// HSODM_KERNELS=scalar in the environment forces the reference path.

#include <cstddef>
#include <span>
#include <string_view>

namespace hsodm::kernels {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  Isa isa;
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // y = a * x + b * y
  void (*axpby)(double a, const double* x, double b, double* y, std::size_t n);
  void (*scal)(double a, double* x, std::size_t n);
  double (*sumsq)(const double* x, std::size_t n);
  // y = A x for a row-major rows x cols matrix
  void (*gemv)(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
  // y = A^T x for a row-major rows x cols matrix (y has cols entries)
  void (*gemv_t)(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
  // sum_k val[k] * x[idx[k]]
  double (*sparse_dot)(const double* val, const int* idx, std::size_t nnz, const double* x);
};

const KernelTable& scalar_table();
// Returns nullptr when the variant was not compiled in.
const KernelTable* avx2_table();

// True when the CPU can run the AVX2/FMA table.
bool cpu_has_avx2_fma();
// The table selected for this process.
const KernelTable& active();
std::string_view isa_name(Isa isa);

// Span-level conveniences over active().
double dot(std::span<const double> x, std::span<const double> y);
double nrm2(std::span<const double> x);
void axpy(double a, std::span<const double> x, std::span<double> y);
void axpby(double a, std::span<const double> x, double b, std::span<double> y);
void scal(double a, std::span<double> x);

}  // namespace hsodm::kernels
