#include <cmath>
#include <cstdlib>
#include <string>

#include "hsodm/kernels.hpp"

namespace hsodm::kernels {

#if defined(HSODM_HAVE_AVX2_KERNELS)
const KernelTable* avx2_table_impl();
#endif

const KernelTable* avx2_table() {
#if defined(HSODM_HAVE_AVX2_KERNELS)
  return avx2_table_impl();
#else
  return nullptr;
#endif
}

bool cpu_has_avx2_fma() {
#if defined(HSODM_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

const KernelTable& select() {
  if (const char* env = std::getenv("HSODM_KERNELS"); env != nullptr && std::string(env) == "scalar") {
    return scalar_table();
  }
  if (const KernelTable* t = avx2_table(); t != nullptr && cpu_has_avx2_fma()) return *t;
  return scalar_table();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

double dot(std::span<const double> x, std::span<const double> y) {
  return active().dot(x.data(), y.data(), x.size());
}

double nrm2(std::span<const double> x) { return std::sqrt(active().sumsq(x.data(), x.size())); }

void axpy(double a, std::span<const double> x, std::span<double> y) {
  active().axpy(a, x.data(), y.data(), x.size());
}

void axpby(double a, std::span<const double> x, double b, std::span<double> y) {
  active().axpby(a, x.data(), b, y.data(), x.size());
}

void scal(double a, std::span<double> x) { active().scal(a, x.data(), x.size()); }

}  // namespace hsodm::kernels
