#pragma once
// Small helpers over std::vector<double>. Anything inner-loop goes through
// kernels.hpp.

#include <cstddef>
#include <span>
#include <vector>

#include "hsodm/kernels.hpp"

namespace hsodm {

using Vec = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) { return kernels::dot(a, b); }
inline double norm(std::span<const double> a) { return kernels::nrm2(a); }

inline Vec scaled(std::span<const double> a, double s) {
  Vec r(a.begin(), a.end());
  kernels::scal(s, r);
  return r;
}

// a + s * b
inline Vec add_scaled(std::span<const double> a, double s, std::span<const double> b) {
  Vec r(a.begin(), a.end());
  kernels::axpy(s, b, r);
  return r;
}

inline Vec sub(std::span<const double> a, std::span<const double> b) { return add_scaled(a, -1.0, b); }

inline Vec unit(std::size_t n, std::size_t i) {
  Vec e(n, 0.0);
  e[i] = 1.0;
  return e;
}

}  // namespace hsodm
