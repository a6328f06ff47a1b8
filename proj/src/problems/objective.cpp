#include <cmath>
#include <sstream>

#include "hsodm/errors.hpp"
#include "hsodm/problems.hpp"

namespace hsodm {

std::optional<double> Objective::hessian_norm_bound(std::span<const double>) const { return std::nullopt; }

std::optional<std::vector<double>> Objective::dense_hessian(std::span<const double> x) const {
  const std::size_t n = dim();
  if (n > 500) return std::nullopt;
  std::vector<double> out(n * n);
  Vec e(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1.0;
    const Vec col = hess_vec(x, e);
    e[j] = 0.0;
    for (std::size_t i = 0; i < n; ++i) out[i * n + j] = col[i];
  }
  return out;
}

SymmetricOperator Objective::hessian(std::span<const double> x) const {
  if (x.size() != dim()) throw InvalidInput("hessian: point has wrong dimension");
  auto point = std::make_shared<const Vec>(x.begin(), x.end());
  const Objective* self = this;
  return SymmetricOperator(
      dim(),
      [self, point](std::span<const double> v, std::span<double> y) {
        const Vec hv = self->hess_vec(*point, v);
        std::copy(hv.begin(), hv.end(), y.begin());
      },
      hessian_norm_bound(x));
}

DerivativeReport check_derivatives(const Objective& obj, const std::vector<Vec>& points, double tol_g, double tol_h) {
  DerivativeReport rep;
  const std::size_t n = obj.dim();
  for (std::size_t p = 0; p < points.size(); ++p) {
    const Vec& x = points[p];
    const Vec g = obj.gradient(x);
    Vec fd(n), x2 = x;
    for (std::size_t i = 0; i < n; ++i) {
      const double h = 1e-5 * std::max(1.0, std::abs(x[i]));
      x2[i] = x[i] + h;
      const double fp = obj.value(x2);
      x2[i] = x[i] - h;
      const double fm = obj.value(x2);
      x2[i] = x[i];
      fd[i] = (fp - fm) / (2.0 * h);
    }
    const double gerr = norm(sub(fd, g)) / std::max(1.0, norm(g));
    rep.max_grad_error = std::max(rep.max_grad_error, gerr);
    if (!(gerr <= tol_g)) {
      std::ostringstream os;
      os << "gradient mismatch at point " << p << ": " << gerr;
      rep.failures.push_back(os.str());
    }

    // directional check of H v against differences of the gradient
    Vec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::sin(1.0 + static_cast<double>(i + 7 * p));
    kernels::scal(1.0 / norm(v), v);
    const double h = 1e-5 * std::max(1.0, norm(x));
    const Vec gp = obj.gradient(add_scaled(x, h, v));
    const Vec gm = obj.gradient(add_scaled(x, -h, v));
    Vec fdh = sub(gp, gm);
    kernels::scal(1.0 / (2.0 * h), fdh);
    const Vec hv = obj.hess_vec(x, v);
    const double herr = norm(sub(fdh, hv)) / std::max(1.0, norm(hv));
    rep.max_hess_error = std::max(rep.max_hess_error, herr);
    if (!(herr <= tol_h)) {
      std::ostringstream os;
      os << "hessian-vector mismatch at point " << p << ": " << herr;
      rep.failures.push_back(os.str());
    }
  }
  return rep;
}

}  // namespace hsodm
