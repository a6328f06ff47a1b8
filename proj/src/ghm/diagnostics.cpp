#include <Eigen/Eigenvalues>
#include <cmath>

#include "hsodm/errors.hpp"
#include "hsodm/ghm.hpp"

namespace hsodm {

HardCaseDiagnostics diagnostics(const GhmSpec& spec, bool dense_mode, const LanczosOptions& eig) {
  const std::size_t n = spec.hess.dim();
  if (spec.phi.size() != n) throw InvalidInput("diagnostics: phi length does not match the Hessian dimension");
  HardCaseDiagnostics out;

  if (!dense_mode) {
    EigResult lo = lanczos_leftmost(spec.hess, eig);
    EigResult hi = lanczos_leftmost(negated(spec.hess), eig);
    out.lambda1_H = lo.value;
    out.lambdad_H = -hi.value;
    out.projection_norm = std::abs(dot(lo.vector, spec.phi));
    out.leftmost_vector = std::move(lo.vector);
    return out;
  }

  if (n > 500) throw InvalidInput("diagnostics: dense mode is limited to n <= 500");
  const std::vector<double> dense = to_dense(spec.hess);
  Eigen::MatrixXd H = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      dense.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  H = 0.5 * (H + H.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  const Eigen::VectorXd& lam = es.eigenvalues();
  const Eigen::MatrixXd& U = es.eigenvectors();
  Eigen::Map<const Eigen::VectorXd> phi(spec.phi.data(), static_cast<Eigen::Index>(n));
  const Eigen::VectorXd coeff = U.transpose() * phi;

  const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
  const double tie = 1e-10 * scale;
  out.lambda1_H = lam[0];
  out.lambdad_H = lam[static_cast<Eigen::Index>(n) - 1];
  out.leftmost_vector.assign(U.col(0).data(), U.col(0).data() + n);

  double proj = 0.0, pinv_shifted = 0.0, pinv = 0.0;
  bool psd = lam[0] >= -tie;
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) {
    const double c2 = coeff[i] * coeff[i];
    if (lam[i] - lam[0] <= tie)
      proj += c2;
    else
      pinv_shifted += c2 / (lam[i] - lam[0]);
    if (std::abs(lam[i]) > tie) pinv += c2 / lam[i];
  }
  out.projection_norm = std::sqrt(proj);
  out.alpha_tilde1 = lam[0] + pinv_shifted;
  if (psd) out.convex_threshold = pinv;
  return out;
}

}  // namespace hsodm
