#include "spindec/density_matrix.hpp"

#include <stdexcept>

namespace spindec {

DensityCheck check_density(const Matrix3cd& rho) {
  DensityCheck c;
  c.hermiticity_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  c.trace_error = std::abs(rho.trace() - complexd(1.0, 0.0));
  const Matrix3cd herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix3cd> es(herm, Eigen::EigenvaluesOnly);
  c.min_eigenvalue = es.eigenvalues().minCoeff();
  return c;
}

Matrix3cd density_from_populations(const Eigen::Vector3d& pops, double tol) {
  if (pops.minCoeff() < -tol || std::abs(pops.sum() - 1.0) > tol)
    throw std::invalid_argument(
        "density_from_populations: populations must be nonnegative and sum to 1");
  Matrix3cd rho = Matrix3cd::Zero();
  rho(0, 0) = pops(0);
  rho(1, 1) = pops(1);
  rho(2, 2) = pops(2);
  return rho;
}

Matrix3cd density_from_state(const Eigen::Vector3cd& psi) {
  const double n2 = psi.squaredNorm();
  if (!(n2 > 0.0)) throw std::invalid_argument("density_from_state: zero state");
  return (psi * psi.adjoint()) / n2;
}

}  // namespace spindec
