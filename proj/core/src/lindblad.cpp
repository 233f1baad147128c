#include "spindec/lindblad.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spindec {

std::array<Matrix3cd, 8> lindblad_operators(const RateSet& r) {
  validate(r);
  using namespace spin1;
  const Matrix3cd sp2 = sp() * sp();
  const Matrix3cd sm2 = sm() * sm();

  std::array<Matrix3cd, 8> ops;
  ops[0] = std::sqrt(r.gamma_dpar_0) * sz2_shifted();
  ops[1] = 0.5 * std::sqrt(r.gamma_dperp_pm) * sp2;
  ops[2] = 0.5 * std::sqrt(r.gamma_dperp_pm) * sm2;
  ops[3] = 0.5 * std::sqrt(r.gamma_gd_p0()) * (sz() * sp());
  ops[4] = 0.5 * std::sqrt(r.gamma_gd_p0()) * (sm() * sz());
  ops[5] = 0.5 * std::sqrt(r.gamma_gd_m0()) * (sp() * sz());
  ops[6] = 0.5 * std::sqrt(r.gamma_gd_m0()) * (sz() * sm());
  ops[7] = std::sqrt(r.gamma_gpar_0) * sz();
  return ops;
}

Eigen::Matrix3d population_generator(const RateSet& r) {
  validate(r);
  const double op = r.omega_plus();
  const double om = r.omega_minus();
  const double g = r.gamma_small();
  Eigen::Matrix3d m;
  m << -op - g, op, g,
       op, -op - om, om,
       g, om, -om - g;
  return m;
}

Eigen::Vector3d PopulationSolution::at(double t) const {
  return stationary + c2 * std::exp(lambda_plus * t) * mode_plus +
         c3 * std::exp(lambda_minus * t) * mode_minus;
}

PopulationSolution relaxation_rates(const RateSet& r) {
  const Eigen::Matrix3d m = population_generator(r);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m);
  // eigenvectors come out ascending: (lambda_plus, lambda_minus, ~0)
  PopulationSolution sol;
  sol.mode_plus = es.eigenvectors().col(0);
  sol.mode_minus = es.eigenvectors().col(1);

  // Eigenvalues through the cancellation-free reduction of the same matrix.
  // The discriminant is a sum of squares and the eigenvalue product has only
  // positive terms, so both decay rates keep full relative precision even
  // when they differ by many orders of magnitude (the raw solver loses the
  // small one to rounding at scale |lambda_plus|).
  const double g = r.gamma_small();
  const double op = r.omega_plus();
  const double om = r.omega_minus();
  const double sum = g + op + om;
  const double disc = 0.5 * ((g - op) * (g - op) + (g - om) * (g - om) +
                             (op - om) * (op - om));
  const double fast = sum + std::sqrt(disc);
  const double product = 3.0 * (op * om + g * op + g * om);
  const double slow = fast > 0.0 ? product / fast : 0.0;
  sol.lambda_plus = -fast;
  sol.lambda_minus = -slow;
  return sol;
}

std::pair<double, double> relaxation_rates_closed_form(const RateSet& r) {
  const double op = r.omega_plus();
  const double om = r.omega_minus();
  const double g = r.gamma_small();
  const double s = g + op + om;
  const double rad = g * g - g * (op + om) - op * om + op * op + om * om;
  const double root = std::sqrt(std::max(rad, 0.0));
  return {s + root, s - root};
}

PopulationSolution solve_population_modes(const RateSet& r,
                                          const Eigen::Vector3d& rho0) {
  if (rho0.minCoeff() < -1e-9 || std::abs(rho0.sum() - 1.0) > 1e-9)
    throw std::invalid_argument(
        "solve_population_modes: populations must be nonnegative and sum to 1");
  PopulationSolution sol = relaxation_rates(r);
  // The generator is symmetric, so its eigenvectors are orthonormal and the
  // mode amplitudes project out of rho0 directly.  The remainder is the
  // conserved (stationary) part; generically it equals (1/3, 1/3, 1/3).
  sol.c2 = sol.mode_plus.dot(rho0);
  sol.c3 = sol.mode_minus.dot(rho0);
  sol.stationary = rho0 - sol.c2 * sol.mode_plus - sol.c3 * sol.mode_minus;
  return sol;
}

Eigen::Matrix3Xd population_dynamics(const RateSet& r, const Eigen::Vector3d& rho0,
                                     const std::vector<double>& t_grid) {
  const PopulationSolution sol = solve_population_modes(r, rho0);
  Eigen::Matrix3Xd out(3, static_cast<Eigen::Index>(t_grid.size()));
  for (Eigen::Index k = 0; k < out.cols(); ++k)
    out.col(k) = sol.at(t_grid[static_cast<size_t>(k)]);
  return out;
}

Eigen::Matrix3Xd population_dynamics(const RateSet& r, const Matrix3cd& rho0,
                                     const std::vector<double>& t_grid, double tol) {
  for (int mu = 0; mu < 3; ++mu)
    for (int nu = 0; nu < 3; ++nu)
      if (mu != nu && std::abs(rho0(mu, nu)) > tol)
        throw std::invalid_argument("population_dynamics: rho0 must be diagonal");
  return population_dynamics(r, populations(rho0), t_grid);
}

namespace {
double safe_inverse(double rate) {
  return rate > 0.0 ? 1.0 / rate : std::numeric_limits<double>::infinity();
}
}  // namespace

double DephasingTimes::T2_0p() const { return safe_inverse(inv_T2_0p); }
double DephasingTimes::T2_0m() const { return safe_inverse(inv_T2_0m); }
double DephasingTimes::T2_mp() const { return safe_inverse(inv_T2_mp); }

DephasingTimes dephasing_rates(const RateSet& r) {
  validate(r);
  DephasingTimes d;
  d.inv_T2_0p = 0.5 * (r.gamma_gpar_0 + r.gamma_gd_p0() + r.gamma_dperp_pm +
                       r.gamma_dpar_0) +
                0.25 * r.gamma_gd_m0();
  d.inv_T2_0m = 0.5 * (r.gamma_gpar_0 + r.gamma_gd_m0() + r.gamma_dperp_pm +
                       r.gamma_dpar_0) +
                0.25 * r.gamma_gd_p0();
  d.inv_T2_mp = 2.0 * r.gamma_gpar_0 + r.gamma_dperp_pm +
                0.25 * (r.gamma_gd_m0() + r.gamma_gd_p0());
  return d;
}

Liouvillian9 build_liouvillian(const RateSet& r) {
  Liouvillian9 l;
  const Eigen::Matrix3d pop = population_generator(r);
  const int pidx[3] = {vec_index(0, 0), vec_index(1, 1), vec_index(2, 2)};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) l.matrix(pidx[a], pidx[b]) = pop(a, b);

  const DephasingTimes d = dephasing_rates(r);
  l.matrix(vec_index(0, 1), vec_index(0, 1)) = -d.inv_T2_0p;
  l.matrix(vec_index(1, 0), vec_index(1, 0)) = -d.inv_T2_0p;
  l.matrix(vec_index(1, 2), vec_index(1, 2)) = -d.inv_T2_0m;
  l.matrix(vec_index(2, 1), vec_index(2, 1)) = -d.inv_T2_0m;
  l.matrix(vec_index(0, 2), vec_index(0, 2)) = -d.inv_T2_mp;
  l.matrix(vec_index(2, 0), vec_index(2, 0)) = -d.inv_T2_mp;
  return l;
}

Matrix9d liouvillian_from_operators(const std::array<Matrix3cd, 8>& ops) {
  Eigen::Matrix<complexd, 9, 9> super = Eigen::Matrix<complexd, 9, 9>::Zero();
  for (int mu = 0; mu < 3; ++mu) {
    for (int nu = 0; nu < 3; ++nu) {
      Matrix3cd basis = Matrix3cd::Zero();
      basis(mu, nu) = 1.0;
      Matrix3cd image = Matrix3cd::Zero();
      for (const auto& L : ops) {
        const Matrix3cd ldl = L.adjoint() * L;
        image += L * basis * L.adjoint() - 0.5 * (ldl * basis + basis * ldl);
      }
      super.col(vec_index(mu, nu)) = vectorize(image);
    }
  }
  if (super.imag().cwiseAbs().maxCoeff() > 1e-12 * (1.0 + super.real().cwiseAbs().maxCoeff()))
    throw std::runtime_error("liouvillian_from_operators: unexpected imaginary part");
  return super.real();
}

}  // namespace spindec
