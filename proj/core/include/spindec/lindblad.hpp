#pragma once

// Dissipative generator of the qutrit: the eight jump operators, the 9x9
// generator over vectorized density matrices, the analytic relaxation
// eigenstructure and population solution, and the three subspace dephasing
// rates.

#include <array>

#include "spindec/density_matrix.hpp"
#include "spindec/rates.hpp"

namespace spindec {

/// The eight jump operators, ordered: longitudinal-E, the |T+>/|T-> pair
/// (raising, lowering), the |T+>/|T0> pair, the |T0>/|T-> pair,
/// longitudinal-B.
std::array<Matrix3cd, 8> lindblad_operators(const RateSet& r);

/// 3x3 generator of the population dynamics d/dt (rho++, rho00, rho--)^T.
/// Symmetric; columns sum to zero.
Eigen::Matrix3d population_generator(const RateSet& r);

/// Relaxation eigenstructure plus (optionally) initial-condition mode
/// coefficients:
///   rho_diag(t) = stationary + c2 v+ e^{l+ t} + c3 v- e^{l- t}.
/// In the generic case (all decay rates distinct from zero) the stationary
/// part is c1*(1,1,1) with c1 = 1/3; when the zero eigenvalue is degenerate
/// (e.g. Omega = 0) the stationary part keeps the extra conserved weight.
struct PopulationSolution {
  double lambda_plus = 0.0;   ///< most negative generator eigenvalue [1/s]
  double lambda_minus = 0.0;  ///< second nonzero eigenvalue, |l-| <= |l+|
  Eigen::Vector3d mode_plus = Eigen::Vector3d::Zero();
  Eigen::Vector3d mode_minus = Eigen::Vector3d::Zero();
  Eigen::Vector3d stationary = Eigen::Vector3d::Constant(1.0 / 3.0);
  double c2 = 0.0;  ///< bound to an initial condition by solve_population_modes
  double c3 = 0.0;

  double c1() const { return stationary.mean(); }
  double inv_T1_plus() const { return -lambda_plus; }
  double inv_T1_minus() const { return -lambda_minus; }

  Eigen::Vector3d at(double t) const;
};

/// Eigen-structure of the population generator: eigenvectors from its
/// symmetric eigendecomposition, eigenvalues from the cancellation-free
/// trace/minor reduction of the same matrix (exact algebraic identities, so
/// the decay rates keep full relative precision at any rate separation).
PopulationSolution relaxation_rates(const RateSet& r);

/// Algebraic route kept as a cross-check of relaxation_rates:
/// 1/T1+- = (g + O+ + O-) +- sqrt(g^2 - g(O+ + O-) - O+O- + O+^2 + O-^2).
std::pair<double, double> relaxation_rates_closed_form(const RateSet& r);

/// Bind c2, c3 to a diagonal initial condition (populations rho0, sum 1).
PopulationSolution solve_population_modes(const RateSet& r,
                                          const Eigen::Vector3d& rho0);

/// Tri-exponential populations (rho++, rho00, rho--) on a time grid.
/// Column k is the population vector at t_grid[k].
Eigen::Matrix3Xd population_dynamics(const RateSet& r, const Eigen::Vector3d& rho0,
                                     const std::vector<double>& t_grid);

/// Overload checking that rho0 is diagonal (off-diagonals below tol).
Eigen::Matrix3Xd population_dynamics(const RateSet& r, const Matrix3cd& rho0,
                                     const std::vector<double>& t_grid,
                                     double tol = 1e-12);

/// Subspace dephasing rates 1/T2 [1/s]; times() maps zeros to +infinity.
struct DephasingTimes {
  double inv_T2_0p = 0.0;  ///< |T0>,|T+> coherence decay rate
  double inv_T2_0m = 0.0;  ///< |T0>,|T-> coherence decay rate
  double inv_T2_mp = 0.0;  ///< |T->,|T+> coherence decay rate

  double T2_0p() const;
  double T2_0m() const;
  double T2_mp() const;
};

DephasingTimes dephasing_rates(const RateSet& r);

/// 9x9 real generator acting on row-major vectorized rho (basis +,0,-):
/// the population block on indices {0,4,8} plus a diagonal dephasing block.
struct Liouvillian9 {
  Matrix9d matrix = Matrix9d::Zero();

  Vector9cd apply(const Vector9cd& v) const {
    Vector9cd out;
    out.real() = matrix * v.real();
    out.imag() = matrix * v.imag();
    return out;
  }
  Matrix3cd apply_density(const Matrix3cd& rho) const {
    return unvectorize(apply(vectorize(rho)));
  }
};

Liouvillian9 build_liouvillian(const RateSet& r);

/// Same generator assembled the long way, as sum_k [L rho L^dag
/// - {L^dag L, rho}/2] applied to the matrix-unit basis.  Used to cross-check
/// build_liouvillian; kept independent of it.
Matrix9d liouvillian_from_operators(const std::array<Matrix3cd, 8>& ops);

}  // namespace spindec
