#include "spindec/spin_center.hpp"

#include <cmath>
#include <stdexcept>

#include "spindec/constants.hpp"

namespace spindec {

SpinCenterParams SpinCenterParams::nv() {
  SpinCenterParams p;
  p.gamma_par = 28.0e9;
  p.gamma_perp = 28.0e9;
  p.D = p.gamma_par * 0.105;  // 2.94 GHz
  p.d_perp = 0.17;
  p.d_par = 0.35e-2;
  p.d_prime = p.d_perp / 2.0;
  return p;
}

void validate(const SpinCenterParams& p) {
  if (!(p.D > 0.0)) throw std::invalid_argument("SpinCenterParams: D must be > 0");
  if (p.gamma_par < 0.0 || p.gamma_perp < 0.0)
    throw std::invalid_argument("SpinCenterParams: gyromagnetic ratios must be >= 0");
  if (p.d_par < 0.0 || p.d_perp < 0.0 || p.d_prime < 0.0)
    throw std::invalid_argument("SpinCenterParams: dipole constants must be >= 0");
}

Matrix3cd hamiltonian_matrix(const SpinCenterParams& p,
                             const Eigen::Vector3d& E,
                             const Eigen::Vector3d& B) {
  const complexd Ep(E.x(), E.y());   // E+ = Ex + i Ey
  const complexd Em = std::conj(Ep);
  const complexd Bp(B.x(), B.y());
  const complexd Bm = std::conj(Bp);
  const double r2 = std::numbers::sqrt2_v<double>;

  Matrix3cd h;
  h(0, 0) = p.D / 3.0 + p.d_par * E.z() / 3.0 + p.gamma_par * B.z();
  h(1, 1) = -2.0 * p.D / 3.0 - 2.0 * p.d_par * E.z() / 3.0;
  h(2, 2) = p.D / 3.0 + p.d_par * E.z() / 3.0 - p.gamma_par * B.z();

  h(0, 1) = p.d_prime / r2 * Em + p.gamma_perp / r2 * Bm;
  h(0, 2) = -p.d_perp * Ep;
  h(1, 2) = -p.d_prime / r2 * Em + p.gamma_perp / r2 * Bm;

  h(1, 0) = std::conj(h(0, 1));
  h(2, 0) = std::conj(h(0, 2));
  h(2, 1) = std::conj(h(1, 2));
  return h;
}

TransitionFrequencies transition_frequencies(const SpinCenterParams& p, double Bz) {
  using constants::two_pi;
  TransitionFrequencies f;
  f.omega_plus = two_pi * (p.D + p.gamma_par * Bz);
  f.omega_minus = two_pi * (p.D - p.gamma_par * Bz);
  f.omega_zero = 0.0;
  f.omega_p0 = f.omega_plus - f.omega_zero;
  f.omega_m0 = f.omega_minus - f.omega_zero;
  f.omega_pm = f.omega_p0 - f.omega_m0;
  return f;
}

}  // namespace spindec
