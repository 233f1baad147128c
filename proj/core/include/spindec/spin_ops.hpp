#pragma once

// Spin-1 operators in the triplet basis (|T+>, |T0>, |T->).
// Basis order +, 0, - is fixed project-wide; the vectorization of density
// matrices in liouville.hpp relies on it.

#include <Eigen/Dense>
#include <complex>

namespace spindec {

using Matrix3cd = Eigen::Matrix3cd;
using complexd = std::complex<double>;

namespace spin1 {

inline const Matrix3cd& sz() {
  static const Matrix3cd m = (Eigen::Matrix3d() <<
      1, 0, 0,
      0, 0, 0,
      0, 0, -1).finished().cast<complexd>();
  return m;
}

/// S+ : sqrt(2) on the (+,0) and (0,-) entries.
inline const Matrix3cd& sp() {
  static const Matrix3cd m = [] {
    Matrix3cd t = Matrix3cd::Zero();
    const double r2 = std::numbers::sqrt2_v<double>;
    t(0, 1) = r2;
    t(1, 2) = r2;
    return t;
  }();
  return m;
}

inline const Matrix3cd& sm() {
  static const Matrix3cd m = sp().adjoint();
  return m;
}

inline const Matrix3cd& sx() {
  static const Matrix3cd m = 0.5 * (sp() + sm());
  return m;
}

inline const Matrix3cd& sy() {
  static const Matrix3cd m = complexd(0, -0.5) * (sp() - sm());
  return m;
}

/// Sz^2 - (2/3) Id, the quadrupole-like splitting operator.
inline const Matrix3cd& sz2_shifted() {
  static const Matrix3cd m =
      sz() * sz() - (2.0 / 3.0) * Matrix3cd::Identity();
  return m;
}

}  // namespace spin1
}  // namespace spindec
