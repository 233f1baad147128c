#pragma once

// Adaptive Gauss-Kronrod quadrature (15-point rule, error from the embedded
// 7-point Gauss rule).  Scalar and 3-vector integrands; 2D integrals nest.

#include <Eigen/Dense>
#include <functional>

namespace spindec {

struct QuadratureOptions {
  double rel_tol = 1e-9;
  double abs_tol = 0.0;
  int max_intervals = 20000;
};

double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    const QuadratureOptions& opt = {});

Eigen::Vector3d integrate_gk3(const std::function<Eigen::Vector3d(double)>& f,
                              double a, double b, const QuadratureOptions& opt = {});

}  // namespace spindec
