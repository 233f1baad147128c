#include "spindec/integrator.hpp"

#include <cmath>
#include <stdexcept>

namespace spindec {

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640,
                 e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

double error_norm(const Vector9cd& err, const Vector9cd& y0, const Vector9cd& y1,
                  double abs_tol, double rel_tol) {
  double m = 0.0;
  for (int i = 0; i < 9; ++i) {
    const double scale =
        abs_tol + rel_tol * std::max(std::abs(y0(i)), std::abs(y1(i)));
    m = std::max(m, std::abs(err(i)) / scale);
  }
  return m;
}

// One adaptive segment [t0, t1]; y updated in place.
void integrate_adaptive(const Liouvillian9& gen, Vector9cd& y, double t0, double t1,
                        const StepControl& ctrl, long& steps) {
  double t = t0;
  double dt = (t1 - t0);
  Vector9cd k1 = gen.apply(y);  // FSAL
  while (t < t1) {
    dt = std::min(dt, t1 - t);
    if (!(dt > 0.0) || dt < 1e-15 * std::max(1.0, std::abs(t)))
      throw std::runtime_error("evolve_numeric: step size underflow");

    const Vector9cd k2 = gen.apply(y + dt * (a21 * k1));
    const Vector9cd k3 = gen.apply(y + dt * (a31 * k1 + a32 * k2));
    const Vector9cd k4 = gen.apply(y + dt * (a41 * k1 + a42 * k2 + a43 * k3));
    const Vector9cd k5 =
        gen.apply(y + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Vector9cd k6 = gen.apply(
        y + dt * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Vector9cd ynew =
        y + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Vector9cd k7 = gen.apply(ynew);
    const Vector9cd err =
        dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const double en = error_norm(err, y, ynew, ctrl.abs_tol, ctrl.rel_tol);
    if (en <= 1.0) {
      t += dt;
      y = ynew;
      k1 = k7;
    }
    const double factor =
        (en > 0.0) ? 0.9 * std::pow(en, -0.2) : 5.0;
    dt *= std::clamp(factor, 0.2, 5.0);
    if (++steps > ctrl.max_steps)
      throw std::runtime_error("evolve_numeric: step budget exhausted");
  }
}

void integrate_fixed(const Liouvillian9& gen, Vector9cd& y, double t0, double t1,
                     double dt_req, long& steps, long max_steps) {
  const double span = t1 - t0;
  const long n = std::max<long>(1, static_cast<long>(std::ceil(span / dt_req)));
  const double dt = span / static_cast<double>(n);
  for (long i = 0; i < n; ++i) {
    const Vector9cd k1 = gen.apply(y);
    const Vector9cd k2 = gen.apply(y + 0.5 * dt * k1);
    const Vector9cd k3 = gen.apply(y + 0.5 * dt * k2);
    const Vector9cd k4 = gen.apply(y + dt * k3);
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (++steps > max_steps)
      throw std::runtime_error("evolve_numeric: step budget exhausted");
  }
}

}  // namespace

Trajectory evolve_numeric(const Liouvillian9& gen, const Matrix3cd& rho0,
                          const std::vector<double>& t_grid,
                          const StepControl& ctrl) {
  if (t_grid.empty()) throw std::invalid_argument("evolve_numeric: empty time grid");
  for (size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      throw std::invalid_argument("evolve_numeric: t_grid must increase strictly");

  Trajectory traj;
  traj.t = t_grid;
  traj.rho.reserve(t_grid.size());

  Vector9cd y = vectorize(rho0);
  traj.rho.push_back(rho0);
  long steps = 0;
  for (size_t i = 1; i < t_grid.size(); ++i) {
    if (ctrl.fixed_step > 0.0)
      integrate_fixed(gen, y, t_grid[i - 1], t_grid[i], ctrl.fixed_step, steps,
                      ctrl.max_steps);
    else
      integrate_adaptive(gen, y, t_grid[i - 1], t_grid[i], ctrl, steps);
    traj.rho.push_back(unvectorize(y));
  }
  return traj;
}

Trajectory evolve_numeric(const RateSet& rates, const Matrix3cd& rho0,
                          const std::vector<double>& t_grid,
                          const StepControl& ctrl) {
  return evolve_numeric(build_liouvillian(rates), rho0, t_grid, ctrl);
}

}  // namespace spindec
