#include "spindec/mc_spin.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "spindec/constants.hpp"
#include "spindec/processes.hpp"
#include "spindec/rng.hpp"

namespace spindec {

namespace cst = constants;

Eigen::Vector3d OuFieldNoise::electric_spectrum(double omega) const {
  const double u = omega * tau_E;
  const double shape = tau_E > 0.0 ? 2.0 * tau_E / (1.0 + u * u) : 0.0;
  return sigma_E.cwiseAbs2() * shape;
}

Eigen::Vector3d OuFieldNoise::magnetic_spectrum(double omega) const {
  const double u = omega * tau_B;
  const double shape = tau_B > 0.0 ? 2.0 * tau_B / (1.0 + u * u) : 0.0;
  return sigma_B.cwiseAbs2() * shape;
}

namespace {

struct CouplingBasis {
  Matrix3cd h0;           // static part, Hz
  Matrix3cd he[3];        // dH/dE_axis
  Matrix3cd hb[3];        // dH/dB_axis
};

CouplingBasis make_basis(const SpinCenterParams& p, double Bz) {
  CouplingBasis cb;
  const Eigen::Vector3d zero = Eigen::Vector3d::Zero();
  cb.h0 = hamiltonian_matrix(p, zero, {0.0, 0.0, Bz});
  for (int a = 0; a < 3; ++a) {
    Eigen::Vector3d e = zero, b = zero;
    e(a) = 1.0;
    b(a) = 1.0;
    cb.he[a] = hamiltonian_matrix(p, e, {0.0, 0.0, Bz}) - cb.h0;
    cb.hb[a] = hamiltonian_matrix(p, zero, Eigen::Vector3d(0.0, 0.0, Bz) + b) - cb.h0;
  }
  return cb;
}

// d rho / dt = -i 2 pi [H/h, rho]   (H in Hz)
Matrix3cd von_neumann_rhs(const Matrix3cd& h, const Matrix3cd& rho) {
  const Matrix3cd comm = h * rho - rho * h;
  return complexd(0.0, -cst::two_pi) * comm;
}

struct AxisProcess {
  int axis;
  bool magnetic;
  OrnsteinUhlenbeck ou;
};

// One realization: fixed-step RK4 with the OU fields sampled on half steps.
void run_realization(const StochasticRunConfig& cfg, const CouplingBasis& cb,
                     const Matrix3cd& rho0, const std::vector<double>& t_grid,
                     std::uint64_t stream, Matrix3cd* out) {
  CounterRng rng(cfg.seed, stream);
  std::vector<AxisProcess> procs;
  for (int a = 0; a < 3; ++a)
    if (cfg.noise.sigma_E(a) > 0.0)
      procs.push_back({a, false, OrnsteinUhlenbeck(cfg.noise.tau_E, cfg.noise.sigma_E(a), rng)});
  for (int a = 0; a < 3; ++a)
    if (cfg.noise.sigma_B(a) > 0.0)
      procs.push_back({a, true, OrnsteinUhlenbeck(cfg.noise.tau_B, cfg.noise.sigma_B(a), rng)});

  auto hamiltonian_at = [&](const std::vector<double>& vals) {
    Matrix3cd h = cb.h0;
    for (size_t i = 0; i < procs.size(); ++i)
      h += vals[i] * (procs[i].magnetic ? cb.hb[procs[i].axis] : cb.he[procs[i].axis]);
    return h;
  };

  std::vector<double> v0(procs.size()), vh(procs.size()), v1(procs.size());
  for (size_t i = 0; i < procs.size(); ++i) v1[i] = procs[i].ou.state();

  Matrix3cd rho = rho0;
  double t = t_grid.front();
  out[0] = rho;

  for (size_t g = 1; g < t_grid.size(); ++g) {
    const double span = t_grid[g] - t;
    const long n = std::max<long>(1, static_cast<long>(std::ceil(span / cfg.dt)));
    const double dt = span / static_cast<double>(n);
    for (long s = 0; s < n; ++s) {
      v0 = v1;
      for (size_t i = 0; i < procs.size(); ++i) vh[i] = procs[i].ou.step(0.5 * dt, rng);
      for (size_t i = 0; i < procs.size(); ++i) v1[i] = procs[i].ou.step(0.5 * dt, rng);

      const Matrix3cd h_a = hamiltonian_at(v0);
      const Matrix3cd h_m = hamiltonian_at(vh);
      const Matrix3cd h_b = hamiltonian_at(v1);

      const Matrix3cd k1 = von_neumann_rhs(h_a, rho);
      const Matrix3cd k2 = von_neumann_rhs(h_m, rho + 0.5 * dt * k1);
      const Matrix3cd k3 = von_neumann_rhs(h_m, rho + 0.5 * dt * k2);
      const Matrix3cd k4 = von_neumann_rhs(h_b, rho + dt * k3);
      rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    t = t_grid[g];
    out[g] = rho;
  }
}

}  // namespace

StochasticAverage stochastic_average_evolution(const StochasticRunConfig& cfg,
                                               const Matrix3cd& rho0,
                                               const std::vector<double>& t_grid) {
  if (cfg.realizations < 10)
    throw std::invalid_argument(
        "stochastic_average_evolution: need at least 10 realizations");
  if (!(cfg.dt > 0.0))
    throw std::invalid_argument("stochastic_average_evolution: dt must be > 0");
  if (t_grid.size() < 2)
    throw std::invalid_argument("stochastic_average_evolution: need >= 2 grid points");
  for (size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      throw std::invalid_argument("stochastic_average_evolution: grid must increase");

  const CouplingBasis cb = make_basis(cfg.params, cfg.Bz);
  const size_t M = static_cast<size_t>(cfg.realizations);
  const size_t T = t_grid.size();

  // every realization writes a disjoint slice; the reduction below is
  // sequential, so the result is identical for any thread count
  std::vector<Matrix3cd> buffer(M * T);
  const int n_threads = std::max(1, cfg.threads);
  {
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (int w = 0; w < n_threads; ++w) {
      pool.emplace_back([&]() {
        for (;;) {
          const size_t m = next.fetch_add(1);
          if (m >= M) return;
          run_realization(cfg, cb, rho0, t_grid, m, &buffer[m * T]);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  StochasticAverage avg;
  avg.t = t_grid;
  avg.rho_mean.assign(T, Matrix3cd::Zero());
  avg.pop_sem.assign(T, Eigen::Vector3d::Zero());
  avg.coh_p0_abs.assign(T, 0.0);
  avg.coh_p0_sem.assign(T, 0.0);

  for (size_t m = 0; m < M; ++m)
    for (size_t g = 0; g < T; ++g) avg.rho_mean[g] += buffer[m * T + g];
  for (auto& r : avg.rho_mean) r /= static_cast<double>(M);

  for (size_t g = 0; g < T; ++g) {
    Eigen::Vector3d var = Eigen::Vector3d::Zero();
    const complexd mean_coh = avg.rho_mean[g](0, 1);
    double var_coh = 0.0;
    for (size_t m = 0; m < M; ++m) {
      const Matrix3cd& r = buffer[m * T + g];
      const Eigen::Vector3d dp = populations(r) - populations(avg.rho_mean[g]);
      var += dp.cwiseAbs2();
      var_coh += std::norm(r(0, 1) - mean_coh);
    }
    avg.pop_sem[g] = (var / static_cast<double>(M * (M - 1))).cwiseSqrt();
    avg.coh_p0_abs[g] = std::abs(mean_coh);
    // SEM of the complex mean, as a bound for the SEM of its magnitude
    avg.coh_p0_sem[g] = std::sqrt(var_coh / static_cast<double>(M * (M - 1)));
  }
  return avg;
}

}  // namespace spindec
