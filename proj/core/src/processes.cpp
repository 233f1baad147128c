#include "spindec/processes.hpp"

#include <cmath>
#include <stdexcept>

namespace spindec {

TelegraphProcess::TelegraphProcess(double tau, double amplitude, CounterRng& rng)
    : tau_(tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("TelegraphProcess: tau must be > 0");
  state_ = rng.uniform01() < 0.5 ? amplitude : -amplitude;
}

double TelegraphProcess::step(double dt, CounterRng& rng) {
  // flip probability reproducing exp(-dt/tau) correlation per step
  const double p = 0.5 * (1.0 - std::exp(-dt / tau_));
  if (rng.uniform01() < p) state_ = -state_;
  return state_;
}

OrnsteinUhlenbeck::OrnsteinUhlenbeck(double tau, double sigma, CounterRng& rng)
    : tau_(tau), sigma_(sigma) {
  if (!(tau > 0.0)) throw std::invalid_argument("OrnsteinUhlenbeck: tau must be > 0");
  state_ = sigma * rng.normal();
}

double OrnsteinUhlenbeck::step(double dt, CounterRng& rng) {
  const double a = std::exp(-dt / tau_);
  state_ = a * state_ + sigma_ * std::sqrt(1.0 - a * a) * rng.normal();
  return state_;
}

}  // namespace spindec
