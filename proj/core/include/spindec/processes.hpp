#pragma once

// Scalar stochastic processes with exponential autocorrelation: the two-state
// random telegraph and the Ornstein-Uhlenbeck process.  Both are advanced
// with exact discrete-time updates, so correlation functions hold on the
// sampling grid without discretization bias.

#include "spindec/rng.hpp"

namespace spindec {

/// Symmetric +-amplitude telegraph; <x(t)x(0)> = amplitude^2 exp(-t/tau).
class TelegraphProcess {
 public:
  TelegraphProcess(double tau, double amplitude, CounterRng& rng);

  double state() const { return state_; }
  double step(double dt, CounterRng& rng);

 private:
  double tau_;
  double state_;
};

/// Mean-zero OU process; <x(t)x(0)> = sigma^2 exp(-t/tau), stationary start.
class OrnsteinUhlenbeck {
 public:
  OrnsteinUhlenbeck(double tau, double sigma, CounterRng& rng);

  double state() const { return state_; }
  double step(double dt, CounterRng& rng);

 private:
  double tau_;
  double sigma_;
  double state_;
};

}  // namespace spindec
