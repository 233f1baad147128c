#include "spindec/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spindec {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(seed + kGamma) ^ mix64(mix64(stream) + 0x632BE59BD9B4E019ull)) {}

CounterRng::result_type CounterRng::operator()() {
  return mix64(key_ + (++counter_) * kGamma);
}

double CounterRng::uniform01() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double CounterRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Box-Muller; u clamped away from 0.
  double u = uniform01();
  if (u <= 0.0) u = 0x1.0p-53;
  const double v = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u));
  const double phi = 2.0 * std::numbers::pi_v<double> * v;
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

double CounterRng::exponential(double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("exponential: rate must be > 0");
  double u = uniform01();
  if (u <= 0.0) u = 0x1.0p-53;
  return -std::log(u) / rate;
}

std::uint64_t CounterRng::poisson(double mean) {
  if (mean < 0.0 || !std::isfinite(mean))
    throw std::invalid_argument("poisson: mean must be finite and >= 0");
  // Sums of independent Poisson draws are Poisson, so large means split
  // exactly in half until Knuth's product method is cheap.
  std::uint64_t total = 0;
  while (mean > 64.0) {
    const double half = 0.5 * mean;
    total += poisson(half);
    mean -= half;
  }
  const double limit = std::exp(-mean);
  std::uint64_t k = 0;
  double prod = uniform01();
  while (prod > limit) {
    ++k;
    prod *= uniform01();
  }
  return total + k;
}

}  // namespace spindec
