#pragma once

// Counter-based random generator: output i is a bijective 64-bit mix of
// key + i * gamma, with the key derived from (seed, stream).  Streams are
// statistically independent, so parallel workers draw from disjoint streams
// and results do not depend on scheduling.

#include <cstdint>

namespace spindec {

class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~std::uint64_t{0}; }

  result_type operator()();

  /// Uniform in [0, 1) with 53 significant bits.
  double uniform01();
  /// Standard normal (Box-Muller, one value cached).
  double normal();
  /// Exponential with the given rate.
  double exponential(double rate);
  /// Poisson-distributed count with the given mean (exact; mean halving plus
  /// Knuth's product method below 64).
  std::uint64_t poisson(double mean);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace spindec
