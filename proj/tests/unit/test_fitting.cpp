#include <doctest.h>

#include <cmath>
#include <spindec/fitting.hpp>
#include <spindec/rng.hpp>
#include <spindec/sweeps.hpp>

using namespace spindec;

namespace {

DepthDataset synthetic(double amplitude, double exponent, int n_points,
                       double noise_frac, std::uint64_t seed) {
  CounterRng rng(seed);
  DepthDataset d;
  const auto zs = logspace(3e-9, 30e-9, n_points);
  for (double z : zs) {
    DepthPoint p;
    p.z = z;
    p.T2 = amplitude * std::pow(z, exponent);
    if (noise_frac > 0.0) p.T2 *= std::exp(noise_frac * rng.normal());
    d.points.push_back(p);
  }
  return d;
}

}  // namespace

TEST_CASE("free fit recovers a noiseless power law exactly") {
  const DepthDataset d = synthetic(2.5e26, 4.0, 20, 0.0, 1);
  const PowerLawFit f = fit_power_law(d);
  CHECK(f.exponent == doctest::Approx(4.0).epsilon(1e-6 / 4.0));
  CHECK(f.residual < 1e-10);
  CHECK(f.amplitude == doctest::Approx(2.5e26).epsilon(1e-6));
}

TEST_CASE("single point with a fixed exponent fits exactly") {
  DepthDataset d;
  d.points.push_back({10e-9, 50e-6, std::nullopt});
  const PowerLawFit f = fit_power_law(d, 2.0);
  CHECK(f.amplitude * std::pow(10e-9, 2.0) == doctest::Approx(50e-6).epsilon(1e-12));
  CHECK(f.residual < 1e-14);
}

TEST_CASE("noisy exponent recovery stays within the expected band") {
  // 5% lognormal noise, 20 points over a decade
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DepthDataset d = synthetic(1e26, 4.0, 20, 0.05, seed);
    const PowerLawFit f = fit_power_law(d);
    worst = std::max(worst, std::abs(f.exponent - 4.0));
  }
  CHECK(worst < 0.15);
}

TEST_CASE("fit validation and degenerate data") {
  DepthDataset two;
  two.points.push_back({5e-9, 1e-6, std::nullopt});
  two.points.push_back({9e-9, 2e-6, std::nullopt});
  CHECK_THROWS_AS(fit_power_law(two), std::invalid_argument);
  CHECK_NOTHROW(fit_power_law(two, 2.0));

  DepthDataset same;
  for (int i = 0; i < 5; ++i) same.points.push_back({5e-9, 1e-6 * (i + 1), std::nullopt});
  CHECK_THROWS_AS(fit_power_law(same), std::invalid_argument);

  DepthDataset bad;
  bad.points.push_back({-1e-9, 1e-6, std::nullopt});
  CHECK_THROWS_AS(fit_power_law(bad, 2.0), std::invalid_argument);
}

TEST_CASE("scale equivariance and residual ordering") {
  const DepthDataset d = synthetic(1e26, 4.0, 16, 0.08, 5);
  const PowerLawFit free_fit = fit_power_law(d);
  const PowerLawFit fixed_fit = fit_power_law(d, 4.0);
  CHECK(fixed_fit.residual >= free_fit.residual - 1e-15);

  const double s = 3.7;
  DepthDataset scaled = d;
  for (auto& p : scaled.points) p.z *= s;
  const PowerLawFit f2 = fit_power_law(scaled);
  CHECK(f2.exponent == doctest::Approx(free_fit.exponent).epsilon(1e-12));
  CHECK(f2.residual == doctest::Approx(free_fit.residual).epsilon(1e-9));
  CHECK(f2.amplitude ==
        doctest::Approx(free_fit.amplitude / std::pow(s, free_fit.exponent))
            .epsilon(1e-9));
}

TEST_CASE("model selection prefers the generating exponent") {
  const DepthDataset d2 = synthetic(1e10, 2.0, 20, 0.05, 11);
  const ModelSelection s2 = model_select(d2);
  CHECK(s2.preferred == 2);
  CHECK(s2.conclusive);

  const DepthDataset d4 = synthetic(1e26, 4.0, 20, 0.05, 13);
  const ModelSelection s4 = model_select(d4);
  CHECK(s4.preferred == 4);
  CHECK(s4.conclusive);

  // T2 rescaling leaves the selection untouched
  DepthDataset d4s = d4;
  for (auto& p : d4s.points) p.T2 *= 17.0;
  const ModelSelection s4s = model_select(d4s);
  CHECK(s4s.preferred == 4);
  CHECK(s4s.residual_2 == doctest::Approx(s4.residual_2).epsilon(1e-12));
  CHECK(s4s.residual_4 == doctest::Approx(s4.residual_4).epsilon(1e-12));
}

TEST_CASE("mixed-law data in a quartic-dominant range selects the quartic") {
  // 1/T2 = A/z^2 + B/z^4 with the quartic term dominant over the range
  DepthDataset d;
  for (double z : logspace(3e-9, 20e-9, 18)) {
    const double rate = 1e-8 / (z * z) + 1e-22 / (z * z * z * z);
    d.points.push_back({z, 1.0 / rate, std::nullopt});
  }
  const ModelSelection s = model_select(d);
  CHECK(s.preferred == 4);
  CHECK(s.ratio > 1.05);
}

TEST_CASE("tie band reports inconclusive") {
  // nearly scale-free data (n = 3) sits between the two candidates
  DepthDataset d;
  for (double z : logspace(5e-9, 15e-9, 12))
    d.points.push_back({z, 1e15 * std::pow(z, 3.0), std::nullopt});
  const ModelSelection s = model_select(d, 1e9);  // absurdly wide tie band
  CHECK_FALSE(s.conclusive);
}

TEST_CASE("optional constant-rate floor improves a floored dataset") {
  // floor comparable to the power-law term at the deep end, so it is
  // identifiable from the curvature
  const double rate0 = 2e4;
  DepthDataset d;
  for (double z : logspace(3e-9, 30e-9, 20)) {
    const double rate = rate0 + 1e-26 / std::pow(z, 4);
    d.points.push_back({z, 1.0 / rate, std::nullopt});
  }
  const PowerLawFit plain = fit_power_law(d, 4.0);
  double rate0_fit = 0.0;
  const PowerLawFit floored = fit_power_law_with_floor(d, 4.0, rate0_fit);
  CHECK(floored.residual < plain.residual);
  CHECK(rate0_fit == doctest::Approx(rate0).epsilon(0.05));
}

TEST_CASE("depth CSV parsing") {
  const std::string good = "z_nm,T2_us\n5,1.5\n10,6.0\n# comment\n20,24.0\n";
  const DepthDataset d = parse_depth_csv(good);
  REQUIRE(d.points.size() == 3);
  CHECK(d.points[0].z == doctest::Approx(5e-9));
  CHECK(d.points[0].T2 == doctest::Approx(1.5e-6));
  CHECK_FALSE(d.points[0].sigma.has_value());

  const std::string with_sigma = "z_nm,T2_us,sigma_us\n5,1.5,0.2\n10,6.0,0.5\n";
  const DepthDataset ds = parse_depth_csv(with_sigma);
  CHECK(ds.points[1].sigma.value() == doctest::Approx(0.5e-6));

  CHECK_THROWS_AS(parse_depth_csv("depth,T2\n1,2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_depth_csv("z_nm,T2_us\n1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_depth_csv("z_nm,T2_us\nfoo,bar\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_depth_csv(""), std::invalid_argument);
}
