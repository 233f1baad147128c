#include <doctest.h>

#include <spindec/constants.hpp>
#include <spindec/density_matrix.hpp>
#include <spindec/geometry.hpp>
#include <spindec/rng.hpp>
#include <spindec/spin_center.hpp>

using namespace spindec;
namespace cst = constants;

namespace {
Eigen::Vector3d random_vec(CounterRng& rng, double scale) {
  return {scale * (rng.uniform01() - 0.5), scale * (rng.uniform01() - 0.5),
          scale * (rng.uniform01() - 0.5)};
}
}  // namespace

TEST_CASE("field hamiltonian: zero fields give the bare splitting") {
  const auto p = SpinCenterParams::nv();
  const Matrix3cd h =
      hamiltonian_matrix(p, Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero());
  const Matrix3cd expected =
      (Eigen::Matrix3d() << p.D / 3, 0, 0, 0, -2 * p.D / 3, 0, 0, 0, p.D / 3)
          .finished()
          .cast<complexd>();
  CHECK((h - expected).cwiseAbs().maxCoeff() < 1e-14 * p.D);
}

TEST_CASE("field hamiltonian: axial magnetic field splits the outer levels") {
  const auto p = SpinCenterParams::nv();
  const double Bz = 0.03;
  const Matrix3cd h =
      hamiltonian_matrix(p, Eigen::Vector3d::Zero(), {0.0, 0.0, Bz});
  CHECK(h(0, 0).real() == doctest::Approx(p.D / 3 + p.gamma_par * Bz).epsilon(1e-14));
  CHECK(h(1, 1).real() == doctest::Approx(-2 * p.D / 3).epsilon(1e-14));
  CHECK(h(2, 2).real() == doctest::Approx(p.D / 3 - p.gamma_par * Bz).epsilon(1e-14));
  CHECK(h(0, 1) == complexd(0.0, 0.0));
}

TEST_CASE("field hamiltonian: hermitian and traceless for random fields") {
  const auto p = SpinCenterParams::nv();
  CounterRng rng(11);
  for (int i = 0; i < 200; ++i) {
    const Eigen::Vector3d E = random_vec(rng, 1e6);
    const Eigen::Vector3d B = random_vec(rng, 0.2);
    const Matrix3cd h = hamiltonian_matrix(p, E, B);
    const double scale = h.cwiseAbs().maxCoeff();
    CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-14 * scale);
    CHECK(std::abs(h.trace()) < 1e-12 * scale);
  }
}

TEST_CASE("field hamiltonian: off-diagonal couplings carry the dipole constants") {
  SpinCenterParams p = SpinCenterParams::nv();
  const Eigen::Vector3d E(2.0e5, -1.0e5, 3.0e5);
  const Eigen::Vector3d B(0.01, 0.02, 0.0);
  const Matrix3cd h = hamiltonian_matrix(p, E, B);
  const complexd Ep(E.x(), E.y()), Bp(B.x(), B.y());
  const double r2 = std::numbers::sqrt2_v<double>;
  CHECK(std::abs(h(0, 2) - (-p.d_perp * Ep)) < 1e-9);
  CHECK(std::abs(h(0, 1) - (p.d_prime / r2 * std::conj(Ep) +
                            p.gamma_perp / r2 * std::conj(Bp))) < 1e-3);
  CHECK(std::abs(h(1, 2) - (-p.d_prime / r2 * std::conj(Ep) +
                            p.gamma_perp / r2 * std::conj(Bp))) < 1e-3);
}

TEST_CASE("transition frequencies: zero field degeneracy and affine slope") {
  const auto p = SpinCenterParams::nv();
  const auto f0 = transition_frequencies(p, 0.0);
  CHECK(f0.omega_p0 == doctest::Approx(cst::two_pi * p.D).epsilon(1e-15));
  CHECK(f0.omega_m0 == doctest::Approx(cst::two_pi * p.D).epsilon(1e-15));
  CHECK(f0.omega_pm == 0.0);

  // affine in Bz with slope +-2 pi gamma_par
  const double b1 = 0.013, b2 = 0.094;
  const auto fa = transition_frequencies(p, b1);
  const auto fb = transition_frequencies(p, b2);
  const double slope_p = (fb.omega_p0 - fa.omega_p0) / (b2 - b1);
  const double slope_m = (fb.omega_m0 - fa.omega_m0) / (b2 - b1);
  CHECK(slope_p == doctest::Approx(cst::two_pi * p.gamma_par).epsilon(1e-12));
  CHECK(slope_m == doctest::Approx(-cst::two_pi * p.gamma_par).epsilon(1e-12));
}

TEST_CASE("transition frequencies: lower gap closes at the crossing field") {
  const auto p = SpinCenterParams::nv();  // D = 2.94 GHz, gamma_par = 28 GHz/T
  CHECK(p.D == doctest::Approx(2.94e9).epsilon(1e-12));
  const auto f = transition_frequencies(p, 0.105);
  CHECK(std::abs(f.omega_m0) < 1e-3 * f.omega_p0);

  const auto f2 = transition_frequencies(p, 0.05);
  CHECK(f2.omega_m0 / cst::two_pi == doctest::Approx(1.54e9).epsilon(1e-12));
}

TEST_CASE("transition frequencies: pairwise identity") {
  const auto p = SpinCenterParams::nv();
  const auto f = transition_frequencies(p, 0.042);
  CHECK(f.omega_pm == doctest::Approx(f.omega_p0 - f.omega_m0).epsilon(1e-15));
  CHECK(f.omega_zero == 0.0);
}

TEST_CASE("parameter validation rejects bad signs") {
  SpinCenterParams p = SpinCenterParams::nv();
  CHECK_NOTHROW(validate(p));
  p.D = 0.0;
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
  p = SpinCenterParams::nv();
  p.d_perp = -1.0;
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
}

TEST_CASE("surface displacement: plain and quarter rotations") {
  const double z = 5e-9;
  const Eigen::Vector3d a = surface_to_defect_displacement({0.0}, 0.0, 0.0, z);
  CHECK(a.isApprox(Eigen::Vector3d(0, 0, z), 1e-15));

  const Eigen::Vector3d b =
      surface_to_defect_displacement({std::numbers::pi / 2}, 0.0, 0.0, z);
  CHECK(std::abs(b.x()) < 1e-24);
  CHECK(b.y() == doctest::Approx(-z).epsilon(1e-12));
  CHECK(std::abs(b.z()) < 1e-24);
}

TEST_CASE("surface displacement: norm preserved across tilt sweep") {
  const double xp = 3e-9, yp = -7e-9, z = 11e-9;
  const double n0 = Eigen::Vector3d(xp, yp, z).norm();
  for (int i = 0; i <= 32; ++i) {
    const double theta = std::numbers::pi * i / 32.0;
    const Eigen::Vector3d r = surface_to_defect_displacement({theta}, xp, yp, z);
    CHECK(r.norm() == doctest::Approx(n0).epsilon(1e-14));
  }
}

TEST_CASE("surface displacement rejects non-positive depth") {
  CHECK_THROWS_AS(surface_to_defect_displacement({0.0}, 0.0, 0.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(surface_to_defect_displacement({0.0}, 0.0, 0.0, -1e-9),
                  std::invalid_argument);
}

TEST_CASE("density matrix checks") {
  const Matrix3cd rho = density_from_populations({0.2, 0.3, 0.5});
  const DensityCheck c = check_density(rho);
  CHECK(c.ok(1e-14));
  CHECK(c.min_eigenvalue == doctest::Approx(0.2).epsilon(1e-12));

  CHECK_THROWS_AS(density_from_populations({0.5, 0.6, 0.2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(density_from_populations({-0.1, 0.6, 0.5}),
                  std::invalid_argument);

  Eigen::Vector3cd psi;
  psi << complexd(1, 0), complexd(0, 1), complexd(0, 0);
  const Matrix3cd pure = density_from_state(psi);
  CHECK(check_density(pure).ok(1e-14));
  CHECK(populations(pure).isApprox(Eigen::Vector3d(0.5, 0.5, 0.0), 1e-14));
}

TEST_CASE("vectorization round trip and index layout") {
  CounterRng rng(7);
  Matrix3cd m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = complexd(rng.uniform01(), rng.uniform01());
  CHECK(unvectorize(vectorize(m)).isApprox(m, 1e-15));
  CHECK(vec_index(0, 0) == 0);
  CHECK(vec_index(1, 1) == 4);
  CHECK(vec_index(2, 2) == 8);
  CHECK(vec_index(0, 1) == 1);
}
