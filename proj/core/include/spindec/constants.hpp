#pragma once

// Central table of physical constants (CODATA 2018, SI units).
// Every formula in the library pulls its constants from here so unit
// conventions live in exactly one place.

#include <numbers>

namespace spindec::constants {

inline constexpr double pi = std::numbers::pi_v<double>;
inline constexpr double two_pi = 2.0 * pi;

/// e — elementary charge [C]
inline constexpr double elementary_charge = 1.602176634e-19;
/// eps0 — vacuum permittivity [F/m]
inline constexpr double vacuum_permittivity = 8.8541878128e-12;
/// mu0 — vacuum permeability [N/A^2]
inline constexpr double vacuum_permeability = 1.25663706212e-6;
/// h — Planck constant [J s]
inline constexpr double planck = 6.62607015e-34;
/// hbar — reduced Planck constant [J s]
inline constexpr double hbar = planck / two_pi;
/// k_B — Boltzmann constant [J/K]
inline constexpr double boltzmann = 1.380649e-23;
/// mu_B — Bohr magneton [J/T]
inline constexpr double bohr_magneton = 9.2740100783e-24;
/// g_e — free electron g factor (magnitude)
inline constexpr double g_electron = 2.00231930436256;
/// m_e — electron mass [kg]
inline constexpr double electron_mass = 9.1093837015e-31;

/// Magnetic moment carried by a spin-1/2 particle of gyromagnetic ratio
/// gamma [Hz/T]: |mu| = h*gamma/2 [J/T].  The factor h (not hbar) pairs with
/// gyromagnetic ratios quoted in Hz/T, e.g. 28 GHz/T -> ~1 Bohr magneton.
inline constexpr double moment_from_gyromagnetic(double gamma_hz_per_t) {
  return 0.5 * planck * gamma_hz_per_t;
}

/// Absolute permittivity of a medium of relative permittivity eps_r [F/m].
inline constexpr double permittivity(double eps_r) {
  return eps_r * vacuum_permittivity;
}

}  // namespace spindec::constants
