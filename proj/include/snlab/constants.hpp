#pragma once

#include <cmath>
#include <numbers>

namespace snlab {

// CODATA 2018 literals, SI units. Kept in one place so every consumer
// (unit conversions, mass-radius tables, tests) agrees bit-for-bit.
namespace codata {
inline constexpr double hbar = 1.054571817e-34;                // J s
inline constexpr double gravitational_constant = 6.67430e-11;  // m^3 kg^-1 s^-2
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
}  // namespace codata

// Closed forms for the Gaussian-width model of a self-gravitating packet.
// The width R(t) moves in the pseudo-potential U(R) = 1/(2R^2) - C/R with
// coupling C = 2/(3 sqrt(2 pi)). U crosses zero at R0 = 1/(2C) and has its
// single minimum at R1 = 2 R0; small oscillations about R1 have angular
// frequency Omega = sqrt(3/R1^4 - 2C/R1^3) = 2/(9 pi).
inline double width_coupling() {
  return 2.0 / (3.0 * std::sqrt(2.0 * std::numbers::pi));
}

inline double zero_energy_width() {
  return 0.75 * std::sqrt(2.0 * std::numbers::pi);  // R0 = 1/(2C)
}

inline double equilibrium_width() {
  return 1.5 * std::sqrt(2.0 * std::numbers::pi);  // R1 = 2 R0
}

inline double breathing_frequency() {
  return 2.0 / (9.0 * std::numbers::pi);  // Omega
}

}  // namespace snlab
