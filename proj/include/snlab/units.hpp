#pragma once

#include <vector>

#include "snlab/constants.hpp"

namespace snlab::units {

// Gravitational analogue of atomic units for a particle of mass m:
//   a_G = hbar^2 / (G m^3)   (length, "gravitational Bohr radius")
//   E_G = m^5 G^2 / hbar^2   (energy, gravitational Hartree)
//   t_G = hbar / E_G         (time)
struct UnitSystem {
  double mass;  // kg
  double hbar;  // J s
  double G;     // m^3 kg^-1 s^-2
  double a_G;   // m
  double E_G;   // J
  double t_G;   // s
};

enum class Kind { Length, Time, Energy, MassDensity };

UnitSystem make_unit_system(double mass_kg, double hbar = codata::hbar,
                            double G = codata::gravitational_constant);

double to_dimensionless(double value, Kind kind, const UnitSystem& u);
double to_physical(double value, Kind kind, const UnitSystem& u);

// Mass at which a packet of physical size radius_m sits exactly at the
// stable equilibrium width: R m^3 = R1 hbar^2 / G, R1 = (3/2) sqrt(2 pi).
// Heavier objects of that size should contract under self-gravity.
double critical_mass(double radius_m, double hbar = codata::hbar,
                     double G = codata::gravitational_constant);

struct MassRadiusRow {
  double mass_amu;      // atomic mass units
  double r_critical_m;  // self-gravity threshold radius, decreasing with m
  double r_density_m;   // radius of a uniform object at fixed number density
};

struct MassRadiusDiagram {
  std::vector<MassRadiusRow> rows;
  double intersection_mass_amu = 0.0;
  double intersection_radius_m = 0.0;
};

// Log-spaced scan of both curves plus their unique crossing, located by
// bisection on log-mass to 1e-10 relative agreement of the two radii.
// density_per_m3 is the number density m[amu]/R^3 of the solid.
MassRadiusDiagram mass_radius_diagram(double mass_min_amu, double mass_max_amu,
                                      int points, double density_per_m3);

}  // namespace snlab::units
