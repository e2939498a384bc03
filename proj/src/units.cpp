#include "snlab/units.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace snlab::units {

UnitSystem make_unit_system(double mass_kg, double hbar, double G) {
  if (!(mass_kg > 0.0) || !(hbar > 0.0) || !(G > 0.0)) {
    throw std::domain_error("make_unit_system: mass, hbar and G must be positive");
  }
  UnitSystem u;
  u.mass = mass_kg;
  u.hbar = hbar;
  u.G = G;
  u.a_G = hbar * hbar / (G * mass_kg * mass_kg * mass_kg);
  u.E_G = std::pow(mass_kg, 5) * G * G / (hbar * hbar);
  u.t_G = hbar / u.E_G;
  return u;
}

namespace {

double scale_for(Kind kind, const UnitSystem& u) {
  switch (kind) {
    case Kind::Length:
      return u.a_G;
    case Kind::Time:
      return u.t_G;
    case Kind::Energy:
      return u.E_G;
    case Kind::MassDensity:
      return u.mass / (u.a_G * u.a_G * u.a_G);
  }
  throw std::domain_error("unit conversion: unknown quantity kind");
}

}  // namespace

double to_dimensionless(double value, Kind kind, const UnitSystem& u) {
  return value / scale_for(kind, u);
}

double to_physical(double value, Kind kind, const UnitSystem& u) {
  return value * scale_for(kind, u);
}

double critical_mass(double radius_m, double hbar, double G) {
  if (!(radius_m > 0.0)) {
    throw std::domain_error("critical_mass: radius must be positive");
  }
  const double coefficient = equilibrium_width();  // (3/2) sqrt(2 pi), not the 3.76 rounding
  return std::cbrt(coefficient * hbar * hbar / (G * radius_m));
}

namespace {

// Radius of a uniform-density object: m[amu] / R^3 = n  =>  R = (m_amu/n)^{1/3}.
double density_radius(double mass_amu, double density_per_m3) {
  return std::cbrt(mass_amu / density_per_m3);
}

double critical_radius(double mass_kg) {
  const double h2 = codata::hbar * codata::hbar;
  return equilibrium_width() * h2 /
         (codata::gravitational_constant * mass_kg * mass_kg * mass_kg);
}

}  // namespace

MassRadiusDiagram mass_radius_diagram(double mass_min_amu, double mass_max_amu,
                                      int points, double density_per_m3) {
  if (!(density_per_m3 > 0.0)) {
    throw std::domain_error("mass_radius_diagram: density must be positive");
  }
  if (!(mass_min_amu > 0.0) || !(mass_max_amu > mass_min_amu) || points < 2) {
    throw std::domain_error("mass_radius_diagram: need 0 < mass_min < mass_max and >= 2 points");
  }

  MassRadiusDiagram out;
  out.rows.reserve(static_cast<std::size_t>(points));
  const double log_lo = std::log(mass_min_amu);
  const double log_hi = std::log(mass_max_amu);
  for (int i = 0; i < points; ++i) {
    const double m_amu =
        std::exp(log_lo + (log_hi - log_lo) * i / static_cast<double>(points - 1));
    out.rows.push_back({m_amu, critical_radius(m_amu * codata::atomic_mass_unit),
                        density_radius(m_amu, density_per_m3)});
  }

  // r_critical ~ m^-3 falls, r_density ~ m^{1/3} rises: exactly one crossing.
  // Bracket generously in log-mass (far beyond any physical density's root)
  // and bisect; slope of log(r_c/r_d) is -10/3, so a 1e-12 log-mass interval
  // leaves the radii equal to well under 1e-10 relative.
  auto log_ratio = [&](double log_m_amu) {
    const double m_amu = std::exp(log_m_amu);
    return std::log(critical_radius(m_amu * codata::atomic_mass_unit)) -
           std::log(density_radius(m_amu, density_per_m3));
  };
  double lo = std::log(1e-6), hi = std::log(1e30);
  if (!(log_ratio(lo) > 0.0) || !(log_ratio(hi) < 0.0)) {
    throw std::domain_error("mass_radius_diagram: no crossing in bracket (unphysical density?)");
  }
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (log_ratio(mid) > 0.0 ? lo : hi) = mid;
  }
  const double m_amu = std::exp(0.5 * (lo + hi));
  out.intersection_mass_amu = m_amu;
  out.intersection_radius_m = density_radius(m_amu, density_per_m3);
  return out;
}

}  // namespace snlab::units
