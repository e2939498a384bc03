#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "snlab/errors.hpp"

namespace snlab::radial {

// Uniform mesh r_j = j dr, j = 1..n (origin excluded), r_max = n dr.
struct RadialGrid {
  int n = 0;
  double dr = 0.0;
  double r_max = 0.0;
  std::vector<double> r;

  bool compatible_with(const RadialGrid& other) const {
    return n == other.n && dr == other.dr;
  }
};

RadialGrid build_grid(double r_max, int n);

// Trapezoid quadrature of node samples f_j = f(r_j) over [0, r_max],
// taking f(0) = 0. This is the single quadrature convention used for norms,
// moments, energies and the Poisson integrals.
double integrate_radial(const RadialGrid& grid, std::span<const double> f);

// Reduced radial amplitude u_j ~ r_j * psi(r_j) with Dirichlet values
// u(0) = u(r_max + dr) = 0 implied. The norm is the rectangle sum
// 4 pi dr sum_j |u_j|^2: the discrete invariant the unitary propagator
// conserves exactly. Other functionals use the trapezoid rule; the two
// agree to the half end-cell, which carries no mass for admissible states.
struct RadialWavefunction {
  RadialGrid grid;
  std::vector<std::complex<double>> u;
  bool truncation_warning = false;  // grid too small for the requested profile

  double norm() const;
  void renormalize();
  std::vector<double> density() const;  // rho_j = |u_j|^2 / r_j^2
};

struct RadialPotential {
  RadialGrid grid;
  std::vector<double> V;
};

// Unit-norm Gaussian density profile of width R: psi = pi^{-3/4} R^{-3/2}
// exp(-r^2/(2R^2)). Sets truncation_warning when r_max < 6R.
RadialWavefunction gaussian_wavefunction(const RadialGrid& grid, double R);

// Newtonian potential of a spherical density via shell decomposition:
//   V(r) = -Q(r)/r - 4 pi int_r^{rmax} s rho(s) ds,
//   Q(r) =  4 pi int_0^r s^2 rho(s) ds,
// so V(r_max) = -Q(r_max)/r_max. Entries below -1e-14 are rejected.
RadialPotential solve_poisson(const RadialGrid& grid, std::span<const double> density);

// Same decomposition written directly against |u|^2 = r^2 rho (no division
// by r^2); used by the propagators.
void potential_from_u_squared(const RadialGrid& grid, std::span<const double> u_squared,
                              std::vector<double>& V_out);

// Observables (input is renormalized internally if its norm is off by more
// than 1e-8):
//   <r^2>^{1/2} with <r^2> = 4 pi int |u|^2 r^2 dr,
//   K = (1/2) 4 pi int |du/dr|^2 dr  (staggered differences, ghost zeros at
//       both ends; identical to <u, -1/2 D2 u> for the Dirichlet stencil),
//   P = (1/2) 4 pi int V |u|^2 dr.
double rms_radius(const RadialWavefunction& psi);
double kinetic_energy(const RadialWavefunction& psi);
double interaction_energy(const RadialWavefunction& psi, const RadialPotential& V);

// Probability mass carried by nodes with r > fraction * r_max.
double tail_mass(const RadialWavefunction& psi, double fraction);

// Width rescaling psi(r) -> lambda^{3/2} psi(lambda r) with lambda = 1/(1+delta),
// i.e. the profile widens by (1+delta). Cubic interpolation, then renormalized.
RadialWavefunction scale_width(const RadialWavefunction& psi, double delta);

// Multiplies u by 1 + amplitude * xi(r), where xi is a fixed-seed sum of a few
// long-wavelength sine modes; renormalized. Rough perturbation for robustness
// checks, as an alternative to the smooth width rescaling.
RadialWavefunction perturb_noise(const RadialWavefunction& psi, double amplitude,
                                 std::uint64_t seed);

}  // namespace snlab::radial
