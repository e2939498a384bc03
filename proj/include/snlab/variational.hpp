#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "snlab/constants.hpp"
#include "snlab/errors.hpp"

namespace snlab::variational {

// Point of the reduced width model: size R of a Gaussian density profile and
// its rate of change, evolving as d^2R/dt^2 = 1/R^3 - C/R^2.
struct VariationalState {
  double R = 0.0;
  double Rdot = 0.0;
  double t = 0.0;
};

struct VariationalTrajectory {
  std::vector<VariationalState> states;  // uniform spacing dt, times increasing
  double dt = 0.0;                       // recording interval
  // Max energy excursion |E(t) - E(0)| over the run, relative to
  // max(|E(0)|, 1/(2 R(0)^2) + C/R(0)). The fallback scale keeps the measure
  // meaningful for zero-energy initial conditions.
  double energy_drift = 0.0;
};

struct ModelConstants {
  double C;      // 2/(3 sqrt(2 pi))
  double R0;     // 1/(2C): zero of the pseudo-potential
  double R1;     // 2 R0: its minimum
  double Omega;  // 2/(9 pi): linear oscillation frequency about R1
};

ModelConstants model_constants();

// U(R) = 1/(2R^2) - C/R. Repulsive dispersion term plus attractive self-gravity.
double pseudo_potential(double R);

// L(R, Rdot) = Rdot^2/2 - U(R).
double lagrangian(double R, double Rdot);

// d^2R/dt^2 = 1/R^3 - C/R^2 = -U'(R).
double eom_acceleration(double R);

// Conserved energy Rdot^2/2 + U(R).
double total_energy(double R, double Rdot);

// (R0, R1).
std::pair<double, double> equilibria();

// sqrt(3/R1^4 - 2C/R1^3); equals 2/(9 pi) in closed form.
double linear_frequency();

enum class Regime { Expanding, Bound, Critical };

// Sign of the conserved energy at the initial condition: positive energy
// escapes to infinity, negative energy oscillates, zero is the marginal case.
Regime classify_regime(double R_init, double Rdot_init = 0.0, double eps = 1e-12);

struct IntegrateOptions {
  double r_floor = 1e-6;     // abort below this width (singular origin)
  double energy_tol = 1e-5;  // allowed relative energy drift (dt ~ 1e-2 scale;
                             // tighten together with dt, drift scales as dt^2)
  int record_stride = 1;     // store every record_stride-th step
};

class CollapseError : public NumericalError {
 public:
  CollapseError(const std::string& what, VariationalTrajectory partial)
      : NumericalError(what), partial(std::move(partial)) {}
  VariationalTrajectory partial;
};

// Fixed-step velocity-Verlet propagation of the width equation (symplectic
// and time-reversible, so the energy error stays bounded on bound orbits).
// Throws CollapseError if R falls to r_floor, StepSizeError if the energy
// drift exceeds energy_tol.
VariationalTrajectory integrate(VariationalState initial, double dt, double t_end,
                                IntegrateOptions opts = {});

class NotExpandingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExponentFit {
  double exponent = 0.0;
  double std_error = 0.0;
};

// Least-squares slope of log R against log t over the trailing
// window_fraction of the run. Requires the window to be monotone increasing
// (throws NotExpandingError otherwise) and to contain at least 50 samples.
ExponentFit fit_asymptotic_exponent(const VariationalTrajectory& traj,
                                    double window_fraction = 0.5);

// Energies of the unit-mass Gaussian profile of width R:
//   kinetic 3/(4R^2), potential -1/(sqrt(2 pi) R).
double gaussian_kinetic_energy(double R);
double gaussian_potential_energy(double R);

// Ground-state estimate K + 2P at R = R1, i.e. -1/(2 pi).
double variational_eigenvalue();

}  // namespace snlab::variational
