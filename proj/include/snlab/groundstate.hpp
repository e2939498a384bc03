#pragma once

#include <optional>

#include "snlab/radial.hpp"

namespace snlab::groundstate {

struct GroundStateResult {
  radial::RadialWavefunction psi;  // real, nodeless
  radial::RadialPotential V;       // self-consistent with |psi|^2
  double E0 = 0.0;                 // eigenvalue K + 2P
  double E_total = 0.0;            // conserved energy K + P
  double K = 0.0;
  double P = 0.0;
  int iterations = 0;
  double residual = 0.0;  // |dE0| at the last iteration
};

struct GroundStateOptions {
  double tol = 1e-10;   // eigenvalue change per iteration
  int max_iter = 20000;
  double dtau = 0.1;    // imaginary-time step; halved whenever E_total rises
  std::optional<double> initial_R;  // Gaussian seed width, default R1
};

// Imaginary-time relaxation with the self-consistent potential refreshed
// every step: real Crank-Nicolson solves, renormalization after each step.
// E_total = K + P is the Lyapunov functional of this flow and must be
// non-increasing; the step is halved if it rises.
GroundStateResult solve_ground_state(const radial::RadialGrid& grid,
                                     GroundStateOptions opts = {});

// K + 2P: expectation of the single-particle Hamiltonian whose potential V
// is sourced by |psi|^2 itself.
double eigenvalue(const radial::RadialWavefunction& psi, const radial::RadialPotential& V);

// K + P: the conserved total energy (interaction counted once).
double total_energy(const radial::RadialWavefunction& psi, const radial::RadialPotential& V);

}  // namespace snlab::groundstate
