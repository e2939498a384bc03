#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "snlab/radial.hpp"

namespace snlab::radialpde {

// Uniformly sampled scalar observables of an evolution run.
struct ObservableSeries {
  std::vector<double> t;
  std::vector<double> norm;
  std::vector<double> rms;        // <r^2>^{1/2}
  std::vector<double> kinetic;    // K
  std::vector<double> potential;  // P = (1/2) int rho V
  std::vector<double> e_total;    // K + P (conserved)
  std::vector<double> e_eig;      // K + 2P (eigenvalue functional)

  std::span<const double> channel(std::string_view name) const;
  static const std::vector<std::string>& channel_names();
};

// One unitary Crank-Nicolson substep with a frozen potential:
//   (1 + i dt/2 H) u' = (1 - i dt/2 H) u,  H = -1/2 d^2/dr^2 + V
// with centred second differences and Dirichlet ghosts at both ends.
radial::RadialWavefunction crank_nicolson_linear_step(const radial::RadialWavefunction& psi,
                                                      const radial::RadialPotential& V,
                                                      double dt);

// Self-consistent step: predictor with V from |psi^n|^2, corrector with V
// recomputed from the time-centred density (|psi^n|^2 + |psi^*|^2)/2. Each
// substep is exactly unitary for its frozen V, so the norm is preserved to
// roundoff.
radial::RadialWavefunction crank_nicolson_step(const radial::RadialWavefunction& psi,
                                               double dt);

struct Snapshot {
  double t = 0.0;
  radial::RadialWavefunction psi;
  radial::RadialPotential potential;
};

struct EvolveOptions {
  int sample_every = 1;
  std::vector<double> snapshot_times;
  double boundary_density_tol = 1e-6;  // density threshold in the outer 10%
  double per_step_norm_tol = 1e-8;     // abort if one step drifts more than this
};

struct EvolveResult {
  ObservableSeries series;
  std::vector<Snapshot> snapshots;
  radial::RadialWavefunction final_state;
  bool boundary_contamination = false;
  double max_norm_drift = 0.0;  // max |norm - norm(0)| seen at samples
};

// Step failure inside evolve; carries everything sampled before the abort.
class EvolveError : public NumericalError {
 public:
  EvolveError(const std::string& what, EvolveResult partial)
      : NumericalError(what), partial(std::move(partial)) {}
  EvolveResult partial;
};

// Propagates psi0 to t_end, recording observables every sample_every steps
// (plus the initial sample) and wavefunction snapshots at the requested
// times. Sets boundary_contamination when the density anywhere beyond
// 0.9 r_max exceeds boundary_density_tol at a sample: reflections off the
// Dirichlet wall are then no longer negligible for core observables.
EvolveResult evolve(const radial::RadialWavefunction& psi0, double dt, double t_end,
                    EvolveOptions opts = {});

}  // namespace snlab::radialpde
