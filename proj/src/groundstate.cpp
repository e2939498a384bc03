#include "snlab/groundstate.hpp"

#include <cmath>
#include <sstream>

#include "snlab/constants.hpp"

namespace snlab::groundstate {

using radial::RadialGrid;
using radial::RadialPotential;
using radial::RadialWavefunction;

double eigenvalue(const RadialWavefunction& psi, const RadialPotential& V) {
  if (!psi.grid.compatible_with(V.grid)) {
    throw std::domain_error("eigenvalue: wavefunction and potential grids differ");
  }
  return radial::kinetic_energy(psi) + 2.0 * radial::interaction_energy(psi, V);
}

double total_energy(const RadialWavefunction& psi, const RadialPotential& V) {
  if (!psi.grid.compatible_with(V.grid)) {
    throw std::domain_error("total_energy: wavefunction and potential grids differ");
  }
  return radial::kinetic_energy(psi) + radial::interaction_energy(psi, V);
}

namespace {

// Real tridiagonal Thomas solve of (1 + dtau/2 H[V]) u' = (1 - dtau/2 H[V]) u.
void imaginary_step(const RadialGrid& grid, const std::vector<double>& V, double dtau,
                    std::vector<double>& u, std::vector<double>& rhs,
                    std::vector<double>& cprime) {
  const std::size_t n = u.size();
  const double inv_dr2 = 1.0 / (grid.dr * grid.dr);
  const double off = -0.25 * dtau * inv_dr2;

  for (std::size_t j = 0; j < n; ++j) {
    double h = (inv_dr2 + V[j]) * u[j];
    if (j > 0) h -= 0.5 * inv_dr2 * u[j - 1];
    if (j + 1 < n) h -= 0.5 * inv_dr2 * u[j + 1];
    rhs[j] = u[j] - 0.5 * dtau * h;
  }

  double denom = 1.0 + 0.5 * dtau * (inv_dr2 + V[0]);
  cprime[0] = off / denom;
  u[0] = rhs[0] / denom;
  for (std::size_t j = 1; j < n; ++j) {
    denom = 1.0 + 0.5 * dtau * (inv_dr2 + V[j]) - off * cprime[j - 1];
    if (std::abs(denom) < 1e-300) throw NumericalError("imaginary_step: degenerate diagonal");
    cprime[j] = off / denom;
    u[j] = (rhs[j] - off * u[j - 1]) / denom;
  }
  for (std::size_t j = n - 1; j-- > 0;) {
    u[j] -= cprime[j] * u[j + 1];
  }
}

}  // namespace

GroundStateResult solve_ground_state(const RadialGrid& grid, GroundStateOptions opts) {
  if (!(opts.tol > 0.0)) throw std::domain_error("solve_ground_state: tol must be positive");
  if (!(opts.dtau > 0.0)) throw std::domain_error("solve_ground_state: dtau must be positive");

  const double seed_R = opts.initial_R.value_or(equilibrium_width());
  RadialWavefunction seed = radial::gaussian_wavefunction(grid, seed_R);

  const std::size_t n = seed.u.size();
  std::vector<double> u(n), rhs(n), cprime(n), u2(n), V(n);
  for (std::size_t j = 0; j < n; ++j) u[j] = seed.u[j].real();

  GroundStateResult result;
  result.psi.grid = grid;
  result.V.grid = grid;

  auto pack = [&](RadialWavefunction& psi) {
    psi.u.resize(n);
    for (std::size_t j = 0; j < n; ++j) psi.u[j] = u[j];
  };

  auto renormalize = [&] {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += u[j] * u[j];
    const double nrm = std::sqrt(4.0 * std::numbers::pi * grid.dr * sum);
    if (!std::isfinite(nrm) || !(nrm > 0.0)) {
      throw NumericalError("solve_ground_state: state lost normalizability");
    }
    for (std::size_t j = 0; j < n; ++j) {
      u[j] /= nrm;
      u2[j] = u[j] * u[j];
    }
  };

  double dtau = opts.dtau;
  double prev_E0 = 0.0, prev_Etot = 0.0;
  bool have_prev = false;

  for (int it = 1; it <= opts.max_iter; ++it) {
    renormalize();
    radial::potential_from_u_squared(grid, u2, V);
    imaginary_step(grid, V, dtau, u, rhs, cprime);
    renormalize();
    radial::potential_from_u_squared(grid, u2, V);

    pack(result.psi);
    result.V.V = V;
    const double K = radial::kinetic_energy(result.psi);
    const double P = radial::interaction_energy(result.psi, result.V);
    const double E0 = K + 2.0 * P;
    const double Etot = K + P;
    if (!std::isfinite(E0)) throw NumericalError("solve_ground_state: non-finite energy");

    if (have_prev) {
      result.residual = std::abs(E0 - prev_E0);
      if (Etot > prev_Etot + 1e-12 * std::max(1.0, std::abs(prev_Etot))) {
        dtau *= 0.5;  // relaxation overshoot; retighten the flow
        if (dtau < 1e-8) {
          throw NumericalError("solve_ground_state: step collapsed without convergence");
        }
      }
      if (result.residual < opts.tol) {
        result.K = K;
        result.P = P;
        result.E0 = E0;
        result.E_total = Etot;
        result.iterations = it;
        return result;
      }
    }
    prev_E0 = E0;
    prev_Etot = Etot;
    have_prev = true;
  }

  std::ostringstream msg;
  msg << "solve_ground_state: no convergence after " << opts.max_iter
      << " iterations (last |dE0|=" << result.residual << ")";
  throw NonConvergenceError(msg.str(), result.residual);
}

}  // namespace snlab::groundstate
