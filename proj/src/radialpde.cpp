#include "snlab/radialpde.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace snlab::radialpde {

using radial::RadialGrid;
using radial::RadialPotential;
using radial::RadialWavefunction;
using cplx = std::complex<double>;

std::span<const double> ObservableSeries::channel(std::string_view name) const {
  if (name == "norm") return norm;
  if (name == "rms") return rms;
  if (name == "K") return kinetic;
  if (name == "P") return potential;
  if (name == "E_total") return e_total;
  if (name == "E_eig") return e_eig;
  throw std::domain_error("ObservableSeries: unknown channel '" + std::string(name) + "'");
}

const std::vector<std::string>& ObservableSeries::channel_names() {
  static const std::vector<std::string> names = {"norm", "rms", "K", "P", "E_total", "E_eig"};
  return names;
}

namespace {

// Workspace for repeated complex tridiagonal Crank-Nicolson solves on one grid.
class Stepper {
 public:
  explicit Stepper(const RadialGrid& grid)
      : grid_(grid),
        n_(grid.r.size()),
        inv_dr2_(1.0 / (grid.dr * grid.dr)),
        vn_(n_),
        vbar_(n_),
        u2_(n_),
        u2_pred_(n_),
        rhs_(n_),
        cprime_(n_),
        pred_(n_) {}

  // (1 + i dt/2 H[V]) u_out = (1 - i dt/2 H[V]) u_in; Thomas algorithm.
  void linear_step(const std::vector<cplx>& u_in, const std::vector<double>& V, double dt,
                   std::vector<cplx>& u_out) {
    const cplx half_idt(0.0, 0.5 * dt);
    const cplx off = half_idt * (-0.5 * inv_dr2_);

    for (std::size_t j = 0; j < n_; ++j) {
      cplx h = (inv_dr2_ + V[j]) * u_in[j];
      if (j > 0) h -= 0.5 * inv_dr2_ * u_in[j - 1];
      if (j + 1 < n_) h -= 0.5 * inv_dr2_ * u_in[j + 1];
      rhs_[j] = u_in[j] - half_idt * h;
    }

    u_out.resize(n_);
    cplx denom = 1.0 + half_idt * (inv_dr2_ + V[0]);
    if (std::abs(denom) < 1e-300) throw NumericalError("crank_nicolson: degenerate diagonal");
    cprime_[0] = off / denom;
    u_out[0] = rhs_[0] / denom;
    for (std::size_t j = 1; j < n_; ++j) {
      denom = 1.0 + half_idt * (inv_dr2_ + V[j]) - off * cprime_[j - 1];
      if (std::abs(denom) < 1e-300) throw NumericalError("crank_nicolson: degenerate diagonal");
      cprime_[j] = off / denom;
      u_out[j] = (rhs_[j] - off * u_out[j - 1]) / denom;
    }
    for (std::size_t j = n_ - 1; j-- > 0;) {
      u_out[j] -= cprime_[j] * u_out[j + 1];
    }
  }

  // Predictor-corrector self-consistent step (in place).
  void sn_step(std::vector<cplx>& u, double dt) {
    for (std::size_t j = 0; j < n_; ++j) u2_[j] = std::norm(u[j]);
    radial::potential_from_u_squared(grid_, u2_, vn_);
    linear_step(u, vn_, dt, pred_);
    for (std::size_t j = 0; j < n_; ++j) {
      u2_pred_[j] = 0.5 * (u2_[j] + std::norm(pred_[j]));
    }
    radial::potential_from_u_squared(grid_, u2_pred_, vbar_);
    linear_step(u, vbar_, dt, pred_);
    u.swap(pred_);
  }

 private:
  const RadialGrid& grid_;
  std::size_t n_;
  double inv_dr2_;
  std::vector<double> vn_, vbar_, u2_, u2_pred_;
  std::vector<cplx> rhs_, cprime_, pred_;
};

double plain_norm(const RadialGrid& grid, const std::vector<cplx>& u) {
  double sum = 0.0;
  for (const auto& v : u) sum += std::norm(v);
  return std::sqrt(4.0 * std::numbers::pi * grid.dr * sum);
}

}  // namespace

RadialWavefunction crank_nicolson_linear_step(const RadialWavefunction& psi,
                                              const RadialPotential& V, double dt) {
  if (!psi.grid.compatible_with(V.grid)) {
    throw std::domain_error("crank_nicolson_linear_step: grids differ");
  }
  if (!(dt > 0.0)) throw std::domain_error("crank_nicolson_linear_step: dt must be positive");
  Stepper stepper(psi.grid);
  RadialWavefunction out;
  out.grid = psi.grid;
  stepper.linear_step(psi.u, V.V, dt, out.u);
  return out;
}

RadialWavefunction crank_nicolson_step(const RadialWavefunction& psi, double dt) {
  if (!(dt > 0.0)) throw std::domain_error("crank_nicolson_step: dt must be positive");
  Stepper stepper(psi.grid);
  RadialWavefunction out = psi;
  stepper.sn_step(out.u, dt);
  const double drift = std::abs(out.norm() - psi.norm());
  if (drift > 1e-8) {
    std::ostringstream msg;
    msg << "crank_nicolson_step: norm drifted by " << drift << " in one step; reduce dt";
    throw StepSizeError(msg.str(), drift);
  }
  return out;
}

EvolveResult evolve(const RadialWavefunction& psi0, double dt, double t_end,
                    EvolveOptions opts) {
  if (!(dt > 0.0)) throw std::domain_error("evolve: dt must be positive");
  if (!(t_end > 0.0)) throw std::domain_error("evolve: t_end must be positive");
  if (opts.sample_every < 1) throw std::domain_error("evolve: sample_every must be >= 1");

  const auto steps = static_cast<long long>(std::llround(t_end / dt));
  EvolveResult result;
  result.final_state = psi0;
  auto& u = result.final_state.u;
  const RadialGrid& grid = result.final_state.grid;
  Stepper stepper(grid);

  std::vector<double> scratch(u.size());
  const double norm0 = plain_norm(grid, u);

  auto current_potential = [&]() {
    for (std::size_t j = 0; j < u.size(); ++j) scratch[j] = std::norm(u[j]);
    RadialPotential pot;
    pot.grid = grid;
    radial::potential_from_u_squared(grid, scratch, pot.V);
    return pot;
  };

  auto sample = [&](double t) {
    const RadialPotential pot = current_potential();
    const double nrm = plain_norm(grid, u);
    const double K = radial::kinetic_energy(result.final_state);
    const double P = radial::interaction_energy(result.final_state, pot);
    result.series.t.push_back(t);
    result.series.norm.push_back(nrm);
    result.series.rms.push_back(radial::rms_radius(result.final_state));
    result.series.kinetic.push_back(K);
    result.series.potential.push_back(P);
    result.series.e_total.push_back(K + P);
    result.series.e_eig.push_back(K + 2.0 * P);

    result.max_norm_drift = std::max(result.max_norm_drift, std::abs(nrm - norm0));
    const double r_cut = 0.9 * grid.r_max;
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (grid.r[j] > r_cut &&
          scratch[j] / (grid.r[j] * grid.r[j]) > opts.boundary_density_tol) {
        result.boundary_contamination = true;
        break;
      }
    }
  };

  // Snapshot at the step nearest each requested time.
  std::vector<long long> snapshot_steps;
  snapshot_steps.reserve(opts.snapshot_times.size());
  for (double ts : opts.snapshot_times) {
    snapshot_steps.push_back(static_cast<long long>(std::llround(ts / dt)));
  }
  auto wants_snapshot = [&](long long k) {
    for (long long ks : snapshot_steps) {
      if (ks == k) return true;
    }
    return false;
  };

  sample(0.0);
  if (wants_snapshot(0)) result.snapshots.push_back({0.0, result.final_state, current_potential()});
  double prev_norm = norm0;
  for (long long k = 1; k <= steps; ++k) {
    stepper.sn_step(u, dt);
    const double nrm = plain_norm(grid, u);
    if (!std::isfinite(nrm)) {
      throw EvolveError("evolve: non-finite state; partial series attached",
                        std::move(result));
    }
    if (std::abs(nrm - prev_norm) > opts.per_step_norm_tol) {
      std::ostringstream msg;
      msg << "evolve: norm drifted by " << std::abs(nrm - prev_norm) << " in one step at t="
          << k * dt << "; reduce dt (partial series attached)";
      throw EvolveError(msg.str(), std::move(result));
    }
    prev_norm = nrm;
    if (k % opts.sample_every == 0) sample(k * dt);
    if (wants_snapshot(k)) {
      result.snapshots.push_back({k * dt, result.final_state, current_potential()});
    }
  }
  return result;
}

}  // namespace snlab::radialpde
