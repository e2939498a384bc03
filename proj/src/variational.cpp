#include "snlab/variational.hpp"

#include <cmath>
#include <sstream>

namespace snlab::variational {

namespace {
const double kC = width_coupling();
}

ModelConstants model_constants() {
  return {kC, zero_energy_width(), equilibrium_width(), breathing_frequency()};
}

static void require_positive_width(double R, const char* who) {
  if (!(R > 0.0)) {
    std::ostringstream msg;
    msg << who << ": width must be positive, got " << R;
    throw std::domain_error(msg.str());
  }
}

double pseudo_potential(double R) {
  require_positive_width(R, "pseudo_potential");
  return 0.5 / (R * R) - kC / R;
}

double lagrangian(double R, double Rdot) {
  return 0.5 * Rdot * Rdot - pseudo_potential(R);
}

double eom_acceleration(double R) {
  require_positive_width(R, "eom_acceleration");
  return 1.0 / (R * R * R) - kC / (R * R);
}

double total_energy(double R, double Rdot) {
  return 0.5 * Rdot * Rdot + pseudo_potential(R);
}

std::pair<double, double> equilibria() {
  return {zero_energy_width(), equilibrium_width()};
}

double linear_frequency() {
  const double r1 = equilibrium_width();
  return std::sqrt(3.0 / std::pow(r1, 4) - 2.0 * kC / std::pow(r1, 3));
}

Regime classify_regime(double R_init, double Rdot_init, double eps) {
  const double energy = total_energy(R_init, Rdot_init);
  if (energy > eps) return Regime::Expanding;
  if (energy < -eps) return Regime::Bound;
  return Regime::Critical;
}

VariationalTrajectory integrate(VariationalState initial, double dt, double t_end,
                                IntegrateOptions opts) {
  require_positive_width(initial.R, "integrate");
  if (!(dt > 0.0)) throw std::domain_error("integrate: dt must be positive");
  if (!(t_end > initial.t)) throw std::domain_error("integrate: t_end must exceed initial time");
  if (opts.record_stride < 1) throw std::domain_error("integrate: record_stride must be >= 1");

  const auto steps = static_cast<long long>(std::llround((t_end - initial.t) / dt));
  VariationalTrajectory traj;
  traj.dt = dt * opts.record_stride;
  traj.states.reserve(static_cast<std::size_t>(steps / opts.record_stride) + 1);
  traj.states.push_back(initial);

  double R = initial.R;
  double Rdot = initial.Rdot;
  double accel = eom_acceleration(R);
  const double energy0 = total_energy(R, Rdot);
  const double energy_scale =
      std::max(std::abs(energy0), 0.5 / (R * R) + kC / R);
  double max_drift = 0.0;

  for (long long k = 1; k <= steps; ++k) {
    Rdot += 0.5 * dt * accel;
    R += dt * Rdot;
    if (R <= opts.r_floor) {
      traj.energy_drift = max_drift / energy_scale;
      std::ostringstream msg;
      msg << "integrate: width fell to " << R << " at t=" << initial.t + k * dt
          << " (ansatz collapse); partial trajectory attached";
      throw CollapseError(msg.str(), std::move(traj));
    }
    accel = eom_acceleration(R);
    Rdot += 0.5 * dt * accel;
    max_drift = std::max(max_drift, std::abs(total_energy(R, Rdot) - energy0));
    if (k % opts.record_stride == 0) {
      traj.states.push_back({R, Rdot, initial.t + k * dt});
    }
  }

  traj.energy_drift = max_drift / energy_scale;
  if (traj.energy_drift > opts.energy_tol) {
    std::ostringstream msg;
    msg << "integrate: relative energy drift " << traj.energy_drift << " exceeds tolerance "
        << opts.energy_tol << "; reduce dt";
    throw StepSizeError(msg.str(), traj.energy_drift);
  }
  return traj;
}

ExponentFit fit_asymptotic_exponent(const VariationalTrajectory& traj,
                                    double window_fraction) {
  if (!(window_fraction > 0.0) || !(window_fraction < 1.0)) {
    throw std::domain_error("fit_asymptotic_exponent: window_fraction must lie in (0,1)");
  }
  if (traj.states.empty()) {
    throw std::domain_error("fit_asymptotic_exponent: empty trajectory");
  }
  const double t_end = traj.states.back().t;
  const double t_lo = (1.0 - window_fraction) * t_end;

  std::vector<double> x, y;
  for (const auto& s : traj.states) {
    if (s.t > 0.0 && s.t >= t_lo) {
      x.push_back(std::log(s.t));
      y.push_back(std::log(s.R));
    }
  }
  if (x.size() < 50) {
    throw std::domain_error("fit_asymptotic_exponent: fewer than 50 samples in fit window");
  }
  for (std::size_t i = 1; i < y.size(); ++i) {
    if (!(y[i] > y[i - 1])) {
      throw NotExpandingError(
          "fit_asymptotic_exponent: window is not monotone increasing (not expanding)");
    }
  }

  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss_res = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (slope * x[i] + intercept);
    ss_res += r * r;
  }
  const double se = x.size() > 2 ? std::sqrt(ss_res / (n - 2.0) / sxx) : 0.0;
  return {slope, se};
}

double gaussian_kinetic_energy(double R) {
  require_positive_width(R, "gaussian_kinetic_energy");
  return 0.75 / (R * R);
}

double gaussian_potential_energy(double R) {
  require_positive_width(R, "gaussian_potential_energy");
  return -1.0 / (std::sqrt(2.0 * std::numbers::pi) * R);
}

double variational_eigenvalue() {
  const double r1 = equilibrium_width();
  return gaussian_kinetic_energy(r1) + 2.0 * gaussian_potential_energy(r1);
}

}  // namespace snlab::variational
