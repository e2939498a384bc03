#include "snlab/scenarios.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "snlab/analysis.hpp"
#include "snlab/constants.hpp"
#include "snlab/csv.hpp"
#include "snlab/groundstate.hpp"
#include "snlab/radialpde.hpp"
#include "snlab/units.hpp"
#include "snlab/variational.hpp"

namespace snlab::scenarios {

namespace {

namespace var = snlab::variational;

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

std::filesystem::path out_path(const GlobalOptions& opts, const std::string& name) {
  std::filesystem::create_directories(opts.out_dir);
  return opts.out_dir / name;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << j.dump(2) << '\n';
}

ScenarioResult figure_poten(const GlobalOptions& opts) {
  ScenarioResult result;
  const auto [r0, r1] = var::equilibria();
  {
    std::ofstream out(out_path(opts, "poten.csv"));
    out << std::setprecision(17) << "R,U\n";
    const int points = 1200;
    for (int i = 0; i <= points; ++i) {
      const double R = 0.5 + (12.0 - 0.5) * i / static_cast<double>(points);
      out << R << ',' << var::pseudo_potential(R) << '\n';
    }
  }
  result.outputs = {"poten.csv"};
  result.headline = {{"R0", r0},
                     {"R1", r1},
                     {"U_at_R0", var::pseudo_potential(r0)},
                     {"U_at_R1", var::pseudo_potential(r1)},
                     {"Omega", var::linear_frequency()}};
  return result;
}

groundstate::GroundStateResult default_ground_state() {
  const auto grid = radial::build_grid(40.0, 4000);
  return groundstate::solve_ground_state(grid);
}

ScenarioResult figure_density(const GlobalOptions& opts) {
  ScenarioResult result;
  const auto gs = default_ground_state();
  const double r1 = equilibrium_width();
  const auto gaussian = radial::gaussian_wavefunction(gs.psi.grid, r1);

  const auto rho_num = gs.psi.density();
  const auto rho_gauss = gaussian.density();
  {
    std::ofstream out(out_path(opts, "density.csv"));
    out << std::setprecision(17) << "r,rho_numeric,rho_gaussian_R1\n";
    for (std::size_t j = 0; j < rho_num.size(); ++j) {
      out << gs.psi.grid.r[j] << ',' << rho_num[j] << ',' << rho_gauss[j] << '\n';
    }
  }
  io::write_state_csv(out_path(opts, "groundstate.csv"), gs.psi, gs.V, /*real_only=*/true);

  // Fixed-width L2 distance between the two unit-mass profiles.
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < rho_num.size(); ++j) {
    const double w = (j + 1 == rho_num.size()) ? 0.5 : 1.0;
    const double r2 = gs.psi.grid.r[j] * gs.psi.grid.r[j];
    num += w * (rho_num[j] - rho_gauss[j]) * (rho_num[j] - rho_gauss[j]) * r2;
    den += w * rho_num[j] * rho_num[j] * r2;
  }
  const double e0_var = var::variational_eigenvalue();
  result.outputs = {"density.csv", "groundstate.csv"};
  result.headline = {{"E0", gs.E0},
                     {"E_total", gs.E_total},
                     {"K", gs.K},
                     {"P", gs.P},
                     {"virial_ratio", analysis::virial_ratio(gs.K, gs.P)},
                     {"iterations", gs.iterations},
                     {"E0_variational", e0_var},
                     {"variational_rel_error", std::abs(e0_var - gs.E0) / std::abs(gs.E0)},
                     {"l2_distance_to_R1_gaussian", std::sqrt(num / den)}};
  result.diagnostics = {{"residual", gs.residual}};
  return result;
}

ScenarioResult figure_spectrum(const GlobalOptions& opts, bool noise_perturbation) {
  ScenarioResult result;
  const auto gs = default_ground_state();
  const double delta = 1e-3;
  const auto perturbed = noise_perturbation
                             ? radial::perturb_noise(gs.psi, delta, opts.seed)
                             : radial::scale_width(gs.psi, delta);

  radialpde::EvolveOptions evolve_opts;
  evolve_opts.sample_every = 4;
  const auto run = radialpde::evolve(perturbed, 0.05, 2000.0, evolve_opts);

  const auto spec = analysis::spectrum(run.series.t, run.series.rms);
  const auto peak = analysis::dominant_frequency(spec);

  io::write_series_csv(out_path(opts, "spectrum_series.csv"), run.series);
  io::write_spectrum_csv(out_path(opts, "spectrum.csv"), spec);
  result.outputs = {"spectrum_series.csv", "spectrum.csv"};

  const double e0 = run.series.e_total.front();
  double drift = 0.0;
  for (double e : run.series.e_total) drift = std::max(drift, std::abs(e - e0));
  result.headline = {{"omega_peak", peak.omega},
                     {"peak_amplitude", peak.amplitude},
                     {"omega_linear", var::linear_frequency()},
                     {"perturbation", noise_perturbation ? "noise" : "width"},
                     {"delta", delta}};
  result.diagnostics = {{"energy_drift", drift / std::abs(e0)},
                        {"max_norm_drift", run.max_norm_drift},
                        {"boundary_contamination", run.boundary_contamination}};
  return result;
}

ScenarioResult figure_radius(const GlobalOptions& opts) {
  ScenarioResult result;
  const auto grid = radial::build_grid(40.0, 4000);
  const auto psi0 = radial::gaussian_wavefunction(grid, equilibrium_width());

  radialpde::EvolveOptions evolve_opts;
  evolve_opts.sample_every = 4;
  evolve_opts.snapshot_times = {500.0};
  const auto run = radialpde::evolve(psi0, 0.05, 2000.0, evolve_opts);

  const auto spec = analysis::spectrum(run.series.t, run.series.rms);
  const auto peak = analysis::dominant_frequency(spec);
  const auto& snap = run.snapshots.front();
  const auto fit = analysis::gaussianity(grid, snap.psi.density());

  io::write_series_csv(out_path(opts, "radius_series.csv"), run.series);
  io::write_state_csv(out_path(opts, "radius_t500.csv"), snap.psi, snap.potential);
  result.outputs = {"radius_series.csv", "radius_t500.csv"};

  const double omega = var::linear_frequency();
  result.headline = {{"omega_peak", peak.omega},
                     {"omega_linear", omega},
                     {"rel_dev_from_linear", std::abs(peak.omega - omega) / omega},
                     {"gaussianity_t500_R", fit.best_R},
                     {"gaussianity_t500_distance", fit.l2_distance}};
  result.diagnostics = {{"max_norm_drift", run.max_norm_drift},
                        {"boundary_contamination", run.boundary_contamination}};
  return result;
}

ScenarioResult figure_check(const GlobalOptions& opts) {
  ScenarioResult result;

  // Bound branch: Gaussian released at R1, inspected at t = 500.
  const auto grid_bound = radial::build_grid(40.0, 4000);
  radialpde::EvolveOptions bound_opts;
  bound_opts.sample_every = 20;
  bound_opts.snapshot_times = {500.0};
  const auto bound = radialpde::evolve(
      radial::gaussian_wavefunction(grid_bound, equilibrium_width()), 0.05, 500.0, bound_opts);
  const auto fit_bound = analysis::gaussianity(grid_bound, bound.snapshots.front().psi.density());

  // Expanding branch: R(0) = 0.3 R1 needs a wide box to keep appreciable
  // density away from the wall until t = 200.
  const auto grid_exp = radial::build_grid(400.0, 8000);
  radialpde::EvolveOptions exp_opts;
  exp_opts.sample_every = 20;
  exp_opts.snapshot_times = {200.0};
  const auto expansion = radialpde::evolve(
      radial::gaussian_wavefunction(grid_exp, 0.3 * equilibrium_width()), 0.05, 200.0, exp_opts);
  const auto fit_exp = analysis::gaussianity(grid_exp, expansion.snapshots.front().psi.density());

  auto dump = [&](const std::string& name, const radialpde::Snapshot& snap,
                  const analysis::GaussianFit& fit) {
    std::ofstream out(out_path(opts, name));
    out << std::setprecision(17) << "r,rho,rho_gaussian_fit\n";
    const auto rho = snap.psi.density();
    const double amp = std::pow(std::numbers::pi, -1.5) / std::pow(fit.best_R, 3);
    for (std::size_t j = 0; j < rho.size(); ++j) {
      const double r = snap.psi.grid.r[j];
      out << r << ',' << rho[j] << ',' << amp * std::exp(-r * r / (fit.best_R * fit.best_R))
          << '\n';
    }
  };
  dump("check_bound_t500.csv", bound.snapshots.front(), fit_bound);
  dump("check_expansion_t200.csv", expansion.snapshots.front(), fit_exp);
  result.outputs = {"check_bound_t500.csv", "check_expansion_t200.csv"};

  result.headline = {{"bound_t500_R", fit_bound.best_R},
                     {"bound_t500_distance", fit_bound.l2_distance},
                     {"bound_t500_moment_R", fit_bound.moment_R},
                     {"expansion_t200_R", fit_exp.best_R},
                     {"expansion_t200_distance", fit_exp.l2_distance},
                     {"expansion_t200_moment_R", fit_exp.moment_R}};
  result.diagnostics = {{"bound_boundary_contamination", bound.boundary_contamination},
                        {"expansion_boundary_contamination", expansion.boundary_contamination}};
  return result;
}

ScenarioResult figure_expansion(const GlobalOptions& opts) {
  ScenarioResult result;
  const auto [r0, r1] = var::equilibria();

  var::IntegrateOptions int_opts;
  int_opts.record_stride = 1000;
  int_opts.energy_tol = 1e-5;
  const double dt = 0.01, t_end = 1e5;

  struct Branch {
    const char* name;
    double R_init;
  };
  const Branch branches[] = {{"free", 0.5 * r0}, {"critical", r0}, {"bound", 1.5 * r0}};

  result.headline = nlohmann::json::object();
  for (const auto& branch : branches) {
    const auto traj = var::integrate({branch.R_init, 0.0, 0.0}, dt, t_end, int_opts);
    const std::string file = std::string("expansion_") + branch.name + ".csv";
    io::write_variational_csv(out_path(opts, file), traj);
    result.outputs.push_back(file);

    nlohmann::json entry = {{"R_init", branch.R_init},
                            {"energy", var::total_energy(branch.R_init, 0.0)},
                            {"energy_drift", traj.energy_drift}};
    const auto regime = var::classify_regime(branch.R_init);
    entry["regime"] = regime == var::Regime::Expanding ? "expanding"
                      : regime == var::Regime::Bound   ? "bound"
                                                       : "critical";
    if (regime != var::Regime::Bound) {
      const auto fit = var::fit_asymptotic_exponent(traj);
      entry["exponent"] = fit.exponent;
      entry["exponent_std_error"] = fit.std_error;
    }
    result.headline[branch.name] = entry;
  }
  return result;
}

ScenarioResult figure_massradius(const GlobalOptions& opts) {
  ScenarioResult result;
  const double gold_density = 5e28;  // number density of solid gold, m^-3
  const auto diagram = units::mass_radius_diagram(1e8, 1e11, 121, gold_density);
  io::write_massradius_csv(out_path(opts, "massradius.csv"), diagram);
  result.outputs = {"massradius.csv"};

  const double m_crit = units::critical_mass(0.707e-6) / codata::atomic_mass_unit;
  result.headline = {{"density_per_m3", gold_density},
                     {"intersection_mass_amu", diagram.intersection_mass_amu},
                     {"intersection_radius_m", diagram.intersection_radius_m},
                     {"critical_mass_amu_at_0p707um", m_crit}};
  return result;
}

double bound_run_rms(double dt, int n, double t_end) {
  const auto grid = radial::build_grid(40.0, n);
  const auto psi0 = radial::gaussian_wavefunction(grid, 1.2 * equilibrium_width());
  radialpde::EvolveOptions evolve_opts;
  evolve_opts.sample_every = std::max(1, static_cast<int>(std::llround(t_end / dt)));
  const auto run = radialpde::evolve(psi0, dt, t_end, evolve_opts);
  return run.series.rms.back();
}

nlohmann::json order_rows(const std::vector<double>& h, const std::vector<double>& err) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < h.size(); ++i) {
    nlohmann::json row = {{"h", h[i]}, {"error", err[i]}};
    if (i > 0 && err[i] > 0.0 && err[i - 1] > 0.0) {
      row["order"] = std::log2(err[i - 1] / err[i]);
    }
    rows.push_back(row);
  }
  return rows;
}

bool monotone_decreasing(const std::vector<double>& err) {
  for (std::size_t i = 1; i < err.size(); ++i) {
    if (!(err[i] < err[i - 1])) return false;
  }
  return true;
}

}  // namespace

ScenarioResult figure_scenario(const std::string& name, const GlobalOptions& opts) {
  if (name == "poten") return figure_poten(opts);
  if (name == "density") return figure_density(opts);
  if (name == "spectrum") return figure_spectrum(opts, /*noise_perturbation=*/false);
  if (name == "spectrum-noise") return figure_spectrum(opts, /*noise_perturbation=*/true);
  if (name == "radius") return figure_radius(opts);
  if (name == "check") return figure_check(opts);
  if (name == "expansion") return figure_expansion(opts);
  if (name == "massradius") return figure_massradius(opts);
  throw std::domain_error("figure_scenario: unknown scenario '" + name + "'");
}

ScenarioResult convergence_report(const std::string& scenario, int levels,
                                  const GlobalOptions& opts) {
  if (levels < 3) throw std::domain_error("convergence_report: need at least 3 levels");
  ScenarioResult result;
  std::vector<double> h, err;
  std::string quantity;

  if (scenario == "cn-dt") {
    // Richardson triplets of the end-time rms radius under dt halving.
    quantity = "rms(t=10), Gaussian at 1.2 R1, n=2000";
    std::vector<double> values;
    for (int level = 0; level <= levels; ++level) {
      const double dt = 0.4 / std::pow(2.0, level);
      values.push_back(bound_run_rms(dt, 2000, 10.0));
    }
    for (int level = 0; level < levels; ++level) {
      h.push_back(0.4 / std::pow(2.0, level));
      err.push_back(std::abs(values[static_cast<std::size_t>(level)] -
                             values[static_cast<std::size_t>(level) + 1]));
    }
  } else if (scenario == "cn-dr") {
    // Richardson triplets under mesh halving at a small fixed time step.
    quantity = "rms(t=10), Gaussian at 1.2 R1, dt=0.0125";
    std::vector<double> values;
    for (int level = 0; level <= levels; ++level) {
      values.push_back(bound_run_rms(0.0125, 500 << level, 10.0));
    }
    for (int level = 0; level < levels; ++level) {
      h.push_back(40.0 / static_cast<double>(500 << level));
      err.push_back(std::abs(values[static_cast<std::size_t>(level)] -
                             values[static_cast<std::size_t>(level) + 1]));
    }
  } else if (scenario == "poisson-dr") {
    quantity = "max relative error vs closed-form Gaussian potential, r_max=40";
    const double R = equilibrium_width();
    for (int level = 0; level < levels; ++level) {
      const int n = 500 << level;
      const auto grid = radial::build_grid(40.0, n);
      const auto psi = radial::gaussian_wavefunction(grid, R);
      const auto pot = radial::solve_poisson(grid, psi.density());
      double max_rel = 0.0;
      for (std::size_t j = 0; j < pot.V.size(); ++j) {
        const double exact = -std::erf(grid.r[j] / R) / grid.r[j];
        max_rel = std::max(max_rel, std::abs(pot.V[j] - exact) / std::abs(exact));
      }
      h.push_back(grid.dr);
      err.push_back(max_rel);
    }
  } else if (scenario == "verlet-dt") {
    quantity = "relative energy drift, bound width orbit to t=200";
    for (int level = 0; level < levels; ++level) {
      const double dt = 4e-3 / std::pow(2.0, level);
      var::IntegrateOptions int_opts;
      int_opts.record_stride = 1000;
      const auto traj =
          var::integrate({equilibrium_width() + 0.5, 0.0, 0.0}, dt, 200.0, int_opts);
      h.push_back(dt);
      err.push_back(traj.energy_drift);
    }
  } else {
    throw std::domain_error("convergence_report: unknown scenario '" + scenario + "'");
  }

  const bool conclusive = monotone_decreasing(err);
  double observed_order = 0.0;
  if (err.front() > 0.0 && err.back() > 0.0) {
    observed_order = std::log2(err.front() / err.back()) / static_cast<double>(err.size() - 1);
  }
  const std::string table_name = "converge_" + scenario + ".csv";
  {
    std::ofstream out(out_path(opts, table_name));
    out << std::setprecision(17) << "h,error\n";
    for (std::size_t i = 0; i < h.size(); ++i) out << h[i] << ',' << err[i] << '\n';
  }
  result.outputs = {table_name};
  result.headline = {{"scenario", scenario},
                     {"quantity", quantity},
                     {"levels", order_rows(h, err)},
                     {"observed_order", observed_order},
                     {"inconclusive", !conclusive}};
  if (conclusive && scenario != "verlet-dt" &&
      (observed_order < 1.8 || observed_order > 2.2)) {
    throw NumericalError("convergence_report: observed order " + std::to_string(observed_order) +
                         " outside [1.8, 2.2] for " + scenario);
  }
  return result;
}

void write_manifest(const GlobalOptions& opts, const std::string& command,
                    const nlohmann::json& params, const ScenarioResult& result) {
  nlohmann::json manifest = {{"command", command},
                             {"parameters", params},
                             {"version", std::string(kVersion)},
                             {"written_at", timestamp_utc()},
                             {"outputs", result.outputs},
                             {"diagnostics", result.diagnostics},
                             {"headline", result.headline}};
  write_json(out_path(opts, command + "_manifest.json"), manifest);
}

}  // namespace snlab::scenarios
