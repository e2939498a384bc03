// Command-line front end: ground-state solves, real-time evolution, the
// reduced width model, spectra, Gaussianity checks and the mass-radius
// diagram, each writing plot-ready CSV plus a JSON run manifest.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "snlab/analysis.hpp"
#include "snlab/constants.hpp"
#include "snlab/csv.hpp"
#include "snlab/groundstate.hpp"
#include "snlab/radialpde.hpp"
#include "snlab/scenarios.hpp"
#include "snlab/units.hpp"
#include "snlab/variational.hpp"

namespace {

using nlohmann::json;
namespace var = snlab::variational;
using snlab::scenarios::GlobalOptions;
using snlab::scenarios::ScenarioResult;

void print_headline(const json& headline, const GlobalOptions& opts) {
  if (opts.format == "csv") {
    for (auto it = headline.begin(); it != headline.end(); ++it) {
      std::cout << it.key() << ',' << it.value().dump() << '\n';
    }
  } else {
    std::cout << headline.dump(2) << '\n';
  }
}

void finish(const GlobalOptions& opts, const std::string& command, const json& params,
            ScenarioResult result) {
  snlab::scenarios::write_manifest(opts, command, params, result);
  print_headline(result.headline, opts);
}

std::string regime_name(var::Regime regime) {
  switch (regime) {
    case var::Regime::Expanding:
      return "expanding";
    case var::Regime::Bound:
      return "bound";
    case var::Regime::Critical:
      return "critical";
  }
  return "?";
}

int run(int argc, char** argv) {
  CLI::App app{"Self-gravitating wavepacket laboratory"};
  app.require_subcommand(1);

  GlobalOptions global;
  std::string out_dir = ".";
  app.add_option("--out-dir", out_dir, "Directory for CSV/JSON outputs");
  app.add_option("--seed", global.seed, "Seed for the optional noise perturbation");
  app.add_option("--format", global.format, "Headline output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  // --- ground ---------------------------------------------------------
  auto* ground_cmd = app.add_subcommand("ground", "Self-consistent ground state");
  double g_rmax = 40.0, g_tol = 1e-10, g_dtau = 0.1;
  int g_n = 4000, g_max_iter = 20000;
  double g_r_init = 0.0;
  std::string g_state_out = "groundstate.csv";
  ground_cmd->add_option("--rmax", g_rmax, "Box radius");
  ground_cmd->add_option("--n", g_n, "Grid points");
  ground_cmd->add_option("--tol", g_tol, "Eigenvalue change per iteration");
  ground_cmd->add_option("--max-iter", g_max_iter, "Iteration budget");
  ground_cmd->add_option("--dtau", g_dtau, "Imaginary-time step");
  ground_cmd->add_option("--r-init", g_r_init, "Gaussian seed width (default: R1)");
  ground_cmd->add_option("--state-out", g_state_out, "State CSV file name");

  // --- evolve ---------------------------------------------------------
  auto* evolve_cmd = app.add_subcommand("evolve", "Propagate the full radial equations");
  std::string e_init = "gaussian", e_file, e_out = "series.csv", e_snap_prefix = "snapshot";
  double e_r = snlab::equilibrium_width(), e_dt = 0.05, e_t_end = 0.0, e_rmax = 40.0;
  double e_perturb_width = 0.0, e_perturb_noise = 0.0;
  int e_n = 4000, e_sample_every = 4;
  std::vector<double> e_snapshots;
  evolve_cmd->add_option("--init", e_init, "Initial state: gaussian or groundstate-file")
      ->check(CLI::IsMember({"gaussian", "groundstate-file"}));
  evolve_cmd->add_option("--r", e_r, "Gaussian width (gaussian init)");
  evolve_cmd->add_option("--file", e_file, "State CSV (groundstate-file init)");
  evolve_cmd->add_option("--dt", e_dt, "Time step");
  evolve_cmd->add_option("--t-end", e_t_end, "Final time")->required();
  evolve_cmd->add_option("--rmax", e_rmax, "Box radius (gaussian init)");
  evolve_cmd->add_option("--n", e_n, "Grid points (gaussian init)");
  evolve_cmd->add_option("--sample-every", e_sample_every, "Steps between observable samples");
  evolve_cmd->add_option("--snapshots", e_snapshots, "Snapshot times")->delimiter(',');
  evolve_cmd->add_option("--out", e_out, "Series CSV file name");
  evolve_cmd->add_option("--snapshot-prefix", e_snap_prefix, "Snapshot file prefix");
  evolve_cmd->add_option("--perturb-width", e_perturb_width,
                         "Widen the initial profile by this relative amount");
  evolve_cmd->add_option("--perturb-noise", e_perturb_noise,
                         "Multiplicative long-wavelength noise amplitude (uses --seed)");

  // --- variational ------------------------------------------------------
  auto* var_cmd = app.add_subcommand("variational", "Reduced Gaussian-width model");
  auto* var_info = var_cmd->add_subcommand("info", "Print the model constants");
  double v_r0 = 0.0, v_rdot0 = 0.0, v_dt = 0.01, v_t_end = 0.0, v_energy_tol = 1e-5;
  int v_stride = 1;
  std::string v_out = "variational.csv";
  var_cmd->add_option("--r0", v_r0, "Initial width");
  var_cmd->add_option("--rdot0", v_rdot0, "Initial width velocity");
  var_cmd->add_option("--dt", v_dt, "Time step");
  var_cmd->add_option("--t-end", v_t_end, "Final time");
  var_cmd->add_option("--stride", v_stride, "Record every N-th step");
  var_cmd->add_option("--energy-tol", v_energy_tol, "Allowed relative energy drift");
  var_cmd->add_option("--out", v_out, "Trajectory CSV file name");

  // --- spectrum ---------------------------------------------------------
  auto* spec_cmd = app.add_subcommand("spectrum", "DFT of an observable series");
  std::string s_input, s_channel = "rms", s_window = "hann", s_out = "spectrum.csv";
  double s_exclude_below = -1.0;
  spec_cmd->add_option("--input", s_input, "Series CSV")->required();
  spec_cmd->add_option("--channel", s_channel, "Channel name");
  spec_cmd->add_option("--window", s_window, "Taper: hann or none")
      ->check(CLI::IsMember({"hann", "none"}));
  spec_cmd->add_option("--exclude-below", s_exclude_below,
                       "Peak search lower bound (default: skip two bins)");
  spec_cmd->add_option("--out", s_out, "Spectrum CSV file name");

  // --- gaussianity --------------------------------------------------------
  auto* gauss_cmd = app.add_subcommand("gaussianity", "Distance of a density from Gaussian");
  std::string q_input;
  gauss_cmd->add_option("--input", q_input, "State/snapshot CSV")->required();

  // --- massradius ---------------------------------------------------------
  auto* mass_cmd = app.add_subcommand("massradius", "Criticality diagram");
  double m_density = 5e28, m_min = 1e8, m_max = 1e11;
  int m_points = 121;
  std::string m_out = "massradius.csv", m_meta;
  mass_cmd->add_option("--density", m_density, "Number density m[amu]/R^3 in m^-3");
  mass_cmd->add_option("--mass-min", m_min, "Smallest mass, amu");
  mass_cmd->add_option("--mass-max", m_max, "Largest mass, amu");
  mass_cmd->add_option("--points", m_points, "Rows in the table");
  mass_cmd->add_option("--out", m_out, "Diagram CSV file name");
  mass_cmd->add_option("--meta", m_meta, "Write the intersection JSON here instead of stderr");

  // --- figure ---------------------------------------------------------------
  auto* fig_cmd = app.add_subcommand("figure", "Canonical scenario pipelines");
  std::string f_name;
  fig_cmd
      ->add_option("--name,name", f_name,
                   "poten|density|spectrum|spectrum-noise|radius|check|expansion|massradius")
      ->required();

  // --- converge ---------------------------------------------------------------
  auto* conv_cmd = app.add_subcommand("converge", "Observed convergence orders");
  std::string c_scenario;
  int c_levels = 3;
  conv_cmd->add_option("--scenario", c_scenario, "cn-dt|cn-dr|poisson-dr|verlet-dt")->required();
  conv_cmd->add_option("--levels", c_levels, "Refinement levels (>= 3)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help is not an error; anything else is usage
  }
  global.out_dir = out_dir;
  std::filesystem::create_directories(global.out_dir);

  if (ground_cmd->parsed()) {
    const auto grid = snlab::radial::build_grid(g_rmax, g_n);
    snlab::groundstate::GroundStateOptions opts;
    opts.tol = g_tol;
    opts.max_iter = g_max_iter;
    opts.dtau = g_dtau;
    if (g_r_init > 0.0) opts.initial_R = g_r_init;
    const auto gs = snlab::groundstate::solve_ground_state(grid, opts);

    snlab::io::write_state_csv(global.out_dir / g_state_out, gs.psi, gs.V, /*real_only=*/true);
    ScenarioResult result;
    result.outputs = {g_state_out};
    result.headline = {{"E0", gs.E0},
                       {"E_total", gs.E_total},
                       {"K", gs.K},
                       {"P", gs.P},
                       {"virial_ratio", snlab::analysis::virial_ratio(gs.K, gs.P)},
                       {"iterations", gs.iterations},
                       {"residual", gs.residual}};
    result.diagnostics = {{"rmax", g_rmax}, {"n", g_n}};
    finish(global, "ground", {{"rmax", g_rmax}, {"n", g_n}, {"tol", g_tol}}, std::move(result));
    return 0;
  }

  if (evolve_cmd->parsed()) {
    snlab::radial::RadialWavefunction psi0;
    if (e_init == "gaussian") {
      psi0 = snlab::radial::gaussian_wavefunction(snlab::radial::build_grid(e_rmax, e_n), e_r);
    } else {
      if (e_file.empty()) throw std::domain_error("evolve: --file required for groundstate-file");
      psi0 = snlab::io::read_state_csv(e_file).psi;
      psi0.renormalize();
    }
    if (e_perturb_width != 0.0) psi0 = snlab::radial::scale_width(psi0, e_perturb_width);
    if (e_perturb_noise != 0.0) {
      psi0 = snlab::radial::perturb_noise(psi0, e_perturb_noise, global.seed);
    }

    snlab::radialpde::EvolveOptions opts;
    opts.sample_every = e_sample_every;
    opts.snapshot_times = e_snapshots;
    const auto run = snlab::radialpde::evolve(psi0, e_dt, e_t_end, opts);

    snlab::io::write_series_csv(global.out_dir / e_out, run.series);
    ScenarioResult result;
    result.outputs = {e_out};
    for (const auto& snap : run.snapshots) {
      std::ostringstream name;
      name << e_snap_prefix << "_t" << snap.t << ".csv";
      snlab::io::write_state_csv(global.out_dir / name.str(), snap.psi, snap.potential);
      result.outputs.push_back(name.str());
    }
    const double e0 = run.series.e_total.front();
    double drift = 0.0;
    for (double e : run.series.e_total) drift = std::max(drift, std::abs(e - e0));
    result.headline = {{"rms_final", run.series.rms.back()},
                       {"E_total_initial", e0},
                       {"energy_drift", drift / std::abs(e0)},
                       {"max_norm_drift", run.max_norm_drift},
                       {"boundary_contamination", run.boundary_contamination}};
    result.diagnostics = result.headline;
    finish(global, "evolve",
           {{"init", e_init}, {"dt", e_dt}, {"t_end", e_t_end}, {"n", e_n}, {"rmax", e_rmax}},
           std::move(result));
    return 0;
  }

  if (var_cmd->parsed()) {
    if (var_info->parsed()) {
      const auto mc = var::model_constants();
      json info = {{"C", mc.C},
                   {"R0", mc.R0},
                   {"R1", mc.R1},
                   {"Omega", mc.Omega},
                   {"E0_variational", var::variational_eigenvalue()}};
      print_headline(info, global);
      return 0;
    }
    if (!(v_r0 > 0.0) || !(v_t_end > 0.0)) {
      throw std::domain_error("variational: --r0 and --t-end are required (or use 'info')");
    }
    var::IntegrateOptions opts;
    opts.record_stride = v_stride;
    opts.energy_tol = v_energy_tol;
    const auto traj = var::integrate({v_r0, v_rdot0, 0.0}, v_dt, v_t_end, opts);
    snlab::io::write_variational_csv(global.out_dir / v_out, traj);

    ScenarioResult result;
    result.outputs = {v_out};
    result.headline = {{"regime", regime_name(var::classify_regime(v_r0, v_rdot0))},
                       {"energy", var::total_energy(v_r0, v_rdot0)},
                       {"energy_drift", traj.energy_drift},
                       {"R_final", traj.states.back().R}};
    result.diagnostics = {{"energy_drift", traj.energy_drift}};
    finish(global, "variational",
           {{"r0", v_r0}, {"rdot0", v_rdot0}, {"dt", v_dt}, {"t_end", v_t_end}},
           std::move(result));
    return 0;
  }

  if (spec_cmd->parsed()) {
    const auto series = snlab::io::read_series_csv(s_input);
    const auto window =
        s_window == "none" ? snlab::analysis::Window::None : snlab::analysis::Window::Hann;
    const auto spec = snlab::analysis::spectrum(series.t, series.channel(s_channel), window);
    const auto peak = snlab::analysis::dominant_frequency(spec, s_exclude_below);
    snlab::io::write_spectrum_csv(global.out_dir / s_out, spec);

    ScenarioResult result;
    result.outputs = {s_out};
    result.headline = {{"omega_peak", peak.omega},
                       {"amplitude", peak.amplitude},
                       {"channel", s_channel},
                       {"window", spec.window}};
    finish(global, "spectrum", {{"input", s_input}, {"channel", s_channel}}, std::move(result));
    return 0;
  }

  if (gauss_cmd->parsed()) {
    const auto state = snlab::io::read_state_csv(q_input);
    const auto fit = snlab::analysis::gaussianity(state.psi.grid, state.psi.density());
    ScenarioResult result;
    result.headline = {{"best_R", fit.best_R},
                       {"l2_distance", fit.l2_distance},
                       {"moment_R", fit.moment_R}};
    finish(global, "gaussianity", {{"input", q_input}}, std::move(result));
    return 0;
  }

  if (mass_cmd->parsed()) {
    const auto diagram = snlab::units::mass_radius_diagram(m_min, m_max, m_points, m_density);
    snlab::io::write_massradius_csv(global.out_dir / m_out, diagram);
    json intersection = {{"intersection_mass_amu", diagram.intersection_mass_amu},
                         {"intersection_radius_m", diagram.intersection_radius_m}};
    if (m_meta.empty()) {
      std::cerr << intersection.dump() << '\n';
    } else {
      std::ofstream meta(global.out_dir / m_meta);
      meta << intersection.dump(2) << '\n';
    }
    ScenarioResult result;
    result.outputs = {m_out};
    if (!m_meta.empty()) result.outputs.push_back(m_meta);
    result.headline = intersection;
    finish(global, "massradius",
           {{"density", m_density}, {"mass_min", m_min}, {"mass_max", m_max}},
           std::move(result));
    return 0;
  }

  if (fig_cmd->parsed()) {
    auto result = snlab::scenarios::figure_scenario(f_name, global);
    finish(global, "figure_" + f_name, {{"name", f_name}}, std::move(result));
    return 0;
  }

  if (conv_cmd->parsed()) {
    auto result = snlab::scenarios::convergence_report(c_scenario, c_levels, global);
    finish(global, "converge_" + c_scenario, {{"scenario", c_scenario}, {"levels", c_levels}},
           std::move(result));
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const snlab::NonConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
