#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace snlab::scenarios {

inline constexpr std::string_view kVersion = "0.1.0";

struct GlobalOptions {
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = 12345;
  std::string format = "json";  // headline scalars: "json" or "csv"
};

struct ScenarioResult {
  nlohmann::json headline;
  std::vector<std::string> outputs;      // file names written under out_dir
  nlohmann::json diagnostics;            // drift, contamination flags, ...
};

// Canonical pipelines producing plot-ready data:
//   poten      pseudo-potential profile with its zero and minimum
//   density    ground-state density vs the equilibrium-width Gaussian
//   spectrum   breathing spectrum of a slightly perturbed ground state
//   radius     rms-radius history of a Gaussian released at R1
//   check      density-vs-Gaussian distances (bound t=500, expansion t=200)
//   expansion  width model: free / marginal / bound branches + exponents
//   massradius criticality diagram with the constant-density line
ScenarioResult figure_scenario(const std::string& name, const GlobalOptions& opts);

// Observed convergence orders:
//   cn-dt      time-step refinement of the propagator (Richardson triplets)
//   cn-dr      mesh refinement of the propagator (Richardson triplets)
//   poisson-dr mesh refinement against the closed-form Gaussian potential
//   verlet-dt  energy-drift scaling of the width-model integrator
// Orders for the first three must land in [1.8, 2.2] unless the levels are
// too noisy to decide (then the report is flagged inconclusive).
ScenarioResult convergence_report(const std::string& scenario, int levels,
                                  const GlobalOptions& opts);

// Every CLI invocation records one manifest (parameters, version, timing,
// produced files, convergence diagnostics).
void write_manifest(const GlobalOptions& opts, const std::string& command,
                    const nlohmann::json& params, const ScenarioResult& result);

}  // namespace snlab::scenarios
