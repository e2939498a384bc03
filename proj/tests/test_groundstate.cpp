#include <doctest.h>

#include <cmath>
#include <numbers>

#include "snlab/analysis.hpp"
#include "snlab/groundstate.hpp"
#include "snlab/radialpde.hpp"
#include "snlab/variational.hpp"

using namespace snlab;
using namespace snlab::radial;
using namespace snlab::groundstate;

namespace {
constexpr double kPi = std::numbers::pi;

const GroundStateResult& production_ground_state() {
  static const GroundStateResult gs = solve_ground_state(build_grid(40.0, 4000));
  return gs;
}
}  // namespace

TEST_CASE("ground-state eigenvalue and virial ratio on the production grid") {
  const auto& gs = production_ground_state();
  CHECK(std::abs(gs.E0 + 0.163) <= 0.002);
  CHECK(analysis::virial_ratio(gs.K, gs.P) == doctest::Approx(2.0).epsilon(0.01));
  CHECK(gs.E0 < 0.0);
  CHECK(gs.residual < 1e-10);
  CHECK(gs.iterations > 10);
}

TEST_CASE("width-model eigenvalue lands within three percent of the solved one") {
  const auto& gs = production_ground_state();
  const double e_var = variational::variational_eigenvalue();
  CHECK(std::abs(e_var - gs.E0) / std::abs(gs.E0) < 0.03);
}

TEST_CASE("ground state is real, nodeless and positive in the bulk") {
  const auto& gs = production_ground_state();
  double peak = 0.0;
  for (const auto& v : gs.psi.u) peak = std::max(peak, std::abs(v.real()));
  int sign_changes = 0;
  bool was_positive = true;
  for (std::size_t j = 0; j < gs.psi.u.size(); ++j) {
    CHECK(gs.psi.u[j].imag() == 0.0);
    const double value = gs.psi.u[j].real();
    if (std::abs(value) > 1e-10 * peak) {
      if (j > 0 && (value > 0.0) != was_positive) ++sign_changes;
      was_positive = value > 0.0;
    }
    if (gs.psi.grid.r[j] < 20.0) CHECK(value > 0.0);
  }
  CHECK(sign_changes == 0);
}

TEST_CASE("ground-state density stays close to the equilibrium-width Gaussian") {
  const auto& gs = production_ground_state();
  const auto gaussian = gaussian_wavefunction(gs.psi.grid, equilibrium_width());
  const auto rho = gs.psi.density();
  const auto rho_g = gaussian.density();
  double num = 0.0, den = 0.0;
  for (std::size_t j = 0; j < rho.size(); ++j) {
    const double w = (j + 1 == rho.size()) ? 0.5 : 1.0;
    const double r2 = gs.psi.grid.r[j] * gs.psi.grid.r[j];
    num += w * (rho[j] - rho_g[j]) * (rho[j] - rho_g[j]) * r2;
    den += w * rho[j] * rho[j] * r2;
  }
  // Exponential far tail vs Gaussian: the profiles agree to ~0.13 in this
  // metric on the production grid.
  CHECK(std::sqrt(num / den) < 0.15);
}

TEST_CASE("energy functionals on the equilibrium-width Gaussian") {
  const auto grid = build_grid(40.0, 4000);
  const double r1 = equilibrium_width();
  const auto psi = gaussian_wavefunction(grid, r1);
  const auto pot = solve_poisson(grid, psi.density());

  CHECK(eigenvalue(psi, pot) == doctest::Approx(-1.0 / (2.0 * kPi)).epsilon(1e-4));
  // K + P at the equilibrium width: 1/(6 pi) - 1/(3 pi) = -1/(6 pi).
  CHECK(total_energy(psi, pot) == doctest::Approx(-1.0 / (6.0 * kPi)).epsilon(1e-4));
}

TEST_CASE("total energy equals minus the kinetic energy at the fixed point") {
  const auto& gs = production_ground_state();
  CHECK(gs.E_total == doctest::Approx(-gs.K).epsilon(0.01));
}

TEST_CASE("longer relaxation can only lower the total energy") {
  const auto grid = build_grid(30.0, 1000);
  GroundStateOptions loose;
  loose.tol = 1e-6;
  GroundStateOptions tight;
  tight.tol = 1e-11;
  const auto coarse = solve_ground_state(grid, loose);
  const auto fine = solve_ground_state(grid, tight);
  CHECK(fine.E_total <= coarse.E_total + 1e-12);
  CHECK(fine.iterations > coarse.iterations);
}

TEST_CASE("the eigenvalue is stable under grid refinement") {
  const auto a = solve_ground_state(build_grid(30.0, 1000));
  const auto b = solve_ground_state(build_grid(30.0, 2000));
  CHECK(std::abs(a.E0 - b.E0) / std::abs(b.E0) < 0.005);
}

TEST_CASE("the relaxed state is stationary under real-time evolution") {
  const auto gs = solve_ground_state(build_grid(30.0, 1200));
  radialpde::EvolveOptions opts;
  opts.sample_every = 40;
  const auto run = radialpde::evolve(gs.psi, 0.05, 100.0, opts);
  const double rms0 = run.series.rms.front();
  for (double rms : run.series.rms) {
    CHECK(std::abs(rms - rms0) / rms0 < 1e-3);
  }
}

TEST_CASE("iteration budget exhaustion reports the last residual") {
  const auto grid = build_grid(20.0, 256);
  GroundStateOptions opts;
  opts.max_iter = 3;
  bool thrown = false;
  try {
    solve_ground_state(grid, opts);
  } catch (const NonConvergenceError& e) {
    thrown = true;
    CHECK(e.residual > 0.0);
  }
  CHECK(thrown);
}

TEST_CASE("energy functionals reject mismatched grids") {
  const auto psi = gaussian_wavefunction(build_grid(30.0, 500), 3.0);
  const auto other = gaussian_wavefunction(build_grid(30.0, 600), 3.0);
  const auto pot = solve_poisson(other.grid, other.density());
  CHECK_THROWS_AS(eigenvalue(psi, pot), std::domain_error);
  CHECK_THROWS_AS(total_energy(psi, pot), std::domain_error);
}

TEST_CASE("option validation") {
  const auto grid = build_grid(20.0, 256);
  GroundStateOptions opts;
  opts.tol = -1.0;
  CHECK_THROWS_AS(solve_ground_state(grid, opts), std::domain_error);
  GroundStateOptions opts2;
  opts2.dtau = 0.0;
  CHECK_THROWS_AS(solve_ground_state(grid, opts2), std::domain_error);
}
