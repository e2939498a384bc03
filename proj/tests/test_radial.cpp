#include <doctest.h>

#include <cmath>
#include <numbers>

#include "snlab/constants.hpp"
#include "snlab/radial.hpp"

using namespace snlab;
using namespace snlab::radial;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("grid layout") {
  const auto grid = build_grid(40.0, 4000);
  CHECK(grid.dr == doctest::Approx(0.01).epsilon(1e-15));
  CHECK(grid.r.front() == doctest::Approx(grid.dr).epsilon(1e-15));
  CHECK(grid.r.back() == doctest::Approx(40.0).epsilon(1e-15));
  CHECK_THROWS_AS(build_grid(-1.0, 100), std::domain_error);
  CHECK_THROWS_AS(build_grid(10.0, 8), std::domain_error);
}

TEST_CASE("gaussian profile: norm, second moment, kinetic energy") {
  const auto grid = build_grid(40.0, 4000);
  const double R = equilibrium_width();
  const auto psi = gaussian_wavefunction(grid, R);

  CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(!psi.truncation_warning);

  // <r^2> of the unit-mass Gaussian density: closed-form moment (3/2) R^2.
  CHECK(rms_radius(psi) == doctest::Approx(std::sqrt(1.5) * R).epsilon(1e-8));

  // Discrete gradient energy approaches 3/(4R^2) at second order in dr.
  CHECK(kinetic_energy(psi) == doctest::Approx(0.75 / (R * R)).epsilon(1e-5));

  CHECK_THROWS_AS(gaussian_wavefunction(grid, 0.0), std::domain_error);
}

TEST_CASE("a too-small box raises the truncation flag") {
  const auto grid = build_grid(10.0, 500);
  const auto psi = gaussian_wavefunction(grid, 2.0);  // 6R = 12 > 10
  CHECK(psi.truncation_warning);
}

TEST_CASE("a production box holds no tail mass at ten equilibrium widths") {
  // exp(-(10 R1)^2 / R1^2) = exp(-100): the Gaussian density is below 1e-30
  // of its peak well inside a 40-long box, so Dirichlet walls are invisible.
  const double R = equilibrium_width();
  const double rho_ratio = std::exp(-std::pow(10.0 * R / R, 2));
  CHECK(rho_ratio < 1e-30);
  CHECK(10.0 * R < 40.0);
}

TEST_CASE("poisson solve matches the closed-form Gaussian potential") {
  const auto grid = build_grid(40.0, 4000);
  const double R = equilibrium_width();
  const auto psi = gaussian_wavefunction(grid, R);
  const auto pot = solve_poisson(grid, psi.density());

  double max_rel = 0.0;
  for (std::size_t j = 0; j < pot.V.size(); ++j) {
    const double exact = -std::erf(grid.r[j] / R) / grid.r[j];
    max_rel = std::max(max_rel, std::abs(pot.V[j] - exact) / std::abs(exact));
    CHECK(pot.V[j] <= 0.0);
  }
  CHECK(max_rel <= 1e-4);

  // At the first node the potential is near the origin limit -2/(sqrt(pi) R).
  CHECK(pot.V.front() == doctest::Approx(-2.0 / (std::sqrt(kPi) * R)).epsilon(1e-4));

  // Unit mass seen from the wall.
  CHECK(pot.V.back() == doctest::Approx(-1.0 / grid.r_max).epsilon(1e-8));
}

TEST_CASE("poisson solve converges at second order") {
  const double R = equilibrium_width();
  double previous = 0.0;
  for (int level = 0; level < 3; ++level) {
    const auto grid = build_grid(40.0, 1000 << level);
    const auto psi = gaussian_wavefunction(grid, R);
    const auto pot = solve_poisson(grid, psi.density());
    double max_rel = 0.0;
    for (std::size_t j = 0; j < pot.V.size(); ++j) {
      const double exact = -std::erf(grid.r[j] / R) / grid.r[j];
      max_rel = std::max(max_rel, std::abs(pot.V[j] - exact) / std::abs(exact));
    }
    if (level > 0) {
      const double order = std::log2(previous / max_rel);
      CHECK(order > 1.8);
      CHECK(order < 2.2);
    }
    previous = max_rel;
  }
}

TEST_CASE("a point-like shell looks Newtonian from outside") {
  const auto grid = build_grid(20.0, 2000);
  std::vector<double> rho(grid.r.size(), 0.0);
  // all mass within the first few cells, normalized to unit total
  for (std::size_t j = 0; j < 5; ++j) rho[j] = 1.0;
  double mass = 0.0;
  {
    std::vector<double> f(rho.size());
    for (std::size_t j = 0; j < rho.size(); ++j) f[j] = rho[j] * grid.r[j] * grid.r[j];
    mass = 4.0 * kPi * integrate_radial(grid, f);
  }
  for (auto& v : rho) v /= mass;
  const auto pot = solve_poisson(grid, rho);
  for (std::size_t j = 100; j < pot.V.size(); j += 200) {
    CHECK(pot.V[j] == doctest::Approx(-1.0 / grid.r[j]).epsilon(1e-10));
  }
}

TEST_CASE("poisson rejects bad densities") {
  const auto grid = build_grid(10.0, 100);
  std::vector<double> rho(grid.r.size(), 1.0);
  rho[3] = -1e-10;
  CHECK_THROWS_AS(solve_poisson(grid, rho), std::domain_error);
  rho[3] = std::nan("");
  CHECK_THROWS_AS(solve_poisson(grid, rho), std::domain_error);
  std::vector<double> wrong(10, 1.0);
  CHECK_THROWS_AS(solve_poisson(grid, wrong), std::domain_error);
}

TEST_CASE("gaussian interaction energy reproduces -1/(sqrt(2 pi) R)") {
  const auto grid = build_grid(40.0, 4000);
  for (double R : {2.0, equilibrium_width(), 5.0}) {
    const auto psi = gaussian_wavefunction(grid, R);
    const auto pot = solve_poisson(grid, psi.density());
    CHECK(interaction_energy(psi, pot) ==
          doctest::Approx(-1.0 / (std::sqrt(2.0 * kPi) * R)).epsilon(1e-5));
  }
}

TEST_CASE("observables renormalize non-unit states") {
  const auto grid = build_grid(30.0, 1000);
  auto psi = gaussian_wavefunction(grid, 3.0);
  auto scaled = psi;
  for (auto& v : scaled.u) v *= 2.0;
  CHECK(rms_radius(scaled) == doctest::Approx(rms_radius(psi)).epsilon(1e-12));
  CHECK(kinetic_energy(scaled) == doctest::Approx(kinetic_energy(psi)).epsilon(1e-12));
}

TEST_CASE("mismatched grids are rejected") {
  const auto psi = gaussian_wavefunction(build_grid(30.0, 1000), 3.0);
  const auto other = gaussian_wavefunction(build_grid(30.0, 1500), 3.0);
  const auto pot = solve_poisson(other.grid, other.density());
  CHECK_THROWS_AS(interaction_energy(psi, pot), std::domain_error);
}

TEST_CASE("width rescaling widens the profile and keeps the norm") {
  const auto grid = build_grid(40.0, 4000);
  const auto psi = gaussian_wavefunction(grid, 3.0);
  const double delta = 0.05;
  const auto widened = scale_width(psi, delta);
  CHECK(widened.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rms_radius(widened) ==
        doctest::Approx((1.0 + delta) * rms_radius(psi)).epsilon(1e-6));
}

TEST_CASE("noise perturbation is reproducible and small") {
  const auto grid = build_grid(30.0, 1000);
  const auto psi = gaussian_wavefunction(grid, 3.0);
  const auto a = perturb_noise(psi, 1e-3, 42);
  const auto b = perturb_noise(psi, 1e-3, 42);
  const auto c = perturb_noise(psi, 1e-3, 43);
  double diff_ab = 0.0, diff_ac = 0.0, dev = 0.0;
  for (std::size_t j = 0; j < a.u.size(); ++j) {
    diff_ab = std::max(diff_ab, std::abs(a.u[j] - b.u[j]));
    diff_ac = std::max(diff_ac, std::abs(a.u[j] - c.u[j]));
    dev = std::max(dev, std::abs(a.u[j] - psi.u[j]));
  }
  CHECK(diff_ab == 0.0);
  CHECK(diff_ac > 0.0);
  CHECK(dev < 1e-2);
  CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tail mass of a compact state is negligible") {
  const auto grid = build_grid(40.0, 2000);
  const auto psi = gaussian_wavefunction(grid, 3.0);
  CHECK(tail_mass(psi, 0.9) < 1e-30);
  CHECK(tail_mass(psi, 0.0) == doctest::Approx(1.0).epsilon(1e-10));
}
