#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "snlab/analysis.hpp"
#include "snlab/variational.hpp"

using namespace snlab;
using namespace snlab::variational;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("model constants satisfy their closed-form relations") {
  const auto mc = model_constants();
  CHECK(mc.R0 == doctest::Approx(1.0 / (2.0 * mc.C)).epsilon(1e-14));
  CHECK(mc.R1 == doctest::Approx(2.0 * mc.R0).epsilon(1e-14));
  const double omega_sq = 3.0 / std::pow(mc.R1, 4) - 2.0 * mc.C / std::pow(mc.R1, 3);
  CHECK(mc.Omega * mc.Omega == doctest::Approx(omega_sq).epsilon(1e-14));
  CHECK(linear_frequency() == doctest::Approx(2.0 / (9.0 * kPi)).epsilon(1e-13));
}

TEST_CASE("equilibria match their four-significant-figure values") {
  const auto [r0, r1] = equilibria();
  CHECK(r0 == doctest::Approx(1.8800).epsilon(5e-5));
  CHECK(r1 == doctest::Approx(3.7599).epsilon(5e-5));
  CHECK(pseudo_potential(r0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
  CHECK(std::abs(eom_acceleration(r1)) <= 1e-12);  // -U'(R1) = 0
}

TEST_CASE("pseudo-potential values at the marked points") {
  const auto [r0, r1] = equilibria();
  CHECK(pseudo_potential(r1) == doctest::Approx(-1.0 / (9.0 * kPi)).epsilon(1e-13));
  CHECK(pseudo_potential(1e-6) > 1e11);  // repulsive core dominates
  CHECK_THROWS_AS(pseudo_potential(0.0), std::domain_error);
  CHECK_THROWS_AS(pseudo_potential(-1.0), std::domain_error);
}

TEST_CASE("lagrangian is kinetic minus pseudo-potential") {
  const auto [r0, r1] = equilibria();
  CHECK(lagrangian(r1, 0.0) == doctest::Approx(1.0 / (9.0 * kPi)).epsilon(1e-13));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> width(0.3, 20.0);
  std::uniform_real_distribution<double> speed(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const double R = width(rng);
    const double v = speed(rng);
    CHECK(lagrangian(R, 0.0) == doctest::Approx(-pseudo_potential(R)).epsilon(1e-14));
    // L + 2U = total energy
    CHECK(lagrangian(R, v) + 2.0 * pseudo_potential(R) ==
          doctest::Approx(total_energy(R, v)).epsilon(1e-14));
  }
}

TEST_CASE("acceleration vanishes at R1 and equals 4C^3 at R0") {
  const auto mc = model_constants();
  CHECK(std::abs(eom_acceleration(mc.R1)) <= 1e-14);
  // 1/R0^3 - C/R0^2 = 8C^3 - 4C^3 with R0 = 1/(2C)
  CHECK(eom_acceleration(mc.R0) ==
        doctest::Approx(4.0 * std::pow(mc.C, 3)).epsilon(1e-13));
  CHECK_THROWS_AS(eom_acceleration(0.0), std::domain_error);
}

TEST_CASE("acceleration is minus the pseudo-potential gradient") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> width(0.5, 20.0);
  for (int i = 0; i < 200; ++i) {
    const double R = width(rng);
    const double h = 1e-5 * R;
    const double grad = (pseudo_potential(R + h) - pseudo_potential(R - h)) / (2.0 * h);
    CHECK(eom_acceleration(R) == doctest::Approx(-grad).epsilon(1e-8));
  }
}

TEST_CASE("linear frequency appears as the curvature of the acceleration") {
  const auto mc = model_constants();
  const double h = 1e-5;
  const double curvature =
      -(eom_acceleration(mc.R1 + h) - eom_acceleration(mc.R1 - h)) / (2.0 * h);
  CHECK(mc.Omega * mc.Omega == doctest::Approx(curvature).epsilon(1e-6));
  // and the packet mode sits at twice the wavefunction perturbation value ~0.035
  CHECK(mc.Omega / 2.0 == doctest::Approx(0.035).epsilon(0.02));
}

TEST_CASE("equilibrium initial data stays put") {
  const auto [r0, r1] = equilibria();
  const auto traj = integrate({r1, 0.0, 0.0}, 0.01, 100.0);
  for (const auto& s : traj.states) {
    CHECK(std::abs(s.R - r1) <= 1e-10);
  }
}

TEST_CASE("small oscillation about R1 has the closed-form frequency") {
  const auto [r0, r1] = equilibria();
  IntegrateOptions opts;
  opts.record_stride = 10;
  const auto traj = integrate({r1 + 0.01, 0.0, 0.0}, 0.01, 2000.0, opts);

  std::vector<double> t, R;
  for (const auto& s : traj.states) {
    t.push_back(s.t);
    R.push_back(s.R);
  }
  const auto spec = analysis::spectrum(t, R);
  const auto peak = analysis::dominant_frequency(spec);
  CHECK(peak.omega == doctest::Approx(linear_frequency()).epsilon(0.02));
}

TEST_CASE("tiny perturbations oscillate within half a percent of 2/(9 pi)") {
  const auto [r0, r1] = equilibria();
  IntegrateOptions opts;
  opts.record_stride = 20;
  const auto traj = integrate({r1 * (1.0 + 1e-4), 0.0, 0.0}, 0.01, 4000.0, opts);
  std::vector<double> t, R;
  for (const auto& s : traj.states) {
    t.push_back(s.t);
    R.push_back(s.R);
  }
  const auto peak = analysis::dominant_frequency(analysis::spectrum(t, R));
  CHECK(peak.omega == doctest::Approx(linear_frequency()).epsilon(0.005));
}

TEST_CASE("regime classification follows the sign of the energy") {
  const auto [r0, r1] = equilibria();
  CHECK(classify_regime(r0) == Regime::Critical);
  CHECK(classify_regime(0.8 * r0) == Regime::Expanding);
  CHECK(classify_regime(1.2 * r0) == Regime::Bound);
  CHECK(classify_regime(r0, 0.5) == Regime::Expanding);  // kinetic push
}

TEST_CASE("energy sign is preserved along trajectories") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> width(0.8, 6.0);
  for (int i = 0; i < 10; ++i) {
    const double R = width(rng);
    const auto regime = classify_regime(R);
    IntegrateOptions opts;
    opts.record_stride = 50;
    opts.energy_tol = 1e-5;
    const auto traj = integrate({R, 0.0, 0.0}, 0.005, 50.0, opts);
    for (const auto& s : traj.states) {
      if (regime == Regime::Expanding) CHECK(total_energy(s.R, s.Rdot) > 0.0);
      if (regime == Regime::Bound) CHECK(total_energy(s.R, s.Rdot) < 0.0);
    }
  }
}

TEST_CASE("free release expands linearly, marginal release as t^(2/3)") {
  const auto [r0, r1] = equilibria();
  IntegrateOptions opts;
  opts.record_stride = 100;
  opts.energy_tol = 1e-5;

  const auto free_run = integrate({0.5 * r0, 0.0, 0.0}, 0.01, 1e4, opts);
  const auto fit_free = fit_asymptotic_exponent(free_run);
  CHECK(fit_free.exponent == doctest::Approx(1.0).epsilon(0.02));

  const auto marginal = integrate({r0, 0.0, 0.0}, 0.01, 1e4, opts);
  const auto fit_marginal = fit_asymptotic_exponent(marginal);
  CHECK(fit_marginal.exponent > 0.64);
  CHECK(fit_marginal.exponent < 0.69);
}

TEST_CASE("exact power-law samples fit their exponent") {
  VariationalTrajectory traj;
  traj.dt = 0.5;
  for (int i = 0; i <= 2000; ++i) {
    const double t = 0.5 * i;
    traj.states.push_back({std::pow(t + 1e-300, 2.0 / 3.0), 0.0, t});
  }
  const auto fit = fit_asymptotic_exponent(traj);
  CHECK(fit.exponent == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
  CHECK(fit.std_error < 1e-6);
}

TEST_CASE("oscillating trajectories refuse an asymptotic fit") {
  const auto [r0, r1] = equilibria();
  IntegrateOptions opts;
  opts.record_stride = 10;
  const auto traj = integrate({r1 + 0.5, 0.0, 0.0}, 0.01, 500.0, opts);
  CHECK_THROWS_AS(fit_asymptotic_exponent(traj), NotExpandingError);
}

TEST_CASE("fit window validation") {
  const auto [r0, r1] = equilibria();
  const auto traj = integrate({0.5 * r0, 0.0, 0.0}, 0.01, 1.0);
  CHECK_THROWS_AS(fit_asymptotic_exponent(traj, 1.5), std::domain_error);
  VariationalTrajectory tiny;
  tiny.states = {{1.0, 0.0, 0.0}, {2.0, 0.0, 1.0}};
  CHECK_THROWS_AS(fit_asymptotic_exponent(tiny), std::domain_error);
}

TEST_CASE("width energies and the virial points") {
  const auto [r0, r1] = equilibria();
  CHECK(gaussian_kinetic_energy(1.0) == doctest::Approx(0.75).epsilon(1e-15));
  const double K1 = gaussian_kinetic_energy(r1);
  const double P1 = gaussian_potential_energy(r1);
  CHECK(std::abs(P1) == doctest::Approx(2.0 * K1).epsilon(1e-13));
  CHECK(std::abs(P1) == doctest::Approx(1.0 / (3.0 * kPi)).epsilon(1e-13));
  // At R0 the two contributions cancel.
  CHECK(gaussian_potential_energy(r0) ==
        doctest::Approx(-gaussian_kinetic_energy(r0)).epsilon(1e-13));
  CHECK_THROWS_AS(gaussian_kinetic_energy(0.0), std::domain_error);
  CHECK_THROWS_AS(gaussian_potential_energy(-2.0), std::domain_error);
}

TEST_CASE("variational eigenvalue is -1/(2 pi)") {
  const auto [r0, r1] = equilibria();
  CHECK(variational_eigenvalue() == doctest::Approx(-1.0 / (2.0 * kPi)).epsilon(1e-14));
  CHECK(variational_eigenvalue() ==
        doctest::Approx(-3.0 * gaussian_kinetic_energy(r1)).epsilon(1e-13));
  CHECK(variational_eigenvalue() == doctest::Approx(-0.159).epsilon(2e-3));
}

TEST_CASE("energy drift stays below 1e-8 at dt=1e-3") {
  const auto [r0, r1] = equilibria();
  IntegrateOptions opts;
  opts.record_stride = 100;
  opts.energy_tol = 1e-8;
  const auto traj = integrate({r1 + 0.5, 0.0, 0.0}, 1e-3, 500.0, opts);
  CHECK(traj.energy_drift <= 1e-8);
}

TEST_CASE("velocity reversal retraces the trajectory") {
  const auto [r0, r1] = equilibria();
  IntegrateOptions opts;
  opts.record_stride = 1;
  const auto fwd = integrate({r1 + 0.5, 0.0, 0.0}, 1e-3, 100.0, opts);
  const auto& end = fwd.states.back();
  const auto back = integrate({end.R, -end.Rdot, 0.0}, 1e-3, 100.0, opts);
  CHECK(std::abs(back.states.back().R - (r1 + 0.5)) <= 1e-6);
  CHECK(std::abs(-back.states.back().Rdot - 0.0) <= 1e-6);
}

TEST_CASE("overshooting the origin reports a collapse with the partial path") {
  // A fast infall with a coarse step crosses zero inside one drift substep.
  bool thrown = false;
  try {
    integrate({1.0, -10.0, 0.0}, 0.2, 10.0);
  } catch (const CollapseError& e) {
    thrown = true;
    CHECK(!e.partial.states.empty());
    CHECK(e.partial.states.front().R == doctest::Approx(1.0));
  }
  CHECK(thrown);
}

TEST_CASE("an unmeetable drift tolerance raises a step-size error") {
  const auto [r0, r1] = equilibria();
  IntegrateOptions opts;
  opts.energy_tol = 1e-18;
  opts.record_stride = 100;
  CHECK_THROWS_AS(integrate({r1 + 1.0, 0.0, 0.0}, 0.1, 200.0, opts), StepSizeError);
}

TEST_CASE("integrate validates its inputs") {
  CHECK_THROWS_AS(integrate({-1.0, 0.0, 0.0}, 0.01, 1.0), std::domain_error);
  CHECK_THROWS_AS(integrate({1.0, 0.0, 0.0}, -0.01, 1.0), std::domain_error);
  CHECK_THROWS_AS(integrate({1.0, 0.0, 5.0}, 0.01, 1.0), std::domain_error);
}

TEST_CASE("recorded trajectories are uniform in time") {
  IntegrateOptions opts;
  opts.record_stride = 7;
  const auto traj = integrate({3.0, 0.1, 0.0}, 0.01, 10.0, opts);
  CHECK(traj.dt == doctest::Approx(0.07));
  for (std::size_t i = 1; i < traj.states.size(); ++i) {
    CHECK(traj.states[i].t - traj.states[i - 1].t == doctest::Approx(traj.dt).epsilon(1e-12));
  }
}
