#include "snlab/radial.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace snlab::radial {

namespace {
constexpr double kFourPi = 4.0 * std::numbers::pi;
}

RadialGrid build_grid(double r_max, int n) {
  if (!(r_max > 0.0)) throw std::domain_error("build_grid: r_max must be positive");
  if (n < 16) throw std::domain_error("build_grid: need at least 16 points");
  RadialGrid g;
  g.n = n;
  g.dr = r_max / n;
  g.r_max = r_max;
  g.r.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) g.r[static_cast<std::size_t>(j)] = g.dr * (j + 1);
  return g;
}

double integrate_radial(const RadialGrid& grid, std::span<const double> f) {
  if (f.size() != grid.r.size()) {
    throw std::domain_error("integrate_radial: sample count does not match grid");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < f.size(); ++j) sum += f[j];
  sum += 0.5 * f.back();  // half weight at r_max; f(0) = 0 contributes nothing
  return grid.dr * sum;
}

double RadialWavefunction::norm() const {
  // Rectangle sum, not trapezoid: this is the quantity the propagator
  // conserves exactly, independent of any amplitude sitting at the wall.
  double sum = 0.0;
  for (const auto& v : u) sum += std::norm(v);
  return std::sqrt(kFourPi * grid.dr * sum);
}

void RadialWavefunction::renormalize() {
  const double n = norm();
  if (!(n > 0.0)) throw NumericalError("renormalize: zero or invalid norm");
  for (auto& v : u) v /= n;
}

std::vector<double> RadialWavefunction::density() const {
  std::vector<double> rho(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    rho[j] = std::norm(u[j]) / (grid.r[j] * grid.r[j]);
  }
  return rho;
}

RadialWavefunction gaussian_wavefunction(const RadialGrid& grid, double R) {
  if (!(R > 0.0)) throw std::domain_error("gaussian_wavefunction: width must be positive");
  RadialWavefunction psi;
  psi.grid = grid;
  psi.u.resize(grid.r.size());
  const double amp = std::pow(std::numbers::pi, -0.75) * std::pow(R, -1.5);
  for (std::size_t j = 0; j < grid.r.size(); ++j) {
    const double r = grid.r[j];
    psi.u[j] = r * amp * std::exp(-r * r / (2.0 * R * R));
  }
  psi.truncation_warning = grid.r_max < 6.0 * R;
  psi.renormalize();
  return psi;
}

void potential_from_u_squared(const RadialGrid& grid, std::span<const double> u_squared,
                              std::vector<double>& V_out) {
  const std::size_t n = u_squared.size();
  const double dr = grid.dr;
  V_out.resize(n);

  // Interior mass integral Q/(4 pi): cumulative trapezoid of |u|^2 from 0.
  // Exterior shell integral: cumulative trapezoid of |u|^2 / r.
  double inner = 0.5 * dr * u_squared[0];
  std::vector<double>& V = V_out;
  V[0] = inner;  // temporarily store the cumulative inner integral
  for (std::size_t j = 1; j < n; ++j) {
    inner += 0.5 * dr * (u_squared[j] + u_squared[j - 1]);
    V[j] = inner;
  }

  double outer_total = 0.5 * dr * u_squared[0] / grid.r[0];
  std::vector<double> outer(n);
  outer[0] = outer_total;
  for (std::size_t j = 1; j < n; ++j) {
    outer_total += 0.5 * dr * (u_squared[j] / grid.r[j] + u_squared[j - 1] / grid.r[j - 1]);
    outer[j] = outer_total;
  }

  for (std::size_t j = 0; j < n; ++j) {
    V[j] = -kFourPi * (V[j] / grid.r[j] + (outer_total - outer[j]));
  }
}

RadialPotential solve_poisson(const RadialGrid& grid, std::span<const double> density) {
  if (density.size() != grid.r.size()) {
    throw std::domain_error("solve_poisson: sample count does not match grid");
  }
  std::vector<double> u2(density.size());
  for (std::size_t j = 0; j < density.size(); ++j) {
    const double rho = density[j];
    if (!std::isfinite(rho)) throw std::domain_error("solve_poisson: non-finite density");
    if (rho < -1e-14) {
      std::ostringstream msg;
      msg << "solve_poisson: negative density " << rho << " at r=" << grid.r[j];
      throw std::domain_error(msg.str());
    }
    u2[j] = std::max(rho, 0.0) * grid.r[j] * grid.r[j];
  }
  RadialPotential pot;
  pot.grid = grid;
  potential_from_u_squared(grid, u2, pot.V);
  return pot;
}

namespace {

std::vector<double> abs_squared(const RadialWavefunction& psi) {
  std::vector<double> a(psi.u.size());
  for (std::size_t j = 0; j < psi.u.size(); ++j) a[j] = std::norm(psi.u[j]);
  return a;
}

// Renormalization factor applied to quadratic observables when the state is
// not unit-norm (off by more than 1e-8).
double norm_correction(const RadialWavefunction& psi) {
  const double n = psi.norm();
  if (std::abs(n - 1.0) <= 1e-8) return 1.0;
  return 1.0 / (n * n);
}

}  // namespace

double rms_radius(const RadialWavefunction& psi) {
  auto a = abs_squared(psi);
  for (std::size_t j = 0; j < a.size(); ++j) a[j] *= psi.grid.r[j] * psi.grid.r[j];
  return std::sqrt(norm_correction(psi) * kFourPi * integrate_radial(psi.grid, a));
}

double kinetic_energy(const RadialWavefunction& psi) {
  const double dr = psi.grid.dr;
  double sum = std::norm(psi.u.front());  // interval [0, r_1] with u(0) = 0
  for (std::size_t j = 0; j + 1 < psi.u.size(); ++j) {
    sum += std::norm(psi.u[j + 1] - psi.u[j]);
  }
  sum += std::norm(psi.u.back());  // ghost zero one spacing past r_max
  return norm_correction(psi) * 0.5 * kFourPi * sum / dr;
}

double interaction_energy(const RadialWavefunction& psi, const RadialPotential& V) {
  if (!psi.grid.compatible_with(V.grid)) {
    throw std::domain_error("interaction_energy: wavefunction and potential grids differ");
  }
  auto a = abs_squared(psi);
  for (std::size_t j = 0; j < a.size(); ++j) a[j] *= V.V[j];
  return norm_correction(psi) * 0.5 * kFourPi * integrate_radial(psi.grid, a);
}

double tail_mass(const RadialWavefunction& psi, double fraction) {
  const double r_cut = fraction * psi.grid.r_max;
  auto a = abs_squared(psi);
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (psi.grid.r[j] <= r_cut) a[j] = 0.0;
  }
  return kFourPi * integrate_radial(psi.grid, a);
}

namespace {

// Cubic 4-point Lagrange interpolation of u at radius s, with u(0) = 0 and
// u = 0 beyond the grid.
std::complex<double> interp_u(const RadialGrid& grid,
                              const std::vector<std::complex<double>>& u, double s) {
  if (s >= grid.r_max || s <= 0.0) return {0.0, 0.0};
  const double x = s / grid.dr;  // node j holds r = (j+1) dr
  const auto i1 = static_cast<long>(std::floor(x)) - 1;  // left node of the bracket
  auto value_at = [&](long idx) -> std::complex<double> {
    if (idx == -1) return {0.0, 0.0};                      // origin
    if (idx == -2) return -u[0];                           // odd reflection of r psi
    if (idx < -2 || idx >= grid.n) return {0.0, 0.0};
    return u[static_cast<std::size_t>(idx)];
  };
  std::complex<double> result{0.0, 0.0};
  for (long k = i1 - 1; k <= i1 + 2; ++k) {
    double weight = 1.0;
    const double xk = static_cast<double>(k) + 1.0;
    for (long m = i1 - 1; m <= i1 + 2; ++m) {
      if (m == k) continue;
      const double xm = static_cast<double>(m) + 1.0;
      weight *= (x - xm) / (xk - xm);
    }
    result += weight * value_at(k);
  }
  return result;
}

}  // namespace

RadialWavefunction scale_width(const RadialWavefunction& psi, double delta) {
  if (!(1.0 + delta > 0.0)) throw std::domain_error("scale_width: widening factor must be positive");
  const double lambda = 1.0 / (1.0 + delta);
  RadialWavefunction out;
  out.grid = psi.grid;
  out.u.resize(psi.u.size());
  const double amp = std::sqrt(lambda);
  for (std::size_t j = 0; j < psi.u.size(); ++j) {
    out.u[j] = amp * interp_u(psi.grid, psi.u, lambda * psi.grid.r[j]);
  }
  out.renormalize();
  return out;
}

RadialWavefunction perturb_noise(const RadialWavefunction& psi, double amplitude,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  constexpr int kModes = 4;
  double c[kModes], ph[kModes];
  for (int k = 0; k < kModes; ++k) {
    c[k] = coeff(rng);
    ph[k] = phase(rng);
  }
  RadialWavefunction out = psi;
  for (std::size_t j = 0; j < out.u.size(); ++j) {
    double xi = 0.0;
    for (int k = 0; k < kModes; ++k) {
      xi += c[k] / (k + 1.0) *
            std::sin((k + 1.0) * std::numbers::pi * psi.grid.r[j] / psi.grid.r_max + ph[k]);
    }
    out.u[j] *= 1.0 + amplitude * xi;
  }
  out.renormalize();
  return out;
}

}  // namespace snlab::radial
