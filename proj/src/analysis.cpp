#include "snlab/analysis.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

namespace snlab::analysis {

namespace {
// FFTW planning is not thread-safe; execution is.
std::mutex fftw_plan_mutex;
}  // namespace

Spectrum spectrum(std::span<const double> t, std::span<const double> x, Window window) {
  const std::size_t n = x.size();
  if (t.size() != n) throw std::domain_error("spectrum: time and value lengths differ");
  if (n < 64) throw std::domain_error("spectrum: need at least 64 samples");

  const double dt = t[1] - t[0];
  if (!(dt > 0.0)) throw std::domain_error("spectrum: non-increasing time axis");
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs((t[i] - t[i - 1]) - dt) > 1e-9 * dt) {
      throw std::domain_error("spectrum: non-uniform sampling");
    }
  }

  // Two-pass mean removal: the second pass cancels the summation roundoff,
  // so a constant record transforms to true zeros.
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double residual = 0.0;
  for (double v : x) residual += v - mean;
  mean += residual / static_cast<double>(n);

  std::vector<double> in(n);
  for (std::size_t i = 0; i < n; ++i) {
    double w = 1.0;
    if (window == Window::Hann) {
      w = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                                static_cast<double>(n - 1)));
    }
    in[i] = w * (x[i] - mean);
  }

  std::vector<fftw_complex> out(n / 2 + 1);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(), out.data(), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_plan_mutex);
    fftw_destroy_plan(plan);
  }

  Spectrum spec;
  spec.window = window == Window::Hann ? "hann" : "none";
  const double d_omega = 2.0 * std::numbers::pi / (static_cast<double>(n) * dt);
  spec.omega.resize(n / 2 + 1);
  spec.amplitude.resize(n / 2 + 1);
  for (std::size_t k = 0; k < spec.omega.size(); ++k) {
    spec.omega[k] = d_omega * static_cast<double>(k);
    spec.amplitude[k] = std::hypot(out[k][0], out[k][1]);
  }
  return spec;
}

Peak dominant_frequency(const Spectrum& spec, double omega_min) {
  const std::size_t n = spec.amplitude.size();
  if (n == 0) throw std::domain_error("dominant_frequency: empty spectrum");

  std::size_t k_start = 2;  // default: skip the DC and first bins
  if (omega_min >= 0.0) {
    k_start = 0;
    while (k_start < n && spec.omega[k_start] < omega_min) ++k_start;
  }
  if (k_start >= n) throw std::domain_error("dominant_frequency: empty search band");

  std::size_t k_max = k_start;
  for (std::size_t k = k_start; k < n; ++k) {
    if (spec.amplitude[k] > spec.amplitude[k_max]) k_max = k;
  }

  double delta = 0.0;
  if (k_max > 0 && k_max + 1 < n && spec.amplitude[k_max - 1] > 0.0 &&
      spec.amplitude[k_max] > 0.0 && spec.amplitude[k_max + 1] > 0.0) {
    const double lm = std::log(spec.amplitude[k_max - 1]);
    const double l0 = std::log(spec.amplitude[k_max]);
    const double lp = std::log(spec.amplitude[k_max + 1]);
    const double denom = lm - 2.0 * l0 + lp;
    if (denom < 0.0) {
      delta = std::clamp(0.5 * (lm - lp) / denom, -0.5, 0.5);
    }
  }
  const double d_omega = spec.omega.size() > 1 ? spec.omega[1] - spec.omega[0] : 0.0;
  return {spec.omega[k_max] + delta * d_omega, spec.amplitude[k_max]};
}

namespace {

double gaussian_distance(const radial::RadialGrid& grid, std::span<const double> rho,
                         double norm_rho, double R) {
  double acc = 0.0;
  const double amp = std::pow(std::numbers::pi, -1.5) / (R * R * R);
  for (std::size_t j = 0; j < rho.size(); ++j) {
    const double r = grid.r[j];
    const double g = amp * std::exp(-r * r / (R * R));
    const double d = rho[j] - g;
    const double w = (j + 1 == rho.size()) ? 0.5 : 1.0;
    acc += w * d * d * r * r;
  }
  return std::sqrt(grid.dr * acc) / norm_rho;
}

}  // namespace

GaussianFit gaussianity(const radial::RadialGrid& grid, std::span<const double> density) {
  if (density.size() != grid.r.size()) {
    throw std::domain_error("gaussianity: sample count does not match grid");
  }
  std::vector<double> f(density.size());
  for (std::size_t j = 0; j < density.size(); ++j) {
    f[j] = density[j] * grid.r[j] * grid.r[j];
  }
  const double mass = 4.0 * std::numbers::pi * radial::integrate_radial(grid, f);
  if (!(mass > 1e-300)) throw std::domain_error("gaussianity: zero-mass density");

  std::vector<double> rho(density.size());
  for (std::size_t j = 0; j < density.size(); ++j) rho[j] = density[j] / mass;

  for (std::size_t j = 0; j < rho.size(); ++j) f[j] = rho[j] * std::pow(grid.r[j], 4);
  const double r2_mean = 4.0 * std::numbers::pi * radial::integrate_radial(grid, f);

  GaussianFit fit;
  fit.moment_R = std::sqrt(2.0 * r2_mean / 3.0);

  double norm_sq = 0.0;
  for (std::size_t j = 0; j < rho.size(); ++j) {
    const double w = (j + 1 == rho.size()) ? 0.5 : 1.0;
    norm_sq += w * rho[j] * rho[j] * grid.r[j] * grid.r[j];
  }
  const double norm_rho = std::sqrt(grid.dr * norm_sq);
  if (!(norm_rho > 0.0)) throw std::domain_error("gaussianity: zero-mass density");

  // Golden-section minimization of d(R) around the moment estimate.
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = fit.moment_R / 4.0;
  double b = std::min(4.0 * fit.moment_R, 2.0 * grid.r_max);
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = gaussian_distance(grid, rho, norm_rho, c);
  double fd = gaussian_distance(grid, rho, norm_rho, d);
  while (b - a > 1e-12 * fit.moment_R) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = gaussian_distance(grid, rho, norm_rho, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = gaussian_distance(grid, rho, norm_rho, d);
    }
  }
  fit.best_R = 0.5 * (a + b);
  fit.l2_distance = gaussian_distance(grid, rho, norm_rho, fit.best_R);
  return fit;
}

double virial_ratio(double K, double P) {
  if (!(K > 0.0)) throw std::domain_error("virial_ratio: kinetic energy must be positive");
  return std::abs(P) / K;
}

}  // namespace snlab::analysis
