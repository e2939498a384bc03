#pragma once

#include <span>
#include <string>
#include <vector>

#include "snlab/radial.hpp"

namespace snlab::analysis {

enum class Window { None, Hann };

// One-sided discrete Fourier magnitudes on the angular-frequency axis
// Omega_k = 2 pi k / (N dt), k = 0..N/2. Amplitudes are raw |X_k| of the
// (windowed, mean-removed) samples, so the windowless transform satisfies
// Parseval with the usual symmetry weights.
struct Spectrum {
  std::vector<double> omega;
  std::vector<double> amplitude;
  std::string window;
};

// Requires >= 64 uniformly spaced samples; the mean is removed before the
// transform. Hann taper by default to tame leakage of finite records.
Spectrum spectrum(std::span<const double> t, std::span<const double> x,
                  Window window = Window::Hann);

struct Peak {
  double omega = 0.0;
  double amplitude = 0.0;
};

// Arg-max of the amplitude over Omega >= omega_min (default: skip the first
// two bins), refined by 3-point parabolic interpolation in log-amplitude.
Peak dominant_frequency(const Spectrum& spec, double omega_min = -1.0);

struct GaussianFit {
  double best_R = 0.0;
  double l2_distance = 0.0;
  double moment_R = 0.0;  // sqrt(2 <r^2> / 3), for reference
};

// Distance of a unit-mass radial density from the Gaussian family
// rho_R(r) = pi^{-3/2} R^{-3} exp(-r^2/R^2):
//   d(R) = ||rho - rho_R|| / ||rho||,  ||f||^2 = 4 pi int f^2 r^2 dr.
// best_R minimizes d (golden-section search seeded by the second moment).
// The raw moment width is reported alongside; it overshoots the profile
// width whenever a low-density halo carries weight at large r.
GaussianFit gaussianity(const radial::RadialGrid& grid, std::span<const double> density);

// |P| / K; the self-consistent ground state sits at 2.
double virial_ratio(double K, double P);

}  // namespace snlab::analysis
