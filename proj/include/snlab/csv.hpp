#pragma once

#include <filesystem>

#include "snlab/analysis.hpp"
#include "snlab/radial.hpp"
#include "snlab/radialpde.hpp"
#include "snlab/units.hpp"
#include "snlab/variational.hpp"

namespace snlab::io {

// All writers emit one header row and full-precision (17 significant digit)
// values, so identical inputs produce byte-identical files.

void write_series_csv(const std::filesystem::path& path,
                      const radialpde::ObservableSeries& series);
radialpde::ObservableSeries read_series_csv(const std::filesystem::path& path);

// Radial state files. Real states (ground state) use columns r,u,rho,V;
// complex snapshots use r,re_u,im_u,rho,V. The reader accepts both.
struct StateFile {
  radial::RadialWavefunction psi;
  radial::RadialPotential potential;
};
void write_state_csv(const std::filesystem::path& path, const radial::RadialWavefunction& psi,
                     const radial::RadialPotential& potential, bool real_only = false);
StateFile read_state_csv(const std::filesystem::path& path);

void write_variational_csv(const std::filesystem::path& path,
                           const variational::VariationalTrajectory& traj);

void write_spectrum_csv(const std::filesystem::path& path, const analysis::Spectrum& spec);

void write_massradius_csv(const std::filesystem::path& path,
                          const units::MassRadiusDiagram& diagram);

}  // namespace snlab::io
