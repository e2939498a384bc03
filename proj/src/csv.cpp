#include "snlab/csv.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <unordered_map>

namespace snlab::io {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << std::setprecision(17);
  return out;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  std::size_t column_index(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw std::domain_error("csv: missing column '" + name + "'");
  }
  bool has_column(const std::string& name) const {
    for (const auto& h : header) {
      if (h == name) return true;
    }
    return false;
  }
};

Table read_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  Table table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv: " + path.string());
  table.header = split_line(line);
  table.columns.resize(table.header.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_line(line);
    if (fields.size() != table.header.size()) {
      throw std::runtime_error("ragged csv row in " + path.string());
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
      table.columns[i].push_back(std::stod(fields[i]));
    }
  }
  return table;
}

radial::RadialGrid grid_from_radii(const std::vector<double>& r) {
  if (r.size() < 16) throw std::domain_error("csv state: fewer than 16 radial nodes");
  const double dr = r.front();
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (std::abs(r[j] - dr * static_cast<double>(j + 1)) > 1e-9 * dr) {
      throw std::domain_error("csv state: radii are not a uniform origin-excluding mesh");
    }
  }
  return radial::build_grid(dr * static_cast<double>(r.size()), static_cast<int>(r.size()));
}

}  // namespace

void write_series_csv(const std::filesystem::path& path,
                      const radialpde::ObservableSeries& series) {
  auto out = open_out(path);
  out << "t,norm,rms,K,P,E_total,E_eig\n";
  for (std::size_t i = 0; i < series.t.size(); ++i) {
    out << series.t[i] << ',' << series.norm[i] << ',' << series.rms[i] << ','
        << series.kinetic[i] << ',' << series.potential[i] << ',' << series.e_total[i] << ','
        << series.e_eig[i] << '\n';
  }
}

radialpde::ObservableSeries read_series_csv(const std::filesystem::path& path) {
  const Table table = read_table(path);
  radialpde::ObservableSeries series;
  series.t = table.columns[table.column_index("t")];
  series.norm = table.columns[table.column_index("norm")];
  series.rms = table.columns[table.column_index("rms")];
  series.kinetic = table.columns[table.column_index("K")];
  series.potential = table.columns[table.column_index("P")];
  series.e_total = table.columns[table.column_index("E_total")];
  series.e_eig = table.columns[table.column_index("E_eig")];
  return series;
}

void write_state_csv(const std::filesystem::path& path, const radial::RadialWavefunction& psi,
                     const radial::RadialPotential& potential, bool real_only) {
  if (!psi.grid.compatible_with(potential.grid)) {
    throw std::domain_error("write_state_csv: wavefunction and potential grids differ");
  }
  auto out = open_out(path);
  const auto rho = psi.density();
  if (real_only) {
    out << "r,u,rho,V\n";
    for (std::size_t j = 0; j < psi.u.size(); ++j) {
      out << psi.grid.r[j] << ',' << psi.u[j].real() << ',' << rho[j] << ','
          << potential.V[j] << '\n';
    }
  } else {
    out << "r,re_u,im_u,rho,V\n";
    for (std::size_t j = 0; j < psi.u.size(); ++j) {
      out << psi.grid.r[j] << ',' << psi.u[j].real() << ',' << psi.u[j].imag() << ',' << rho[j]
          << ',' << potential.V[j] << '\n';
    }
  }
}

StateFile read_state_csv(const std::filesystem::path& path) {
  const Table table = read_table(path);
  StateFile state;
  const auto& r = table.columns[table.column_index("r")];
  state.psi.grid = grid_from_radii(r);
  state.potential.grid = state.psi.grid;
  state.potential.V = table.columns[table.column_index("V")];

  state.psi.u.resize(r.size());
  if (table.has_column("u")) {
    const auto& u = table.columns[table.column_index("u")];
    for (std::size_t j = 0; j < r.size(); ++j) state.psi.u[j] = u[j];
  } else {
    const auto& re = table.columns[table.column_index("re_u")];
    const auto& im = table.columns[table.column_index("im_u")];
    for (std::size_t j = 0; j < r.size(); ++j) state.psi.u[j] = {re[j], im[j]};
  }
  return state;
}

void write_variational_csv(const std::filesystem::path& path,
                           const variational::VariationalTrajectory& traj) {
  auto out = open_out(path);
  out << "t,R,Rdot,energy\n";
  for (const auto& s : traj.states) {
    out << s.t << ',' << s.R << ',' << s.Rdot << ','
        << variational::total_energy(s.R, s.Rdot) << '\n';
  }
}

void write_spectrum_csv(const std::filesystem::path& path, const analysis::Spectrum& spec) {
  auto out = open_out(path);
  out << "omega,amplitude\n";
  for (std::size_t k = 0; k < spec.omega.size(); ++k) {
    out << spec.omega[k] << ',' << spec.amplitude[k] << '\n';
  }
}

void write_massradius_csv(const std::filesystem::path& path,
                          const units::MassRadiusDiagram& diagram) {
  auto out = open_out(path);
  out << "mass_amu,r_critical_m,r_density_m\n";
  for (const auto& row : diagram.rows) {
    out << row.mass_amu << ',' << row.r_critical_m << ',' << row.r_density_m << '\n';
  }
}

}  // namespace snlab::io
