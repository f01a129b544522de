#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "fpsi/biot.hpp"
#include "fpsi/convergence.hpp"
#include "fpsi/energy.hpp"
#include "fpsi/fluid.hpp"

namespace fpsi {

/// Writes `content` to a sibling temporary and renames it over `path`.
/// Creates missing parent directories. Throws Io.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

inline constexpr const char* kConvergenceHeader =
    "n,e_eta,rate_eta,e_xi,rate_xi,e_phi,rate_phi,e_u,rate_u,e_p,rate_p";

/// Errors as %.2E, rates as %.2f; the first row has empty rate cells.
std::string format_convergence_csv(const ConvergenceTable& table);
void write_convergence_csv(const ConvergenceTable& table, const std::filesystem::path& path);

inline constexpr const char* kEnergyHeader = "step,time,E,D,I,N,force_fluid,traction,force_darcy";

std::string format_energy_csv(const std::vector<EnergyReport>& reports);
void write_energy_csv(const std::vector<EnergyReport>& reports, const std::filesystem::path& path);

/// One stability-sweep run: parameters, bound check and full history.
struct SweepRun {
  double c0 = 0.0;
  double K = 0.0;
  double dt = 0.0;
  bool finite = false;
  bool monotone = false;     // D and N nondecreasing
  double max_E = 0.0;
  double initial_total = 0.0;  // E^0 + D^0 + I^0
  std::string failure;         // nonempty if the run aborted
  std::vector<EnergyReport> history;

  bool passed() const;
};

/// Long format: one line per (run, step) with the run parameters in front.
std::string format_sweep_csv(const std::vector<SweepRun>& runs);

/// Legacy ASCII VTK (version 2.0) unstructured grid of a mesh's vertices and
/// triangles with point data. P2 fields are sampled at the vertices.
struct VtkPointData {
  std::string name;
  int components = 1;  // 1 or 3
  std::vector<double> values;  // components * num_points
};

std::string format_vtk(const Mesh& mesh, const std::vector<VtkPointData>& data,
                       const std::string& title);

/// Files written for one snapshot.
struct SnapshotFiles {
  std::filesystem::path fluid;
  std::filesystem::path solid;
};

/// fluid_<step>.vtk holds velocity, pressure and the mesh displacement;
/// solid_<step>.vtk holds velocity (xi), displacement (eta) and
/// darcy_pressure. Coordinates are those of the meshes passed in.
SnapshotFiles write_vtk_snapshot(const Mesh& fluid_mesh, const Mesh& solid_mesh,
                                 const FluidState& fluid, const BiotState& biot,
                                 const std::filesystem::path& directory, Index step);

}  // namespace fpsi
