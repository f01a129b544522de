#include "fpsi/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "fpsi/error.hpp"

namespace fpsi {

namespace fs = std::filesystem;

void write_file_atomic(const fs::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) fail(ErrorKind::Io, "cannot create directory '" + path.parent_path().string() + "': " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot write '" + path.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      out.close();
      fs::remove(tmp, ec);
      fail(ErrorKind::Io, "write failed for '" + path.string() + "'");
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    fail(ErrorKind::Io, "cannot rename into '" + path.string() + "': " + ec.message());
  }
}

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2E", v);
  return buf;
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string format_convergence_csv(const ConvergenceTable& table) {
  std::string out = std::string(kConvergenceHeader) + "\n";
  for (size_t i = 0; i < table.rows.size(); ++i) {
    const ErrorRow& r = table.rows[i];
    out += std::to_string(r.n);
    for (int m = 0; m < 5; ++m) {
      out += "," + sci(r.e[m]) + ",";
      if (i > 0) out += fixed2(table.rate(i, m));
    }
    out += "\n";
  }
  return out;
}

void write_convergence_csv(const ConvergenceTable& table, const fs::path& path) {
  write_file_atomic(path, format_convergence_csv(table));
}

namespace {

std::string energy_cells(const EnergyReport& r) {
  return std::to_string(r.step) + "," + full(r.time) + "," + full(r.E) + "," + full(r.D) + "," +
         full(r.I) + "," + full(r.N) + "," + full(r.force_fluid) + "," + full(r.traction) + "," +
         full(r.force_darcy);
}

}  // namespace

std::string format_energy_csv(const std::vector<EnergyReport>& reports) {
  std::string out = std::string(kEnergyHeader) + "\n";
  for (const EnergyReport& r : reports) out += energy_cells(r) + "\n";
  return out;
}

void write_energy_csv(const std::vector<EnergyReport>& reports, const fs::path& path) {
  write_file_atomic(path, format_energy_csv(reports));
}

bool SweepRun::passed() const {
  return failure.empty() && finite && monotone && max_E <= 100.0 * initial_total;
}

std::string format_sweep_csv(const std::vector<SweepRun>& runs) {
  std::string out = std::string("C0,K,dt,") + kEnergyHeader + "\n";
  for (const SweepRun& run : runs) {
    const std::string prefix = full(run.c0) + "," + full(run.K) + "," + full(run.dt) + ",";
    for (const EnergyReport& r : run.history) out += prefix + energy_cells(r) + "\n";
  }
  return out;
}

std::string format_vtk(const Mesh& mesh, const std::vector<VtkPointData>& data,
                       const std::string& title) {
  const Index np = mesh.num_nodes();
  const Index nc = mesh.num_triangles();
  std::ostringstream out;
  out << "# vtk DataFile Version 2.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << np << " double\n";
  for (const Vec2& x : mesh.nodes()) out << full(x.x()) << ' ' << full(x.y()) << " 0\n";
  out << "CELLS " << nc << ' ' << 4 * nc << '\n';
  for (const auto& t : mesh.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "CELL_TYPES " << nc << '\n';
  for (Index c = 0; c < nc; ++c) out << "5\n";
  out << "POINT_DATA " << np << '\n';
  for (const VtkPointData& d : data) {
    if (d.components != 1 && d.components != 3) {
      fail(ErrorKind::Argument, "vtk field '" + d.name + "' must have 1 or 3 components");
    }
    if (static_cast<Index>(d.values.size()) != d.components * np) {
      fail(ErrorKind::Dimension, "vtk field '" + d.name + "' has the wrong length");
    }
    if (d.components == 1) {
      out << "SCALARS " << d.name << " double 1\nLOOKUP_TABLE default\n";
      for (double v : d.values) out << full(v) << '\n';
    } else {
      out << "VECTORS " << d.name << " double\n";
      for (Index i = 0; i < np; ++i) {
        out << full(d.values[3 * i]) << ' ' << full(d.values[3 * i + 1]) << ' '
            << full(d.values[3 * i + 2]) << '\n';
      }
    }
  }
  return out.str();
}

namespace {

// Vertex ids coincide with the first scalar node ids of every dof map.
VtkPointData vertex_vector(const std::string& name, const Field& f, Index np) {
  VtkPointData d{name, 3, std::vector<double>(3 * np, 0.0)};
  for (Index i = 0; i < np; ++i) {
    const Vec2 v = f.vector_at_node(i);
    d.values[3 * i] = v.x();
    d.values[3 * i + 1] = v.y();
  }
  return d;
}

VtkPointData vertex_scalar(const std::string& name, const Field& f, Index np) {
  VtkPointData d{name, 1, std::vector<double>(np)};
  for (Index i = 0; i < np; ++i) d.values[i] = f.values[i];
  return d;
}

std::string step_name(const char* prefix, Index step) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%06ld.vtk", prefix, static_cast<long>(step));
  return buf;
}

}  // namespace

SnapshotFiles write_vtk_snapshot(const Mesh& fluid_mesh, const Mesh& solid_mesh,
                                 const FluidState& fluid, const BiotState& biot,
                                 const fs::path& directory, Index step) {
  const Index nf = fluid_mesh.num_nodes();
  const Index ns = solid_mesh.num_nodes();
  if (fluid.u.space->num_vertices() != nf || biot.eta.space->num_vertices() != ns) {
    fail(ErrorKind::Dimension, "snapshot states do not match the meshes");
  }
  VtkPointData mesh_disp{"displacement", 3, std::vector<double>(3 * nf, 0.0)};
  for (Index i = 0; i < nf; ++i) {
    const Vec2 d = fluid_mesh.nodes()[i] - fluid_mesh.reference_nodes()[i];
    mesh_disp.values[3 * i] = d.x();
    mesh_disp.values[3 * i + 1] = d.y();
  }
  const std::string time = " t=" + full(fluid.u.time);
  SnapshotFiles files{directory / step_name("fluid", step), directory / step_name("solid", step)};
  write_file_atomic(files.fluid,
                    format_vtk(fluid_mesh,
                               {vertex_vector("velocity", fluid.u, nf),
                                vertex_scalar("pressure", fluid.p, nf), mesh_disp},
                               "fluid step " + std::to_string(step) + time));
  write_file_atomic(files.solid,
                    format_vtk(solid_mesh,
                               {vertex_vector("velocity", biot.xi, ns),
                                vertex_vector("displacement", biot.eta, ns),
                                vertex_scalar("darcy_pressure", biot.phi, ns)},
                               "solid step " + std::to_string(step) + time));
  return files;
}

}  // namespace fpsi
