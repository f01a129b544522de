#pragma once

#include <optional>

#include "fpsi/interface.hpp"
#include "fpsi/sparse.hpp"

namespace fpsi {

struct ALEState {
  Field eta_f;       // current fluid-domain displacement (reference mesh)
  Field eta_f_prev;  // previous displacement
  Field w;           // mesh velocity
};

/// Harmonic extension of an interface displacement into the reference fluid
/// mesh: componentwise Laplace problem with the trace on INTERFACE and zero
/// on every other boundary. The matrix is factored once.
class HarmonicExtension {
 public:
  HarmonicExtension(const Mesh& reference_mesh, InterfaceSide side, Element element = Element::P2);

  const DofMapPtr& space() const { return space_; }

  /// `trace` lives on the fluid interface slots. Interface values take
  /// precedence at nodes shared with other boundaries.
  Field solve(const VectorTrace& trace);

 private:
  const Mesh* mesh_;
  InterfaceSide side_;
  DofMapPtr space_;
  std::vector<Index> boundary_dofs_;
  std::optional<EliminatedOperator> op_;
};

/// One-shot form of HarmonicExtension::solve.
Field solve_harmonic_extension(const Mesh& reference_mesh, const InterfaceSide& side,
                               const VectorTrace& interface_displacement,
                               Element element = Element::P2);

/// w = (eta_n - eta_prev) / dt.
Field mesh_velocity(const Field& eta_n, const Field& eta_prev, double dt);

/// Vertex displacements of a vector field, for deform_mesh.
std::vector<Vec2> vertex_displacement(const Field& eta);

}  // namespace fpsi
