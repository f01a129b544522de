#include "fpsi/ale.hpp"

#include <algorithm>
#include <set>

#include "fpsi/error.hpp"

namespace fpsi {

HarmonicExtension::HarmonicExtension(const Mesh& reference_mesh, InterfaceSide side,
                                     Element element)
    : mesh_(&reference_mesh),
      side_(std::move(side)),
      space_(std::make_shared<const DofMap>(reference_mesh, element, 2)) {
  std::set<Index> nodes;
  for (const auto& e : reference_mesh.boundary_edges()) {
    for (Index n : space_->edge_nodes(e)) {
      if (n >= 0) nodes.insert(n);
    }
  }
  for (int c = 0; c < 2; ++c)
    for (Index n : nodes) boundary_dofs_.push_back(space_->dof(c, n));
  std::sort(boundary_dofs_.begin(), boundary_dofs_.end());
  const Mesh ref = reference_mesh.reset();
  op_.emplace(assemble_form({Form::Stiffness}, ref, *space_, *space_), boundary_dofs_);
}

Field HarmonicExtension::solve(const VectorTrace& trace) {
  if (trace.size() != side_.num_slots()) {
    fail(ErrorKind::CouplingData, "interface displacement has " + std::to_string(trace.size()) +
                                      " edges, fluid interface has " +
                                      std::to_string(side_.num_slots()));
  }
  Constraints g;
  for (Index d : boundary_dofs_) g[d] = 0.0;
  const bool p2 = space_->element() == Element::P2;
  for (Index s = 0; s < side_.num_slots(); ++s) {
    const auto nodes = space_->edge_nodes(mesh_->boundary_edges()[side_.edges[s]]);
    for (int k = 0; k < (p2 ? 3 : 2); ++k) {
      g[space_->dof(0, nodes[k])] = trace.x.values[s][k];
      g[space_->dof(1, nodes[k])] = trace.y.values[s][k];
    }
  }
  return Field(space_, op_->solve(Vector::Zero(space_->size()), g));
}

Field solve_harmonic_extension(const Mesh& reference_mesh, const InterfaceSide& side,
                               const VectorTrace& interface_displacement, Element element) {
  HarmonicExtension ext(reference_mesh, side, element);
  return ext.solve(interface_displacement);
}

Field mesh_velocity(const Field& eta_n, const Field& eta_prev, double dt) {
  if (eta_n.space != eta_prev.space && (!eta_n.space || !eta_prev.space ||
                                        eta_n.space->size() != eta_prev.space->size())) {
    fail(ErrorKind::Dimension, "mesh displacement fields live on different dof maps");
  }
  if (!(dt > 0.0)) fail(ErrorKind::Argument, "time step must be positive");
  return Field(eta_n.space, (eta_n.values - eta_prev.values) / dt, eta_n.time);
}

std::vector<Vec2> vertex_displacement(const Field& eta) { return eta.vertex_vectors(); }

}  // namespace fpsi
