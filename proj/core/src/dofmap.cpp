#include "fpsi/dofmap.hpp"

#include <cmath>

#include "fpsi/error.hpp"

namespace fpsi {

DofMap::DofMap(const Mesh& mesh, Element element, int components)
    : element_(element),
      components_(components),
      num_vertices_(mesh.num_nodes()),
      num_triangles_(mesh.num_triangles()),
      edges_(mesh.edges()) {
  if (components != 1 && components != 2) {
    fail(ErrorKind::Argument, "dof maps support 1 or 2 components");
  }
  num_nodes_ = num_vertices_ + (element == Element::P2 ? mesh.num_edges() : 0);
  const int npc = nodes_per_cell();
  cell_nodes_.resize(num_triangles_ * npc);
  for (Index t = 0; t < num_triangles_; ++t) {
    const auto& tri = mesh.triangles()[t];
    Index* out = cell_nodes_.data() + t * npc;
    for (int k = 0; k < 3; ++k) out[k] = tri[k];
    if (element == Element::P2) {
      const auto& te = mesh.triangle_edges(t);
      for (int k = 0; k < 3; ++k) out[3 + k] = num_vertices_ + te[k];
    }
  }
}

std::array<Index, 3> DofMap::edge_nodes(const BoundaryEdge& edge) const {
  if (element_ == Element::P1) return {edge.nodes[0], edge.nodes[1], -1};
  return {edge.nodes[0], edge.nodes[1], num_vertices_ + edge.edge};
}

std::vector<Vec2> DofMap::node_coordinates(const Mesh& mesh) const {
  std::vector<Vec2> out(mesh.nodes().begin(), mesh.nodes().end());
  if (element_ == Element::P2) {
    out.reserve(num_nodes_);
    for (const auto& e : edges_) out.push_back(0.5 * (mesh.nodes()[e[0]] + mesh.nodes()[e[1]]));
  }
  return out;
}

Field::Field(DofMapPtr s, Vector v, double t) : space(std::move(s)), values(std::move(v)), time(t) {
  if (values.size() != space->size()) {
    fail(ErrorKind::Dimension, "coefficient vector length " + std::to_string(values.size()) +
                                   " does not match dof count " + std::to_string(space->size()));
  }
}

std::vector<Vec2> Field::vertex_vectors() const {
  std::vector<Vec2> out(space->num_vertices());
  for (Index i = 0; i < space->num_vertices(); ++i) out[i] = vector_at_node(i);
  return out;
}

namespace {

void check_finite(double v) {
  if (!std::isfinite(v)) fail(ErrorKind::Evaluation, "interpolated function is not finite");
}

}  // namespace

Field interpolate(const ScalarFn& f, const DofMapPtr& space, const Mesh& mesh, double t) {
  if (space->components() != 1) fail(ErrorKind::Dimension, "scalar function on vector space");
  Field out(space, t);
  auto coords = space->node_coordinates(mesh);
  for (Index i = 0; i < space->num_nodes(); ++i) {
    double v = f(coords[i]);
    check_finite(v);
    out.values[i] = v;
  }
  return out;
}

Field interpolate(const VectorFn& f, const DofMapPtr& space, const Mesh& mesh, double t) {
  if (space->components() != 2) fail(ErrorKind::Dimension, "vector function on scalar space");
  Field out(space, t);
  auto coords = space->node_coordinates(mesh);
  for (Index i = 0; i < space->num_nodes(); ++i) {
    Vec2 v = f(coords[i]);
    check_finite(v.x());
    check_finite(v.y());
    out.values[space->dof(0, i)] = v.x();
    out.values[space->dof(1, i)] = v.y();
  }
  return out;
}

Field interpolate(const ScalarFieldFn& f, const DofMapPtr& space, const Mesh& mesh, double t) {
  return interpolate(ScalarFn([&](const Vec2& x) { return f(x, t); }), space, mesh, t);
}

Field interpolate(const VectorFieldFn& f, const DofMapPtr& space, const Mesh& mesh, double t) {
  return interpolate(VectorFn([&](const Vec2& x) { return f(x, t); }), space, mesh, t);
}

double evaluate_scalar(const Field& f, Index t, const std::array<double, 3>& bary) {
  auto basis = reference_basis_unchecked(f.space->element(), bary);
  auto nodes = f.space->cell_nodes(t);
  double v = 0.0;
  for (int i = 0; i < basis.count; ++i) v += basis.value[i] * f.values[nodes[i]];
  return v;
}

Vec2 evaluate_vector(const Field& f, Index t, const std::array<double, 3>& bary) {
  auto basis = reference_basis_unchecked(f.space->element(), bary);
  auto nodes = f.space->cell_nodes(t);
  Vec2 v = Vec2::Zero();
  for (int i = 0; i < basis.count; ++i) {
    v.x() += basis.value[i] * f.values[f.space->dof(0, nodes[i])];
    v.y() += basis.value[i] * f.values[f.space->dof(1, nodes[i])];
  }
  return v;
}

}  // namespace fpsi
