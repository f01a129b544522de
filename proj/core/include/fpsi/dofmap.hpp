#pragma once

#include <array>
#include <memory>
#include <span>
#include <vector>

#include "fpsi/mesh.hpp"
#include "fpsi/reference.hpp"
#include "fpsi/types.hpp"

namespace fpsi {

/// Conforming Lagrange degree-of-freedom numbering on a triangulation.
///
/// Scalar node ids are vertices first, then (P2 only) one id per mesh edge.
/// Vector spaces are stored component-blocked: dof(c, node) = c * nodes + node.
class DofMap {
 public:
  DofMap(const Mesh& mesh, Element element, int components);

  Element element() const { return element_; }
  int components() const { return components_; }
  Index num_nodes() const { return num_nodes_; }
  Index size() const { return num_nodes_ * components_; }
  int nodes_per_cell() const { return fpsi::nodes_per_cell(element_); }

  std::span<const Index> cell_nodes(Index t) const {
    return {cell_nodes_.data() + t * nodes_per_cell(), static_cast<size_t>(nodes_per_cell())};
  }
  Index dof(int component, Index node) const { return component * num_nodes_ + node; }

  /// Scalar node ids on a boundary edge in (start, end[, midpoint]) order.
  std::array<Index, 3> edge_nodes(const BoundaryEdge& edge) const;

  /// Node coordinates on the given (possibly deformed) mesh.
  std::vector<Vec2> node_coordinates(const Mesh& mesh) const;

  Index num_vertices() const { return num_vertices_; }
  Index num_triangles() const { return num_triangles_; }

 private:
  Element element_;
  int components_;
  Index num_vertices_ = 0;
  Index num_triangles_ = 0;
  Index num_nodes_ = 0;
  std::vector<Index> cell_nodes_;
  std::vector<std::array<Index, 2>> edges_;
};

using DofMapPtr = std::shared_ptr<const DofMap>;

/// Finite element function: coefficients over a dof map.
struct Field {
  DofMapPtr space;
  Vector values;
  double time = 0.0;

  Field() = default;
  Field(DofMapPtr s, double t = 0.0) : space(std::move(s)), values(Vector::Zero(space->size())), time(t) {}
  Field(DofMapPtr s, Vector v, double t = 0.0);

  Index size() const { return values.size(); }
  /// Vertex values of a vector field as points (first two components).
  std::vector<Vec2> vertex_vectors() const;
  Vec2 vector_at_node(Index node) const {
    return {values[space->dof(0, node)], values[space->dof(1, node)]};
  }
};

/// Nodal interpolation of a closed-form function. Throws Evaluation on
/// non-finite values.
Field interpolate(const ScalarFn& f, const DofMapPtr& space, const Mesh& mesh, double t = 0.0);
Field interpolate(const VectorFn& f, const DofMapPtr& space, const Mesh& mesh, double t = 0.0);
Field interpolate(const ScalarFieldFn& f, const DofMapPtr& space, const Mesh& mesh, double t);
Field interpolate(const VectorFieldFn& f, const DofMapPtr& space, const Mesh& mesh, double t);

/// Evaluation of a field inside triangle `t` at barycentric point `bary`.
double evaluate_scalar(const Field& f, Index t, const std::array<double, 3>& bary);
Vec2 evaluate_vector(const Field& f, Index t, const std::array<double, 3>& bary);

}  // namespace fpsi
