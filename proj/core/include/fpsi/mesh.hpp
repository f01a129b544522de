#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fpsi/types.hpp"

namespace fpsi {

enum class Marker : std::uint8_t {
  DirichletF,
  NeumannF,
  DirichletP,
  NeumannP,
  Interface,
  Wall,
};

std::string_view to_string(Marker marker);

/// A boundary edge stored in the counterclockwise order of its owning
/// triangle, so the outward normal is the tangent rotated clockwise.
struct BoundaryEdge {
  std::array<Index, 2> nodes{};
  Index edge = -1;      // global edge id
  Index triangle = -1;  // owning triangle
  std::optional<Marker> marker;
};

/// 2D triangulation with edge topology and boundary markers.
///
/// Coordinates may be moved by `deformed`; topology never changes after
/// construction. The reference configuration is kept so that `reset`
/// restores the original coordinates bitwise.
class Mesh {
 public:
  Mesh() = default;

  /// Builds topology and validates orientation. Throws InvalidGeometry for
  /// degenerate or clockwise triangles.
  Mesh(std::vector<Vec2> nodes, std::vector<std::array<Index, 3>> triangles);

  Index num_nodes() const { return static_cast<Index>(nodes_.size()); }
  Index num_triangles() const { return static_cast<Index>(triangles_.size()); }
  Index num_edges() const { return static_cast<Index>(edges_.size()); }

  const std::vector<Vec2>& nodes() const { return nodes_; }
  const std::vector<Vec2>& reference_nodes() const { return reference_nodes_; }
  const std::vector<std::array<Index, 3>>& triangles() const { return triangles_; }
  const std::vector<std::array<Index, 2>>& edges() const { return edges_; }

  /// Local edge k of a triangle joins local vertices (k, k+1 mod 3).
  const std::array<Index, 3>& triangle_edges(Index t) const { return triangle_edges_[t]; }

  const std::vector<BoundaryEdge>& boundary_edges() const { return boundary_edges_; }
  std::vector<BoundaryEdge>& boundary_edges() { return boundary_edges_; }

  /// Indices into boundary_edges() carrying `marker`.
  std::vector<Index> boundary_edges_with(Marker marker) const;
  bool has_marker(Marker marker) const;

  Vec2 edge_tangent(const BoundaryEdge& e) const;  // unit, along stored order
  Vec2 edge_normal(const BoundaryEdge& e) const;   // unit, outward
  double edge_length(const BoundaryEdge& e) const;

  double signed_area(Index t) const;
  double total_area() const;
  double min_area() const;
  double diameter() const;  // bounding-box diagonal of the reference nodes

  /// Returns a copy with nodes = reference + displacement (per vertex).
  /// Throws TangledMesh if any triangle loses positive area.
  Mesh deformed(std::span<const Vec2> vertex_displacement) const;

  /// Returns a copy with nodes = reference nodes.
  Mesh reset() const;

 private:
  void build_topology();

  std::vector<Vec2> nodes_;
  std::vector<Vec2> reference_nodes_;
  std::vector<std::array<Index, 3>> triangles_;
  std::vector<std::array<Index, 2>> edges_;
  std::vector<std::array<Index, 3>> triangle_edges_;
  std::vector<BoundaryEdge> boundary_edges_;
};

struct Rect {
  double x0, x1, y0, y1;
  bool operator==(const Rect&) const = default;
};

enum class Diagonal { LowerLeftUpperRight, UpperLeftLowerRight };

/// Structured triangulation of `rect` with nx*ny cells, each split in two
/// along `diagonal`. Boundary edges are left unmarked.
Mesh build_rect_mesh(const Rect& rect, Index nx, Index ny,
                     Diagonal diagonal = Diagonal::LowerLeftUpperRight);

/// Structured grid over `rect` keeping only cells for which `keep(i, j)` is
/// true; unused nodes are dropped.
Mesh build_masked_grid(const Rect& rect, Index nx, Index ny,
                       const std::function<bool(Index, Index)>& keep,
                       Diagonal diagonal = Diagonal::LowerLeftUpperRight);

/// Disjoint union of two meshes (node ids of `b` are shifted).
Mesh merge_meshes(const Mesh& a, const Mesh& b);

using EdgePredicate = std::function<bool(const Vec2&, const Vec2&)>;

struct BoundaryRule {
  EdgePredicate predicate;
  Marker marker;
};

/// Assigns markers to every boundary edge. Each edge must match exactly one
/// rule: MarkingIncomplete if none match, AmbiguousMarking if several do.
Mesh mark_boundary(Mesh mesh, std::span<const BoundaryRule> rules);

/// Predicate helpers: both edge endpoints satisfy the condition.
EdgePredicate on_vertical_line(double x, double tol = 1e-12);
EdgePredicate on_horizontal_line(double y, double tol = 1e-12);
EdgePredicate inside_box(const Rect& box, double tol = 1e-12);
EdgePredicate any_edge();
EdgePredicate all_of(std::vector<EdgePredicate> predicates);
EdgePredicate any_of(std::vector<EdgePredicate> predicates);
EdgePredicate none_of(std::vector<EdgePredicate> predicates);

/// Deformation entry points matching the mesh-motion step of the scheme.
Mesh deform_mesh(const Mesh& mesh, std::span<const Vec2> vertex_displacement);
Mesh reset_mesh(const Mesh& mesh);

}  // namespace fpsi
