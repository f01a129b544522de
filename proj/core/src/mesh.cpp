#include "fpsi/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

#include "fpsi/error.hpp"

namespace fpsi {

std::string_view to_string(Marker marker) {
  switch (marker) {
    case Marker::DirichletF: return "DIRICHLET_F";
    case Marker::NeumannF: return "NEUMANN_F";
    case Marker::DirichletP: return "DIRICHLET_P";
    case Marker::NeumannP: return "NEUMANN_P";
    case Marker::Interface: return "INTERFACE";
    case Marker::Wall: return "WALL";
  }
  return "UNKNOWN";
}

namespace {

double triangle_signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * ((b.x() - a.x()) * (c.y() - a.y()) - (c.x() - a.x()) * (b.y() - a.y()));
}

}  // namespace

Mesh::Mesh(std::vector<Vec2> nodes, std::vector<std::array<Index, 3>> triangles)
    : nodes_(std::move(nodes)), triangles_(std::move(triangles)) {
  reference_nodes_ = nodes_;
  const Index n = num_nodes();
  for (Index t = 0; t < num_triangles(); ++t) {
    for (Index v : triangles_[t]) {
      if (v < 0 || v >= n) {
        fail(ErrorKind::InvalidGeometry, "triangle " + std::to_string(t) + " references missing node");
      }
    }
    if (!(signed_area(t) > 0.0)) {
      fail(ErrorKind::InvalidGeometry,
           "triangle " + std::to_string(t) + " has non-positive signed area");
    }
  }
  build_topology();
}

void Mesh::build_topology() {
  std::map<std::pair<Index, Index>, Index> edge_ids;
  std::vector<int> edge_count;
  std::vector<std::pair<Index, int>> first_owner;  // (triangle, local edge)
  triangle_edges_.resize(triangles_.size());
  for (Index t = 0; t < num_triangles(); ++t) {
    const auto& tri = triangles_[t];
    for (int k = 0; k < 3; ++k) {
      Index a = tri[k];
      Index b = tri[(k + 1) % 3];
      auto key = std::minmax(a, b);
      auto [it, inserted] = edge_ids.try_emplace({key.first, key.second}, num_edges());
      if (inserted) {
        edges_.push_back({key.first, key.second});
        edge_count.push_back(0);
        first_owner.emplace_back(t, k);
      }
      edge_count[it->second] += 1;
      triangle_edges_[t][k] = it->second;
    }
  }
  boundary_edges_.clear();
  for (Index e = 0; e < num_edges(); ++e) {
    if (edge_count[e] > 2) {
      fail(ErrorKind::InvalidGeometry, "edge shared by more than two triangles");
    }
    if (edge_count[e] == 1) {
      auto [t, k] = first_owner[e];
      BoundaryEdge be;
      be.nodes = {triangles_[t][k], triangles_[t][(k + 1) % 3]};
      be.edge = e;
      be.triangle = t;
      boundary_edges_.push_back(be);
    }
  }
}

std::vector<Index> Mesh::boundary_edges_with(Marker marker) const {
  std::vector<Index> out;
  for (Index i = 0; i < static_cast<Index>(boundary_edges_.size()); ++i) {
    if (boundary_edges_[i].marker == marker) out.push_back(i);
  }
  return out;
}

bool Mesh::has_marker(Marker marker) const {
  return std::any_of(boundary_edges_.begin(), boundary_edges_.end(),
                     [&](const BoundaryEdge& e) { return e.marker == marker; });
}

Vec2 Mesh::edge_tangent(const BoundaryEdge& e) const {
  Vec2 d = nodes_[e.nodes[1]] - nodes_[e.nodes[0]];
  return d / d.norm();
}

Vec2 Mesh::edge_normal(const BoundaryEdge& e) const {
  Vec2 t = edge_tangent(e);
  return Vec2(t.y(), -t.x());
}

double Mesh::edge_length(const BoundaryEdge& e) const {
  return (nodes_[e.nodes[1]] - nodes_[e.nodes[0]]).norm();
}

double Mesh::signed_area(Index t) const {
  const auto& tri = triangles_[t];
  return triangle_signed_area(nodes_[tri[0]], nodes_[tri[1]], nodes_[tri[2]]);
}

double Mesh::total_area() const {
  double sum = 0.0;
  for (Index t = 0; t < num_triangles(); ++t) sum += signed_area(t);
  return sum;
}

double Mesh::min_area() const {
  double m = std::numeric_limits<double>::infinity();
  for (Index t = 0; t < num_triangles(); ++t) m = std::min(m, signed_area(t));
  return m;
}

double Mesh::diameter() const {
  if (reference_nodes_.empty()) return 0.0;
  Vec2 lo = reference_nodes_.front();
  Vec2 hi = lo;
  for (const auto& p : reference_nodes_) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  return (hi - lo).norm();
}

Mesh Mesh::deformed(std::span<const Vec2> vertex_displacement) const {
  if (static_cast<Index>(vertex_displacement.size()) != num_nodes()) {
    fail(ErrorKind::Dimension, "displacement size " + std::to_string(vertex_displacement.size()) +
                                   " does not match node count " + std::to_string(num_nodes()));
  }
  Mesh out = *this;
  for (Index i = 0; i < num_nodes(); ++i) {
    out.nodes_[i] = reference_nodes_[i] + vertex_displacement[i];
  }
  for (Index t = 0; t < num_triangles(); ++t) {
    double a = out.signed_area(t);
    if (!(a > 0.0)) {
      std::ostringstream msg;
      msg << "triangle " << t << " has area " << a << " after deformation";
      fail(ErrorKind::TangledMesh, msg.str());
    }
  }
  return out;
}

Mesh Mesh::reset() const {
  Mesh out = *this;
  out.nodes_ = reference_nodes_;
  return out;
}

Mesh deform_mesh(const Mesh& mesh, std::span<const Vec2> vertex_displacement) {
  return mesh.deformed(vertex_displacement);
}

Mesh reset_mesh(const Mesh& mesh) { return mesh.reset(); }

Mesh build_rect_mesh(const Rect& rect, Index nx, Index ny, Diagonal diagonal) {
  return build_masked_grid(rect, nx, ny, [](Index, Index) { return true; }, diagonal);
}

Mesh build_masked_grid(const Rect& rect, Index nx, Index ny,
                       const std::function<bool(Index, Index)>& keep, Diagonal diagonal) {
  if (nx < 1 || ny < 1) {
    fail(ErrorKind::InvalidGeometry, "cell counts must be at least 1");
  }
  if (!(rect.x1 > rect.x0) || !(rect.y1 > rect.y0) || !std::isfinite(rect.x1 - rect.x0) ||
      !std::isfinite(rect.y1 - rect.y0)) {
    fail(ErrorKind::InvalidGeometry, "degenerate rectangle");
  }
  const double hx = (rect.x1 - rect.x0) / static_cast<double>(nx);
  const double hy = (rect.y1 - rect.y0) / static_cast<double>(ny);
  std::vector<Index> node_id((nx + 1) * (ny + 1), -1);
  std::vector<Vec2> nodes;
  std::vector<std::array<Index, 3>> tris;
  auto grid = [&](Index i, Index j) -> Index {
    Index& id = node_id[j * (nx + 1) + i];
    if (id < 0) {
      id = static_cast<Index>(nodes.size());
      // Endpoints are placed exactly so that boundary predicates are robust.
      double x = (i == nx) ? rect.x1 : rect.x0 + hx * static_cast<double>(i);
      double y = (j == ny) ? rect.y1 : rect.y0 + hy * static_cast<double>(j);
      nodes.emplace_back(x, y);
    }
    return id;
  };
  // Nodes are numbered row by row for cache-friendly sparsity.
  for (Index j = 0; j <= ny; ++j) {
    for (Index i = 0; i <= nx; ++i) {
      bool used = false;
      for (Index dj = -1; dj <= 0 && !used; ++dj) {
        for (Index di = -1; di <= 0 && !used; ++di) {
          Index ci = i + di;
          Index cj = j + dj;
          if (ci >= 0 && cj >= 0 && ci < nx && cj < ny && keep(ci, cj)) used = true;
        }
      }
      if (used) grid(i, j);
    }
  }
  for (Index j = 0; j < ny; ++j) {
    for (Index i = 0; i < nx; ++i) {
      if (!keep(i, j)) continue;
      Index v00 = grid(i, j);
      Index v10 = grid(i + 1, j);
      Index v01 = grid(i, j + 1);
      Index v11 = grid(i + 1, j + 1);
      if (diagonal == Diagonal::LowerLeftUpperRight) {
        tris.push_back({v00, v10, v11});
        tris.push_back({v00, v11, v01});
      } else {
        tris.push_back({v00, v10, v01});
        tris.push_back({v10, v11, v01});
      }
    }
  }
  if (tris.empty()) fail(ErrorKind::InvalidGeometry, "mask removed every cell");
  return Mesh(std::move(nodes), std::move(tris));
}

Mesh merge_meshes(const Mesh& a, const Mesh& b) {
  std::vector<Vec2> nodes = a.reference_nodes();
  nodes.insert(nodes.end(), b.reference_nodes().begin(), b.reference_nodes().end());
  std::vector<std::array<Index, 3>> tris = a.triangles();
  const Index shift = a.num_nodes();
  for (auto t : b.triangles()) tris.push_back({t[0] + shift, t[1] + shift, t[2] + shift});
  return Mesh(std::move(nodes), std::move(tris));
}

Mesh mark_boundary(Mesh mesh, std::span<const BoundaryRule> rules) {
  const auto& nodes = mesh.reference_nodes();
  for (auto& e : mesh.boundary_edges()) {
    const Vec2& a = nodes[e.nodes[0]];
    const Vec2& b = nodes[e.nodes[1]];
    std::optional<Marker> found;
    for (const auto& rule : rules) {
      if (!rule.predicate(a, b)) continue;
      if (found) {
        std::ostringstream msg;
        msg << "edge (" << a.x() << "," << a.y() << ")-(" << b.x() << "," << b.y()
            << ") matches both " << to_string(*found) << " and " << to_string(rule.marker);
        fail(ErrorKind::AmbiguousMarking, msg.str());
      }
      found = rule.marker;
    }
    if (!found) {
      std::ostringstream msg;
      msg << "edge (" << a.x() << "," << a.y() << ")-(" << b.x() << "," << b.y()
          << ") matches no marking rule";
      fail(ErrorKind::MarkingIncomplete, msg.str());
    }
    e.marker = found;
  }
  return mesh;
}

EdgePredicate on_vertical_line(double x, double tol) {
  return [x, tol](const Vec2& a, const Vec2& b) {
    return std::abs(a.x() - x) <= tol && std::abs(b.x() - x) <= tol;
  };
}

EdgePredicate on_horizontal_line(double y, double tol) {
  return [y, tol](const Vec2& a, const Vec2& b) {
    return std::abs(a.y() - y) <= tol && std::abs(b.y() - y) <= tol;
  };
}

EdgePredicate inside_box(const Rect& box, double tol) {
  return [box, tol](const Vec2& a, const Vec2& b) {
    auto in = [&](const Vec2& p) {
      return p.x() >= box.x0 - tol && p.x() <= box.x1 + tol && p.y() >= box.y0 - tol &&
             p.y() <= box.y1 + tol;
    };
    return in(a) && in(b);
  };
}

EdgePredicate any_edge() {
  return [](const Vec2&, const Vec2&) { return true; };
}

EdgePredicate all_of(std::vector<EdgePredicate> predicates) {
  return [ps = std::move(predicates)](const Vec2& a, const Vec2& b) {
    return std::all_of(ps.begin(), ps.end(), [&](const EdgePredicate& p) { return p(a, b); });
  };
}

EdgePredicate any_of(std::vector<EdgePredicate> predicates) {
  return [ps = std::move(predicates)](const Vec2& a, const Vec2& b) {
    return std::any_of(ps.begin(), ps.end(), [&](const EdgePredicate& p) { return p(a, b); });
  };
}

EdgePredicate none_of(std::vector<EdgePredicate> predicates) {
  return [ps = std::move(predicates)](const Vec2& a, const Vec2& b) {
    return std::none_of(ps.begin(), ps.end(), [&](const EdgePredicate& p) { return p(a, b); });
  };
}

}  // namespace fpsi
