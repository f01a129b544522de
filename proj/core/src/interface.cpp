#include "fpsi/interface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "fpsi/error.hpp"

namespace fpsi {

namespace {

/// Lexicographic order on reference coordinates with a small tolerance so
/// that both sides of an interface agree on chain starts.
bool lex_less(const Vec2& a, const Vec2& b, double tol) {
  if (std::abs(a.x() - b.x()) > tol) return a.x() < b.x();
  if (std::abs(a.y() - b.y()) > tol) return a.y() < b.y();
  return false;
}

void reverse_chain(InterfaceChain& c) {
  std::reverse(c.slots.begin(), c.slots.end());
  std::reverse(c.forward.begin(), c.forward.end());
  for (auto& f : c.forward) f = !f;
  std::reverse(c.vertices.begin(), c.vertices.end());
}

void finish_chain(InterfaceChain& c, const Mesh& mesh) {
  const auto& x = mesh.reference_nodes();
  c.sigma.assign(c.vertices.size(), 0.0);
  for (size_t i = 1; i < c.vertices.size(); ++i) {
    c.sigma[i] = c.sigma[i - 1] + (x[c.vertices[i]] - x[c.vertices[i - 1]]).norm();
  }
  c.length = c.sigma.back();
  for (auto& s : c.sigma) s /= c.length;
  c.sigma.back() = 1.0;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 d = b - a;
  const double len2 = d.squaredNorm();
  double t = len2 > 0.0 ? (p - a).dot(d) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + t * d)).norm();
}

double distance_to_chain(const Vec2& p, const InterfaceChain& c, const Mesh& mesh) {
  const auto& x = mesh.reference_nodes();
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < c.vertices.size(); ++i) {
    best = std::min(best, point_segment_distance(p, x[c.vertices[i]], x[c.vertices[i + 1]]));
  }
  return best;
}

}  // namespace

InterfaceSide build_interface_side(const Mesh& mesh) {
  InterfaceSide side;
  side.edges = mesh.boundary_edges_with(Marker::Interface);
  side.slot_of_edge.assign(mesh.boundary_edges().size(), -1);
  for (Index s = 0; s < side.num_slots(); ++s) side.slot_of_edge[side.edges[s]] = s;
  if (side.edges.empty()) return side;

  const auto& x = mesh.reference_nodes();
  const double tol = 1e-9 * std::max(mesh.diameter(), 1e-300);
  std::map<Index, std::vector<Index>> incident;
  for (Index s = 0; s < side.num_slots(); ++s) {
    const auto& e = mesh.boundary_edges()[side.edges[s]];
    incident[e.nodes[0]].push_back(s);
    incident[e.nodes[1]].push_back(s);
  }
  for (const auto& [v, slots] : incident) {
    if (slots.size() > 2) {
      fail(ErrorKind::InvalidGeometry, "interface branches at node " + std::to_string(v));
    }
  }
  std::vector<char> used(side.edges.size(), 0);
  auto other = [&](Index slot, Index v) {
    const auto& e = mesh.boundary_edges()[side.edges[slot]];
    return e.nodes[0] == v ? e.nodes[1] : e.nodes[0];
  };
  auto walk = [&](Index start, Index first_slot, bool closed) {
    InterfaceChain c;
    c.closed = closed;
    Index v = start;
    Index slot = first_slot;
    c.vertices.push_back(v);
    while (slot >= 0 && !used[slot]) {
      used[slot] = 1;
      const auto& e = mesh.boundary_edges()[side.edges[slot]];
      c.slots.push_back(slot);
      c.forward.push_back(e.nodes[0] == v ? 1 : 0);
      v = other(slot, v);
      c.vertices.push_back(v);
      Index next = -1;
      for (Index s : incident[v]) {
        if (!used[s]) next = s;
      }
      slot = next;
    }
    return c;
  };

  // Open chains first, each started at its lexicographically smaller end.
  std::vector<Index> ends;
  for (const auto& [v, slots] : incident) {
    if (slots.size() == 1) ends.push_back(v);
  }
  std::sort(ends.begin(), ends.end(), [&](Index a, Index b) { return lex_less(x[a], x[b], tol); });
  for (Index v : ends) {
    const Index s = incident[v][0];
    if (used[s]) continue;
    InterfaceChain c = walk(v, s, false);
    if (lex_less(x[c.vertices.back()], x[c.vertices.front()], tol)) reverse_chain(c);
    side.chains.push_back(std::move(c));
  }
  // Closed loops start at their lexicographically smallest node and step
  // toward the smaller of its two neighbours.
  while (true) {
    Index start = -1;
    for (const auto& [v, slots] : incident) {
      bool open = std::any_of(slots.begin(), slots.end(), [&](Index s) { return !used[s]; });
      if (open && (start < 0 || lex_less(x[v], x[start], tol))) start = v;
    }
    if (start < 0) break;
    const auto& slots = incident[start];
    Index first = slots[0];
    if (slots.size() == 2 && lex_less(x[other(slots[1], start)], x[other(slots[0], start)], tol)) {
      first = slots[1];
    }
    side.chains.push_back(walk(start, first, true));
  }
  for (auto& c : side.chains) finish_chain(c, mesh);
  std::sort(side.chains.begin(), side.chains.end(), [&](const auto& a, const auto& b) {
    return lex_less(x[a.vertices.front()], x[b.vertices.front()], tol);
  });
  side.location.assign(side.edges.size(), {-1, -1});
  for (int k = 0; k < static_cast<int>(side.chains.size()); ++k) {
    const auto& c = side.chains[k];
    for (Index i = 0; i < static_cast<Index>(c.slots.size()); ++i) side.location[c.slots[i]] = {k, i};
  }
  return side;
}

InterfacePairing extract_interface(const Mesh& fluid, const Mesh& solid, double tol) {
  if (tol < 0.0) tol = 1e-10 * std::max(fluid.diameter(), solid.diameter());
  InterfacePairing p;
  p.tolerance = tol;
  p.fluid = build_interface_side(fluid);
  p.solid = build_interface_side(solid);
  if (p.fluid.edges.empty() || p.solid.edges.empty()) {
    fail(ErrorKind::InterfaceMismatch, "both meshes need at least one INTERFACE edge");
  }
  const auto& xf = fluid.reference_nodes();
  const auto& xs = solid.reference_nodes();
  if (p.fluid.chains.size() != p.solid.chains.size()) {
    fail(ErrorKind::InterfaceMismatch, "fluid side has " + std::to_string(p.fluid.chains.size()) +
                                           " interface curves, solid side has " +
                                           std::to_string(p.solid.chains.size()));
  }
  // Pair chains by their start and end points.
  std::vector<InterfaceChain> ordered;
  std::vector<char> taken(p.solid.chains.size(), 0);
  for (const auto& fc : p.fluid.chains) {
    const Vec2 a = xf[fc.vertices.front()];
    const Vec2 b = xf[fc.vertices.back()];
    int found = -1;
    bool reversed = false;
    for (size_t k = 0; k < p.solid.chains.size() && found < 0; ++k) {
      if (taken[k]) continue;
      const auto& sc = p.solid.chains[k];
      if (sc.closed != fc.closed) continue;
      const Vec2 sa = xs[sc.vertices.front()];
      const Vec2 sb = xs[sc.vertices.back()];
      if ((sa - a).norm() <= tol && (sb - b).norm() <= tol) {
        found = static_cast<int>(k);
      } else if (!fc.closed && (sb - a).norm() <= tol && (sa - b).norm() <= tol) {
        found = static_cast<int>(k);
        reversed = true;
      }
    }
    if (found < 0) {
      std::ostringstream msg;
      msg << "no solid interface curve starts at (" << a.x() << ", " << a.y() << ")";
      fail(ErrorKind::InterfaceMismatch, msg.str());
    }
    taken[found] = 1;
    InterfaceChain sc = p.solid.chains[found];
    if (reversed) reverse_chain(sc);
    if (fc.closed) {
      const Vec2 df = xf[fc.vertices[1]] - a;
      const Vec2 ds = xs[sc.vertices[1]] - xs[sc.vertices[0]];
      if (df.dot(ds) < 0.0) {
        reverse_chain(sc);
      }
    }
    // Hausdorff check in both directions.
    for (Index v : fc.vertices) {
      if (distance_to_chain(xf[v], sc, solid) > tol) {
        std::ostringstream msg;
        msg << "fluid interface node (" << xf[v].x() << ", " << xf[v].y()
            << ") is off the solid interface";
        fail(ErrorKind::InterfaceMismatch, msg.str());
      }
    }
    for (Index v : sc.vertices) {
      if (distance_to_chain(xs[v], fc, fluid) > tol) {
        std::ostringstream msg;
        msg << "solid interface node (" << xs[v].x() << ", " << xs[v].y()
            << ") is off the fluid interface";
        fail(ErrorKind::InterfaceMismatch, msg.str());
      }
    }
    finish_chain(sc, solid);
    ordered.push_back(std::move(sc));
  }
  p.solid.chains = std::move(ordered);
  for (int k = 0; k < static_cast<int>(p.solid.chains.size()); ++k) {
    const auto& c = p.solid.chains[k];
    for (Index i = 0; i < static_cast<Index>(c.slots.size()); ++i) p.solid.location[c.slots[i]] = {k, i};
  }

  p.matching = true;
  for (size_t k = 0; k < p.fluid.chains.size() && p.matching; ++k) {
    const auto& fc = p.fluid.chains[k];
    const auto& sc = p.solid.chains[k];
    if (fc.vertices.size() != sc.vertices.size()) {
      p.matching = false;
      break;
    }
    for (size_t i = 0; i < fc.vertices.size(); ++i) {
      if ((xf[fc.vertices[i]] - xs[sc.vertices[i]]).norm() > tol) {
        p.matching = false;
        break;
      }
    }
  }
  if (p.matching) {
    p.fluid_partner.assign(p.fluid.edges.size(), -1);
    p.fluid_partner_reversed.assign(p.fluid.edges.size(), 0);
    p.solid_partner.assign(p.solid.edges.size(), -1);
    p.solid_partner_reversed.assign(p.solid.edges.size(), 0);
    for (size_t k = 0; k < p.fluid.chains.size(); ++k) {
      const auto& fc = p.fluid.chains[k];
      const auto& sc = p.solid.chains[k];
      for (size_t i = 0; i < fc.slots.size(); ++i) {
        const char rev = fc.forward[i] != sc.forward[i];
        p.fluid_partner[fc.slots[i]] = sc.slots[i];
        p.fluid_partner_reversed[fc.slots[i]] = rev;
        p.solid_partner[sc.slots[i]] = fc.slots[i];
        p.solid_partner_reversed[sc.slots[i]] = rev;
      }
    }
  }
  return p;
}

double ScalarTrace::eval(Index slot, double s) const {
  const auto& v = values[static_cast<size_t>(slot)];
  const auto b = edge_basis(Element::P2, s);
  return b[0] * v[0] + b[1] * v[1] + b[2] * v[2];
}

namespace {

/// Evaluates a source trace at normalized chain position sigma; `hint` is
/// the target edge's centre, used to pick the source edge at shared vertices.
double eval_at(const ScalarTrace& src, const InterfaceChain& chain, double sigma, double hint) {
  const auto& sg = chain.sigma;
  const Index m = static_cast<Index>(chain.slots.size());
  auto locate = [&](double s) {
    Index j = static_cast<Index>(std::upper_bound(sg.begin(), sg.end(), s) - sg.begin()) - 1;
    return std::clamp<Index>(j, 0, m - 1);
  };
  constexpr double eps = 1e-12;
  Index j = locate(hint);
  if (sigma < sg[j] - eps || sigma > sg[j + 1] + eps) j = locate(sigma);
  double lambda = (sigma - sg[j]) / (sg[j + 1] - sg[j]);
  lambda = std::clamp(lambda, 0.0, 1.0);
  const double s = chain.forward[j] ? lambda : 1.0 - lambda;
  return src.eval(chain.slots[j], s);
}

}  // namespace

ScalarTrace interface_transfer(const ScalarTrace& values, const InterfacePairing& pairing,
                               Direction direction) {
  const bool to_solid = direction == Direction::FluidToSolid;
  const InterfaceSide& src = to_solid ? pairing.fluid : pairing.solid;
  const InterfaceSide& dst = to_solid ? pairing.solid : pairing.fluid;
  if (values.size() != src.num_slots()) {
    fail(ErrorKind::Dimension, "trace has " + std::to_string(values.size()) +
                                   " edges, interface side has " +
                                   std::to_string(src.num_slots()));
  }
  ScalarTrace out(dst.num_slots(), values.step);
  if (pairing.matching) {
    const auto& partner = to_solid ? pairing.solid_partner : pairing.fluid_partner;
    const auto& rev = to_solid ? pairing.solid_partner_reversed : pairing.fluid_partner_reversed;
    for (Index s = 0; s < dst.num_slots(); ++s) {
      const auto& v = values.values[partner[s]];
      out.values[s] = rev[s] ? std::array<double, 3>{v[1], v[0], v[2]} : v;
    }
    return out;
  }
  for (Index s = 0; s < dst.num_slots(); ++s) {
    const auto [k, i] = dst.location[s];
    const auto& dc = dst.chains[k];
    const double a = dc.sigma[i];
    const double b = dc.sigma[i + 1];
    const double start = dc.forward[i] ? a : b;
    const double end = dc.forward[i] ? b : a;
    const double mid = 0.5 * (a + b);
    const auto& sc = src.chains[k];
    out.values[s] = {eval_at(values, sc, start, mid), eval_at(values, sc, end, mid),
                     eval_at(values, sc, mid, mid)};
  }
  return out;
}

VectorTrace interface_transfer(const VectorTrace& values, const InterfacePairing& pairing,
                               Direction direction) {
  VectorTrace out;
  out.x = interface_transfer(values.x, pairing, direction);
  out.y = interface_transfer(values.y, pairing, direction);
  return out;
}

namespace {

std::array<double, 3> node_values(const Field& f, const BoundaryEdge& e, int component) {
  const DofMap& dm = *f.space;
  const auto nodes = dm.edge_nodes(e);
  const double a = f.values[dm.dof(component, nodes[0])];
  const double b = f.values[dm.dof(component, nodes[1])];
  const double m = nodes[2] >= 0 ? f.values[dm.dof(component, nodes[2])] : 0.5 * (a + b);
  return {a, b, m};
}

void check_field(const Field& f, const Mesh& mesh, int components) {
  if (!f.space || f.space->num_triangles() != mesh.num_triangles()) {
    fail(ErrorKind::Dimension, "field does not live on the interface mesh");
  }
  if (f.space->components() < components) {
    fail(ErrorKind::Dimension, "field has too few components for this trace");
  }
}

}  // namespace

ScalarTrace scalar_trace(const Field& f, const InterfaceSide& side, const Mesh& mesh,
                         int component) {
  check_field(f, mesh, component + 1);
  ScalarTrace out(side.num_slots());
  for (Index s = 0; s < side.num_slots(); ++s) {
    out.values[s] = node_values(f, mesh.boundary_edges()[side.edges[s]], component);
  }
  return out;
}

VectorTrace vector_trace(const Field& u, const InterfaceSide& side, const Mesh& mesh) {
  VectorTrace out;
  out.x = scalar_trace(u, side, mesh, 0);
  out.y = scalar_trace(u, side, mesh, 1);
  return out;
}

ScalarTrace normal_trace(const Field& u, const InterfaceSide& side, const Mesh& mesh) {
  check_field(u, mesh, 2);
  ScalarTrace out(side.num_slots());
  for (Index s = 0; s < side.num_slots(); ++s) {
    const auto& e = mesh.boundary_edges()[side.edges[s]];
    const Vec2 n = mesh.edge_normal(e);
    const auto ux = node_values(u, e, 0);
    const auto uy = node_values(u, e, 1);
    for (int k = 0; k < 3; ++k) out.values[s][k] = ux[k] * n.x() + uy[k] * n.y();
  }
  return out;
}

VectorTrace tangential_trace(const Field& u, const InterfaceSide& side, const Mesh& mesh) {
  check_field(u, mesh, 2);
  VectorTrace out(side.num_slots());
  for (Index s = 0; s < side.num_slots(); ++s) {
    const auto& e = mesh.boundary_edges()[side.edges[s]];
    const Vec2 t = mesh.edge_tangent(e);
    const auto ux = node_values(u, e, 0);
    const auto uy = node_values(u, e, 1);
    for (int k = 0; k < 3; ++k) {
      const double ut = ux[k] * t.x() + uy[k] * t.y();
      out.x.values[s][k] = ut * t.x();
      out.y.values[s][k] = ut * t.y();
    }
  }
  return out;
}

ScalarTrace axpby(double a, const ScalarTrace& x, double b, const ScalarTrace& y) {
  if (x.size() != y.size()) fail(ErrorKind::Dimension, "trace sizes differ");
  ScalarTrace out(x.size(), x.step);
  for (Index s = 0; s < x.size(); ++s)
    for (int k = 0; k < 3; ++k) out.values[s][k] = a * x.values[s][k] + b * y.values[s][k];
  return out;
}

VectorTrace axpby(double a, const VectorTrace& x, double b, const VectorTrace& y) {
  VectorTrace out;
  out.x = axpby(a, x.x, b, y.x);
  out.y = axpby(a, x.y, b, y.y);
  return out;
}

double trace_l2_norm_sq(const ScalarTrace& t, const InterfaceSide& side, const Mesh& mesh) {
  if (t.size() != side.num_slots()) fail(ErrorKind::Dimension, "trace size mismatch");
  double sum = 0.0;
  for (Index s = 0; s < side.num_slots(); ++s) {
    const double len = mesh.edge_length(mesh.boundary_edges()[side.edges[s]]);
    for (const auto& g : gauss_5()) {
      const double v = t.eval(s, g.s);
      sum += len * g.weight * v * v;
    }
  }
  return sum;
}

double trace_l2_norm_sq(const VectorTrace& t, const InterfaceSide& side, const Mesh& mesh) {
  return trace_l2_norm_sq(t.x, side, mesh) + trace_l2_norm_sq(t.y, side, mesh);
}

EdgeScalarFn as_edge_function(const ScalarTrace& t, const InterfaceSide& side) {
  return [t, slots = side.slot_of_edge](const EdgePoint& p) {
    const Index s = slots[static_cast<size_t>(p.boundary_edge)];
    if (s < 0) fail(ErrorKind::CouplingData, "no interface trace on boundary edge");
    return t.eval(s, p.s);
  };
}

EdgeVectorFn as_edge_function(const VectorTrace& t, const InterfaceSide& side) {
  return [t, slots = side.slot_of_edge](const EdgePoint& p) {
    const Index s = slots[static_cast<size_t>(p.boundary_edge)];
    if (s < 0) fail(ErrorKind::CouplingData, "no interface trace on boundary edge");
    return t.eval(s, p.s);
  };
}

}  // namespace fpsi
