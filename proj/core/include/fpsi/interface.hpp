#pragma once

#include <array>
#include <vector>

#include "fpsi/assembly.hpp"
#include "fpsi/dofmap.hpp"
#include "fpsi/mesh.hpp"

namespace fpsi {

/// Connected run of INTERFACE edges on one mesh.
struct InterfaceChain {
  std::vector<Index> slots;     // positions in InterfaceSide::edges, in chain order
  std::vector<char> forward;    // edge stored order agrees with chain direction
  std::vector<Index> vertices;  // slots.size() + 1 vertex ids (first repeated at end if closed)
  std::vector<double> sigma;    // normalized arclength at vertices, 0 .. 1
  double length = 0.0;
  bool closed = false;
};

/// Interface edges of one mesh. Each edge occupies one slot; traces are
/// stored per slot.
struct InterfaceSide {
  std::vector<Index> edges;           // slot -> boundary edge id
  std::vector<Index> slot_of_edge;    // boundary edge id -> slot or -1
  std::vector<InterfaceChain> chains;
  std::vector<std::pair<int, Index>> location;  // slot -> (chain, position)

  Index num_slots() const { return static_cast<Index>(edges.size()); }
};

/// Ordered, arclength-parameterized pairing of the fluid and solid sides.
/// Chain k of the fluid side traces the same curve, in the same direction,
/// as chain k of the solid side.
struct InterfacePairing {
  InterfaceSide fluid;
  InterfaceSide solid;
  bool matching = false;
  double tolerance = 0.0;
  // Filled when matching: partner slot on the other side and whether the
  // partner's stored order is reversed.
  std::vector<Index> fluid_partner;
  std::vector<char> fluid_partner_reversed;
  std::vector<Index> solid_partner;
  std::vector<char> solid_partner_reversed;
};

/// Builds the pairing from INTERFACE-marked edges of both meshes (reference
/// coordinates). tol < 0 selects 1e-10 times the larger mesh diameter.
/// Throws InterfaceMismatch if the curves differ beyond tol.
InterfacePairing extract_interface(const Mesh& fluid, const Mesh& solid, double tol = -1.0);

/// Side helper usable on its own (e.g. for one mesh in tests).
InterfaceSide build_interface_side(const Mesh& mesh);

/// Per-slot quadratic trace; values are (start, end, midpoint) in the
/// stored order of each boundary edge. Continuous fields give continuous
/// traces; normal components jump at corners.
struct ScalarTrace {
  std::vector<std::array<double, 3>> values;
  Index step = -1;

  ScalarTrace() = default;
  explicit ScalarTrace(Index slots, Index step_index = -1)
      : values(static_cast<size_t>(slots), {0.0, 0.0, 0.0}), step(step_index) {}
  Index size() const { return static_cast<Index>(values.size()); }
  double eval(Index slot, double s) const;
};

struct VectorTrace {
  ScalarTrace x;
  ScalarTrace y;

  VectorTrace() = default;
  explicit VectorTrace(Index slots, Index step_index = -1)
      : x(slots, step_index), y(slots, step_index) {}
  Index size() const { return x.size(); }
  Vec2 eval(Index slot, double s) const { return {x.eval(slot, s), y.eval(slot, s)}; }
};

enum class Direction { FluidToSolid, SolidToFluid };

/// Moves a trace from one side to the other by evaluating the source
/// piecewise quadratic at the target nodes' arclength positions. Matching
/// interfaces are copied through the slot permutation.
ScalarTrace interface_transfer(const ScalarTrace& values, const InterfacePairing& pairing,
                               Direction direction);
VectorTrace interface_transfer(const VectorTrace& values, const InterfacePairing& pairing,
                               Direction direction);

/// Traces of fields on one side. Geometry (normal, tangent) comes from the
/// mesh's current coordinates.
ScalarTrace scalar_trace(const Field& f, const InterfaceSide& side, const Mesh& mesh,
                         int component = 0);
VectorTrace vector_trace(const Field& u, const InterfaceSide& side, const Mesh& mesh);
ScalarTrace normal_trace(const Field& u, const InterfaceSide& side, const Mesh& mesh);
VectorTrace tangential_trace(const Field& u, const InterfaceSide& side, const Mesh& mesh);

/// Trace arithmetic (slot-wise).
ScalarTrace axpby(double a, const ScalarTrace& x, double b, const ScalarTrace& y);
VectorTrace axpby(double a, const VectorTrace& x, double b, const VectorTrace& y);

/// Integrals over the interface edges of `side` on the mesh's current geometry.
double trace_l2_norm_sq(const ScalarTrace& t, const InterfaceSide& side, const Mesh& mesh);
double trace_l2_norm_sq(const VectorTrace& t, const InterfaceSide& side, const Mesh& mesh);

/// Adapters for boundary functionals on Marker::Interface.
EdgeScalarFn as_edge_function(const ScalarTrace& t, const InterfaceSide& side);
EdgeVectorFn as_edge_function(const VectorTrace& t, const InterfaceSide& side);

}  // namespace fpsi
