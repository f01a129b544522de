#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "fpsi/dofmap.hpp"
#include "fpsi/mesh.hpp"
#include "fpsi/types.hpp"

namespace fpsi {

/// Bilinear form kernels. Vector forms use the component-blocked layout of
/// DofMap; rows index the test space, columns the trial space.
enum class Form {
  Mass,                  // (phi_j, phi_i), componentwise on vector spaces
  VectorMass,            // Mass restricted to 2-component spaces
  Stiffness,             // (grad phi_j, grad phi_i), componentwise
  SymGrad,               // 2 (D(u), D(v))
  DivPressure,           // (q, div v) or (div u, q) depending on which side is scalar
  GradDiv,               // (div u, div v)
  Convection,            // (b . grad u, v)
  BoundaryMass,          // <phi_j, phi_i> on a marker
  BoundaryNormal,        // <u . n, v . n>
  BoundaryTangent,       // <P u, P v>, P = tau tau^T
  BoundaryNormalScalar,  // <psi, v . n> or <u . n, psi>
};

struct FormSpec {
  Form kind;
  double coefficient = 1.0;
  std::optional<Marker> marker;      // required for boundary forms
  const Field* advection = nullptr;  // required for Convection (P1/P2 vector field)
  int quadrature_order = 0;          // 0 selects the default for the kind
};

struct BlockOffset {
  Index row = 0;
  Index col = 0;
};

/// Appends coefficient * form to `out` shifted by `offset`. Returns the
/// number of cells or edges integrated; a boundary form on an empty marker
/// contributes nothing and emits an empty-boundary warning.
Index add_form(std::vector<Triplet>& out, const FormSpec& spec, const Mesh& mesh,
               const DofMap& trial, const DofMap& test, BlockOffset offset = {});

/// Standalone matrix of size test.size() x trial.size().
SparseMatrix assemble_form(const FormSpec& spec, const Mesh& mesh, const DofMap& trial,
                           const DofMap& test);

/// Point on a boundary edge handed to boundary data callbacks. `s` runs from
/// the first to the second stored node; normal is outward, tangent follows
/// the stored order.
struct EdgePoint {
  Index boundary_edge = -1;
  double s = 0.0;
  Vec2 x = Vec2::Zero();
  Vec2 normal = Vec2::Zero();
  Vec2 tangent = Vec2::Zero();
};

using EdgeScalarFn = std::function<double(const EdgePoint&)>;
using EdgeVectorFn = std::function<Vec2(const EdgePoint&)>;

enum class Functional {
  DomainLoad,           // (f, v)
  BoundaryLoad,         // <g, v> on a marker
  BoundaryNormalLoad,   // <r, v . n>
  BoundaryTangentLoad,  // <r, P v>
  DivergenceSource,     // (g, q) on a scalar space
};

struct FunctionalSpec {
  Functional kind;
  std::optional<Marker> marker;
  std::variant<ScalarFn, VectorFn, EdgeScalarFn, EdgeVectorFn> data;
  int quadrature_order = 0;
};

/// Adds the functional into out[offset : offset + test.size()].
void add_functional(Eigen::Ref<Vector> out, const FunctionalSpec& spec, const Mesh& mesh,
                    const DofMap& test, Index offset = 0);

Vector assemble_functional(const FunctionalSpec& spec, const Mesh& mesh, const DofMap& test);

/// Geometry of one affine triangle.
struct CellGeometry {
  std::array<Vec2, 3> p;
  double area = 0.0;
  std::array<Vec2, 3> grad_lambda;

  CellGeometry(const Mesh& mesh, Index t);
  Vec2 map(const std::array<double, 3>& bary) const {
    return bary[0] * p[0] + bary[1] * p[1] + bary[2] * p[2];
  }
};

/// Physical gradients of the basis at one point, from barycentric derivatives.
inline Vec2 physical_gradient(const BasisValues& b, int i, const CellGeometry& g) {
  return b.dlambda[i][0] * g.grad_lambda[0] + b.dlambda[i][1] * g.grad_lambda[1] +
         b.dlambda[i][2] * g.grad_lambda[2];
}

}  // namespace fpsi
