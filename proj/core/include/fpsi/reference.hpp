#pragma once

#include <array>
#include <vector>

#include "fpsi/types.hpp"

namespace fpsi {

enum class Element { P1, P2 };

inline int nodes_per_cell(Element e) { return e == Element::P1 ? 3 : 6; }
inline int nodes_per_edge(Element e) { return e == Element::P1 ? 2 : 3; }

/// Basis values and gradients with respect to barycentric coordinates
/// (lambda_0, lambda_1, lambda_2). P2 local order: vertices 0,1,2 then edge
/// midpoints (0,1), (1,2), (2,0).
struct BasisValues {
  int count = 0;
  std::array<double, 6> value{};
  std::array<std::array<double, 3>, 6> dlambda{};
};

/// Evaluates the reference basis at a barycentric point. Throws Domain if the
/// point has a negative coordinate or the coordinates do not sum to one
/// within 1e-14.
BasisValues reference_basis(Element kind, const std::array<double, 3>& bary);

/// Same as reference_basis without validation (hot path).
BasisValues reference_basis_unchecked(Element kind, const std::array<double, 3>& bary);

/// 1D basis along an edge parameterized by s in [0, 1]; P2 order is
/// (start, end, midpoint).
std::array<double, 3> edge_basis(Element kind, double s);

struct QuadraturePoint {
  std::array<double, 3> bary;  // (1 - x - y, x, y) on the reference triangle
  double weight;               // weights sum to 1/2
};

/// Symmetric rule on the reference triangle exact for total degree `order`.
/// Supported orders are 1 through 6; anything else throws Capability.
const std::vector<QuadraturePoint>& quadrature_rule(int order);

struct GaussPoint {
  double s;       // in [0, 1]
  double weight;  // weights sum to 1
};

/// 5-point Gauss-Legendre rule on [0, 1] (exact to degree 9).
const std::array<GaussPoint, 5>& gauss_5();

}  // namespace fpsi
