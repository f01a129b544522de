#pragma once

#include <functional>

#include "fpsi/assembly.hpp"
#include "fpsi/types.hpp"

namespace fpsi {

using EdgeScalarFieldFn = std::function<double(const EdgePoint&, double)>;
using EdgeVectorFieldFn = std::function<Vec2(const EdgePoint&, double)>;

/// Data for the fluid subproblem. Empty functions mean zero.
struct FluidData {
  VectorFieldFn force;          // F_f
  ScalarFieldFn divergence;     // g_f in div u = g_f
  VectorFieldFn velocity;       // Dirichlet velocity on DIRICHLET_F (WALL is no-slip)
  EdgeVectorFieldFn traction;   // sigma_f n on NEUMANN_F
};

/// Data for the Biot subproblem. Empty functions mean zero.
struct BiotData {
  VectorFieldFn force;          // F_e
  ScalarFieldFn source;         // F_d
  VectorFieldFn velocity;       // xi on DIRICHLET_P and NEUMANN_P (WALL is xi = 0)
  ScalarFieldFn pressure;       // phi on DIRICHLET_P
  EdgeScalarFieldFn flux;       // K grad phi . n on NEUMANN_P (WALL is no-flux)
};

}  // namespace fpsi
