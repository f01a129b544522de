#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fpsi/coupling.hpp"
#include "fpsi/params.hpp"
#include "fpsi/problem.hpp"

namespace fpsi {

/// Closed-form benchmark fields on Omega_f = (0,1)^2 and Omega_p = (0,1)x(-1,0).
/// Case 1 uses a(t) = e^t, Case 2 a(t) = sin(pi t + pi/4) in
/// phi = a(t) sin(pi x) cos(pi y / 2).
struct ExactSolution {
  int case_id = 1;
  VectorFieldFn eta;
  VectorFieldFn xi;
  ScalarFieldFn phi;
  VectorFieldFn u;
  ScalarFieldFn p;
};

/// Throws Argument for a case other than 1 or 2.
ExactSolution exact_solution(int case_id);

/// Forcings and boundary data obtained by substituting the exact fields into
/// the strong form with the given parameters.
struct Forcing {
  VectorFieldFn F_f;
  ScalarFieldFn g_f;
  VectorFieldFn F_e;
  ScalarFieldFn F_d;
  EdgeVectorFieldFn traction;  // sigma_f(u, p) n
  EdgeScalarFieldFn flux;      // K grad phi . n
};

/// Constant shifts added to the forcings (used to check that the residual
/// oracle attributes an error to the right equation).
struct ForcingOffsets {
  Vec2 fluid = Vec2::Zero();
  double divergence = 0.0;
  Vec2 solid = Vec2::Zero();
  double darcy = 0.0;
};

Forcing forcing_terms(int case_id, const PhysicalParams& params, const ForcingOffsets& offsets = {});

/// Problem data (forcing plus Dirichlet and Neumann data) for the benchmark.
ProblemData benchmark_problem(int case_id, const PhysicalParams& params);
InitialData benchmark_initial(int case_id);

/// Unit parameters of the benchmark with dt = 0.05 / n.
PhysicalParams benchmark_params(int n);

/// Marked benchmark meshes with nx = ny = cells per subdomain.
std::pair<Mesh, Mesh> benchmark_meshes(Index cells);

/// Max absolute strong-form residual per equation.
struct ResidualReport {
  double fluid_momentum = 0.0;
  double continuity = 0.0;
  double solid_momentum = 0.0;
  double darcy = 0.0;
  double kinematics = 0.0;
  double traction = 0.0;
  double flux = 0.0;

  double max() const;
  std::vector<std::pair<std::string, double>> entries() const;
};

/// Central differences of step h at `points` random interior points (fixed
/// seed) per subdomain, plus boundary points for the Neumann data.
ResidualReport residual_check(int case_id, double t, double h, int points,
                              const PhysicalParams& params, const ForcingOffsets& offsets = {},
                              std::uint32_t seed = 20240601u);

}  // namespace fpsi
