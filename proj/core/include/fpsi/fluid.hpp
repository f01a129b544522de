#pragma once

#include <optional>

#include "fpsi/interface.hpp"
#include "fpsi/params.hpp"
#include "fpsi/problem.hpp"
#include "fpsi/robin.hpp"
#include "fpsi/sparse.hpp"

namespace fpsi {

/// Taylor-Hood pair on the fluid mesh.
struct FluidSpaces {
  DofMapPtr velocity;  // P2, 2 components
  DofMapPtr pressure;  // P1
};

FluidSpaces make_fluid_spaces(const Mesh& mesh);

struct FluidState {
  Field u;
  Field p;
  Index step = 0;
};

FluidState zero_fluid_state(const FluidSpaces& spaces, double t = 0.0);

/// Velocity dofs with Dirichlet conditions: DIRICHLET_F and WALL edges, with
/// interface corners released under CornerPolicy::InterfacePrecedence (WALL
/// always wins). Returns sorted dof ids into the (u, p) block vector.
std::vector<Index> fluid_constrained_dofs(const Mesh& mesh, const FluidSpaces& spaces,
                                          const DiscretizationOptions& options);

/// One backward-Euler fluid step assembled on `mesh_n` (the current, possibly
/// deformed, configuration). Dirichlet rows are eliminated.
SparseSystem assemble_fluid_step(const PhysicalParams& params, const DiscretizationOptions& options,
                                 const Mesh& mesh_n, const InterfaceSide& side,
                                 const FluidState& state_n, const RobinData& robin,
                                 const Field* w_n, bool convective, const FluidData& data,
                                 double t_next);

/// Solves an assembled fluid system and unpacks (u, p), stamped step n+1.
FluidState solve_fluid_step(const SparseSystem& system, const FluidState& state_n,
                            const Mesh& mesh_n, const DiscretizationOptions& options,
                            double t_next);

/// u . n_f and P_f u on the interface.
FluidTraces fluid_interface_traces(const FluidState& state, const InterfaceSide& side,
                                   const Mesh& mesh);

/// Fluid step with cached operators. On a fixed mesh without convection the
/// left-hand side is assembled and factored once.
class FluidSolver {
 public:
  FluidSolver(const Mesh& reference_mesh, InterfaceSide side, FluidSpaces spaces,
              PhysicalParams params, DiscretizationOptions options, bool convective);

  const FluidSpaces& spaces() const { return spaces_; }
  const InterfaceSide& side() const { return side_; }

  FluidState step(const Mesh& mesh_n, const FluidState& state_n, const RobinData& robin,
                  const Field* w_n, const FluidData& data, double t_next);

  /// Left-hand side before Dirichlet elimination.
  SparseMatrix lhs(const Mesh& mesh_n, const FluidState& state_n, const Field* w_n) const;
  /// Right-hand side before Dirichlet elimination.
  Vector rhs(const Mesh& mesh_n, const FluidState& state_n, const RobinData& robin,
             const FluidData& data, double t_next) const;
  Constraints dirichlet(const Mesh& mesh_n, const FluidData& data, double t_next) const;
  const std::vector<Index>& constrained() const { return constrained_; }

  /// Block vector (u, p) of a state.
  Vector pack(const FluidState& s) const;

 private:
  InterfaceSide side_;
  FluidSpaces spaces_;
  PhysicalParams params_;
  DiscretizationOptions options_;
  bool convective_;
  std::vector<Index> constrained_;
  Index pin_ = -1;  // pinned pressure dof for the mean-zero option
  SparseMatrix mass_;  // cached velocity mass on the reference mesh
  std::optional<EliminatedOperator> fixed_;
};

}  // namespace fpsi
