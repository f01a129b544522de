#pragma once

#include <optional>

#include "fpsi/interface.hpp"
#include "fpsi/params.hpp"
#include "fpsi/problem.hpp"
#include "fpsi/robin.hpp"
#include "fpsi/sparse.hpp"

namespace fpsi {

struct BiotSpaces {
  DofMapPtr displacement;  // P2, 2 components (eta and xi)
  DofMapPtr pressure;      // P1
};

BiotSpaces make_biot_spaces(const Mesh& mesh);

struct BiotState {
  Field eta;
  Field xi;
  Field phi;
  Index step = 0;
};

BiotState zero_biot_state(const BiotSpaces& spaces, double t = 0.0);

/// Dirichlet dofs of the (xi, phi) block vector: xi on DIRICHLET_P,
/// NEUMANN_P and WALL; phi on DIRICHLET_P. Interface corners follow the
/// corner policy except on WALL edges.
std::vector<Index> biot_constrained_dofs(const Mesh& mesh, const BiotSpaces& spaces,
                                         const DiscretizationOptions& options);

/// One Biot step with eta eliminated through eta^{n+1} = eta^n + dt xi^{n+1}.
class BiotSolver {
 public:
  BiotSolver(const Mesh& mesh, InterfaceSide side, BiotSpaces spaces, PhysicalParams params,
             DiscretizationOptions options);

  const BiotSpaces& spaces() const { return spaces_; }
  const InterfaceSide& side() const { return side_; }

  BiotState step(const BiotState& state_n, const RobinData& robin, const BiotData& data,
                 double t_next);

  const SparseMatrix& lhs() const { return lhs_; }
  Vector rhs(const BiotState& state_n, const RobinData& robin, const BiotData& data,
             double t_next) const;
  Constraints dirichlet(const BiotData& data, double t_next) const;
  const std::vector<Index>& constrained() const { return constrained_; }

  /// 2 mu_p D:D + lambda_p div div on the displacement space.
  const SparseMatrix& elasticity() const { return elasticity_; }

  Vector pack(const BiotState& s) const;
  /// Unpacks (xi, phi) and applies the kinematic update.
  BiotState finish(const Vector& x, const BiotState& state_n, double t_next) const;

 private:
  const Mesh* mesh_;
  InterfaceSide side_;
  BiotSpaces spaces_;
  PhysicalParams params_;
  DiscretizationOptions options_;
  std::vector<Index> constrained_;
  SparseMatrix lhs_;
  SparseMatrix mass_u_;
  SparseMatrix mass_p_;
  SparseMatrix elasticity_;
  std::optional<EliminatedOperator> op_;
};

SparseSystem assemble_biot_step(const PhysicalParams& params, const DiscretizationOptions& options,
                                const Mesh& mesh, const InterfaceSide& side,
                                const BiotState& state_n, const RobinData& robin,
                                const BiotData& data, double t_next);

BiotState solve_biot_step(const SparseSystem& system, const BiotState& state_n, double dt,
                          double t_next);

/// xi . n_p, P_p xi and phi on the interface.
BiotTraces biot_interface_traces(const BiotState& state, const InterfaceSide& side,
                                 const Mesh& mesh);

}  // namespace fpsi
