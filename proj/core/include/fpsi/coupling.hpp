#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fpsi/ale.hpp"
#include "fpsi/biot.hpp"
#include "fpsi/energy.hpp"
#include "fpsi/fluid.hpp"
#include "fpsi/robin.hpp"

namespace fpsi {

enum class Dispatch { Concurrent, Sequential, SequentialReversed };

struct ProblemData {
  FluidData fluid;
  BiotData biot;
};

/// Closed-form initial fields; empty functions mean zero.
struct InitialData {
  VectorFieldFn u;
  ScalarFieldFn p;
  VectorFieldFn eta;
  VectorFieldFn xi;
  ScalarFieldFn phi;
};

struct CoupledState {
  FluidState fluid;
  BiotState biot;
  // Moving-domain history: fluid-domain displacement at the previous step.
  std::optional<Field> eta_f_prev;
  Index step() const { return fluid.step; }
  double time() const { return fluid.u.time; }
};

struct InterfaceResiduals {
  double normal_flux = 0.0;     // Darcy rows: (xi + u_p - u) . n balance
  double bjs = 0.0;             // tangential fluid rows
  double stress = 0.0;          // normal fluid rows and solid rows
  double max() const;
};

struct FixedPointResult {
  CoupledState state;
  int iterations = 0;
  bool converged = false;
  std::vector<double> increments;  // L2(Gamma) trace change per iteration
  InterfaceResiduals residuals;
};

/// Loosely coupled Robin-Robin time stepper. On fixed domains (Stokes-Biot)
/// both subproblem matrices are factored once. With `moving`, the fluid is
/// Navier-Stokes in ALE form on a mesh moved by the harmonic extension of
/// the solid displacement.
class CoupledSolver {
 public:
  CoupledSolver(Mesh fluid_mesh, Mesh solid_mesh, PhysicalParams params,
                DiscretizationOptions options, bool moving = false);
  ~CoupledSolver();
  CoupledSolver(const CoupledSolver&) = delete;
  CoupledSolver& operator=(const CoupledSolver&) = delete;

  const Mesh& fluid_mesh() const { return *fluid_mesh_; }
  const Mesh& solid_mesh() const { return *solid_mesh_; }
  const InterfacePairing& pairing() const { return pairing_; }
  const FluidSpaces& fluid_spaces() const { return fluid_spaces_; }
  const BiotSpaces& biot_spaces() const { return biot_spaces_; }
  const PhysicalParams& params() const { return params_; }
  bool moving() const { return moving_; }

  CoupledState initial_state(const InitialData& init, double t0 = 0.0) const;

  /// Fluid-domain displacement for a solid state (moving mode only).
  Field fluid_domain_displacement(const BiotState& biot);
  /// Current fluid configuration for a state (reference mesh when fixed).
  Mesh current_fluid_mesh(const CoupledState& s);

  RobinData robin_data(const CoupledState& s, const Mesh& fluid_mesh_n) const;

  /// One loosely coupled step. Both subproblems receive immutable inputs;
  /// failures are rethrown with the task name prefixed.
  CoupledState advance_step(const CoupledState& s, const ProblemData& data,
                            Dispatch dispatch = Dispatch::Concurrent);

  /// Repeats the exchange inside one step with Robin data from the latest
  /// iterates until the interface traces change by less than `tol`.
  FixedPointResult fixed_point_iterate(const CoupledState& s, const ProblemData& data, double tol,
                                       int maxit);

  /// Weak interface residuals of a candidate step-(n+1) pair, measured with
  /// Robin data built from that same pair.
  InterfaceResiduals interface_residuals(const CoupledState& s_n, const CoupledState& s_next,
                                         const ProblemData& data);

 private:
  FluidState solve_fluid(const CoupledState& s, const Mesh& mesh_n, const Field* w,
                         const RobinData& r, const ProblemData& data, double t_next);

  std::unique_ptr<Mesh> fluid_mesh_;
  std::unique_ptr<Mesh> solid_mesh_;
  PhysicalParams params_;
  DiscretizationOptions options_;
  bool moving_;
  InterfacePairing pairing_;
  FluidSpaces fluid_spaces_;
  BiotSpaces biot_spaces_;
  std::unique_ptr<FluidSolver> fluid_;
  std::unique_ptr<BiotSolver> biot_;
  std::unique_ptr<HarmonicExtension> extension_;
};

}  // namespace fpsi
