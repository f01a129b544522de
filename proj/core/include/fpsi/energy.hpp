#pragma once

#include <vector>

#include "fpsi/biot.hpp"
#include "fpsi/fluid.hpp"
#include "fpsi/interface.hpp"
#include "fpsi/params.hpp"

namespace fpsi {

struct EnergyReport {
  Index step = 0;
  double time = 0.0;
  double E = 0.0;  // kinetic + elastic + storage energy
  double D = 0.0;  // cumulative fluid and Darcy dissipation
  double I = 0.0;  // interface energy
  double N = 0.0;  // cumulative numerical dissipation
  double force_fluid = 0.0;    // ||F_f||_f
  double traction = 0.0;       // ||g||_N
  double force_darcy = 0.0;    // ||F_d||_p
};

/// Energy terms of a single step.
double kinetic_elastic_energy(const FluidState& f, const BiotState& b, const Mesh& fluid_mesh,
                              const Mesh& solid_mesh, const PhysicalParams& p);
double dissipation_increment(const FluidState& f, const BiotState& b, const Mesh& fluid_mesh,
                             const Mesh& solid_mesh, const PhysicalParams& p);
double interface_energy(const FluidState& f, const BiotState& b, const Mesh& fluid_mesh,
                        const Mesh& solid_mesh, const InterfacePairing& pairing,
                        const PhysicalParams& p);
/// Contribution of step i to the numerical dissipation, from states i-1 and i.
double numerical_dissipation_increment(const FluidState& f_prev, const BiotState& b_prev,
                                       const FluidState& f, const BiotState& b,
                                       const Mesh& fluid_mesh, const Mesh& solid_mesh,
                                       const InterfacePairing& pairing, const PhysicalParams& p);

/// Accumulates reports step by step; keeps only the previous states.
class EnergyMonitor {
 public:
  EnergyMonitor(const Mesh& fluid_mesh, const Mesh& solid_mesh, const InterfacePairing& pairing,
                PhysicalParams params);

  const EnergyReport& record(const FluidState& f, const BiotState& b);
  const std::vector<EnergyReport>& history() const { return history_; }

 private:
  const Mesh* fluid_mesh_;
  const Mesh* solid_mesh_;
  const InterfacePairing* pairing_;
  PhysicalParams params_;
  std::optional<FluidState> prev_f_;
  std::optional<BiotState> prev_b_;
  double D_ = 0.0;
  double N_ = 0.0;
  std::vector<EnergyReport> history_;
};

/// Report for the last entry of a state history (index = step). Throws
/// InsufficientHistory if the histories are empty or of different lengths.
EnergyReport energy_report(const std::vector<FluidState>& fluid_history,
                           const std::vector<BiotState>& biot_history, const Mesh& fluid_mesh,
                           const Mesh& solid_mesh, const InterfacePairing& pairing,
                           const PhysicalParams& params);

/// L2 norms of closed-form data at time t.
double l2_norm_of(const VectorFieldFn& f, const Mesh& mesh, double t);
double l2_norm_of(const ScalarFieldFn& f, const Mesh& mesh, double t);
double boundary_l2_norm_of(const std::function<Vec2(const EdgePoint&, double)>& g,
                           const Mesh& mesh, Marker marker, double t);

}  // namespace fpsi
