#pragma once

#include "fpsi/interface.hpp"
#include "fpsi/params.hpp"

namespace fpsi {

/// Step-n traces taken on the fluid side (orientation n_f).
struct FluidTraces {
  Index step = -1;
  ScalarTrace normal;      // u . n_f
  VectorTrace tangential;  // P_f u
};

/// Step-n traces taken on the solid side (orientation n_p).
struct BiotTraces {
  Index step = -1;
  ScalarTrace normal;      // xi . n_p
  VectorTrace tangential;  // P_p xi
  ScalarTrace pressure;    // phi
};

/// Robin interface data. R1, R2 live on fluid slots; R3, R4, R5 on solid
/// slots. All five come from step `step` states.
struct RobinData {
  Index step = -1;
  ScalarTrace R1;  // L u.n_f - phi
  VectorTrace R2;  // gamma P_f xi
  ScalarTrace R3;  // xi . n_p
  ScalarTrace R4;  // -u.n_p + phi / L
  VectorTrace R5;  // gamma P_p u
};

/// Throws Synchronization if the two trace sets carry different steps and
/// Dimension if a trace does not fit its side.
RobinData compute_robin_data(const FluidTraces& fluid, const BiotTraces& biot,
                             const InterfacePairing& pairing, const PhysicalParams& params);

}  // namespace fpsi
