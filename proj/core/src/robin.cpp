#include "fpsi/robin.hpp"

#include "fpsi/error.hpp"

namespace fpsi {

RobinData compute_robin_data(const FluidTraces& fluid, const BiotTraces& biot,
                             const InterfacePairing& pairing, const PhysicalParams& params) {
  if (fluid.step != biot.step) {
    fail(ErrorKind::Synchronization, "fluid traces are from step " + std::to_string(fluid.step) +
                                         ", Biot traces from step " + std::to_string(biot.step));
  }
  const Index nf = pairing.fluid.num_slots();
  const Index ns = pairing.solid.num_slots();
  if (fluid.normal.size() != nf || fluid.tangential.size() != nf || biot.normal.size() != ns ||
      biot.tangential.size() != ns || biot.pressure.size() != ns) {
    fail(ErrorKind::Dimension, "interface traces do not match the pairing");
  }
  const double L = params.L;
  const double g = params.gamma;
  const ScalarTrace phi_f = interface_transfer(biot.pressure, pairing, Direction::SolidToFluid);
  const VectorTrace xi_t_f = interface_transfer(biot.tangential, pairing, Direction::SolidToFluid);
  // u . n_p = -u . n_f on the shared curve.
  const ScalarTrace un_s = interface_transfer(fluid.normal, pairing, Direction::FluidToSolid);
  const VectorTrace ut_s = interface_transfer(fluid.tangential, pairing, Direction::FluidToSolid);

  RobinData r;
  r.step = fluid.step;
  r.R1 = axpby(L, fluid.normal, -1.0, phi_f);
  r.R2 = axpby(g, xi_t_f, 0.0, xi_t_f);
  r.R3 = biot.normal;
  r.R4 = axpby(1.0, un_s, 1.0 / L, biot.pressure);
  r.R5 = axpby(g, ut_s, 0.0, ut_s);
  for (ScalarTrace* t : {&r.R1, &r.R2.x, &r.R2.y, &r.R3, &r.R4, &r.R5.x, &r.R5.y}) t->step = r.step;
  return r;
}

}  // namespace fpsi
