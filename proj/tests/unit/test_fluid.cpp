#include <gtest/gtest.h>

#include <cmath>

#include "fpsi/convergence.hpp"
#include "fpsi/coupling.hpp"
#include "fpsi/fluid.hpp"
#include "fpsi/manufactured.hpp"
#include "fpsi/norms.hpp"

using namespace fpsi;

namespace {

struct FluidFixture : ::testing::Test {
  Mesh fluid = benchmark_meshes(8).first;
  Mesh solid = benchmark_meshes(8).second;
  PhysicalParams params = benchmark_params(4);
  DiscretizationOptions options;
  InterfacePairing pairing = extract_interface(fluid, solid);
  FluidSpaces spaces = make_fluid_spaces(fluid);

  RobinData zero_robin() const {
    FluidTraces f{0, ScalarTrace(pairing.fluid.num_slots(), 0), VectorTrace(pairing.fluid.num_slots(), 0)};
    const Index ns = pairing.solid.num_slots();
    BiotTraces b{0, ScalarTrace(ns, 0), VectorTrace(ns, 0), ScalarTrace(ns, 0)};
    return compute_robin_data(f, b, pairing, params);
  }
};

double max_abs(const ScalarTrace& t) {
  double m = 0;
  for (const auto& v : t.values) {
    for (double x : v) m = std::max(m, std::abs(x));
  }
  return m;
}

}  // namespace

TEST_F(FluidFixture, ZeroDataGivesZeroSolution) {
  FluidSolver solver(fluid, pairing.fluid, spaces, params, options, false);
  const FluidState s = solver.step(fluid, zero_fluid_state(spaces), zero_robin(), nullptr, {}, params.dt);
  EXPECT_EQ(s.u.values.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(s.p.values.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(s.step, 1);
}

TEST_F(FluidFixture, TracesOfDownwardFlow) {
  FluidState s = zero_fluid_state(spaces);
  s.u = interpolate(VectorFn([](const Vec2&) { return Vec2(0, -1); }), spaces.velocity, fluid);
  const FluidTraces t = fluid_interface_traces(s, pairing.fluid, fluid);
  // n_f = (0, -1) on y = 0.
  for (const auto& v : t.normal.values) {
    for (double x : v) EXPECT_NEAR(x, 1.0, 1e-15);
  }
  EXPECT_LE(max_abs(t.tangential.x), 1e-15);
  EXPECT_LE(max_abs(t.tangential.y), 1e-15);
}

TEST_F(FluidFixture, TracesOfShearFlow) {
  FluidState s = zero_fluid_state(spaces);
  s.u = interpolate(VectorFn([](const Vec2&) { return Vec2(3, 0); }), spaces.velocity, fluid);
  const FluidTraces t = fluid_interface_traces(s, pairing.fluid, fluid);
  EXPECT_LE(max_abs(t.normal), 1e-15);
  for (const auto& v : t.tangential.x.values) {
    for (double x : v) EXPECT_NEAR(x, 3.0, 1e-14);
  }
  EXPECT_LE(max_abs(t.tangential.y), 1e-15);
}

TEST_F(FluidFixture, StokesVelocityBlockIsSymmetric) {
  FluidSolver solver(fluid, pairing.fluid, spaces, params, options, false);
  const SparseMatrix a = solver.lhs(fluid, zero_fluid_state(spaces), nullptr);
  const Index nu = spaces.velocity->size();
  const SparseMatrix auu = a.topLeftCorner(nu, nu);
  EXPECT_LE(SparseMatrix(auu - SparseMatrix(auu.transpose())).norm(), 1e-13 * auu.norm());
}

TEST_F(FluidFixture, ConvectionVanishesForZeroVelocity) {
  FluidSolver stokes(fluid, pairing.fluid, spaces, params, options, false);
  FluidSolver ns(fluid, pairing.fluid, spaces, params, options, true);
  const FluidState zero = zero_fluid_state(spaces);
  const SparseMatrix d = stokes.lhs(fluid, zero, nullptr) - ns.lhs(fluid, zero, nullptr);
  EXPECT_EQ(d.cwiseAbs().sum(), 0.0);
}

TEST_F(FluidFixture, RobinDataOnlyEntersInterfaceRows) {
  FluidSolver solver(fluid, pairing.fluid, spaces, params, options, false);
  const FluidState zero = zero_fluid_state(spaces);
  RobinData r = zero_robin();
  const Vector b0 = solver.rhs(fluid, zero, r, {}, params.dt);
  for (auto& v : r.R1.values) v = {2.0, 2.0, 2.0};
  for (auto& v : r.R2.x.values) v = {1.0, 1.0, 1.0};
  const Vector b1 = solver.rhs(fluid, zero, r, {}, params.dt);
  const Vector d = b1 - b0;
  EXPECT_GT(d.cwiseAbs().maxCoeff(), 0.0);
  // Pressure rows and dofs away from y = 0 are untouched.
  EXPECT_EQ(d.tail(spaces.pressure->size()).cwiseAbs().maxCoeff(), 0.0);
  const auto xs = spaces.velocity->node_coordinates(fluid);
  for (Index i = 0; i < spaces.velocity->num_nodes(); ++i) {
    if (xs[i].y() > 1e-12) {
      EXPECT_EQ(d[spaces.velocity->dof(0, i)], 0.0);
      EXPECT_EQ(d[spaces.velocity->dof(1, i)], 0.0);
    }
  }
}

TEST_F(FluidFixture, DiscreteContinuityHolds) {
  const ProblemData data = benchmark_problem(1, params);
  FluidSolver solver(fluid, pairing.fluid, spaces, params, options, false);
  CoupledSolver coupled(fluid, solid, params, options);
  const CoupledState init = coupled.initial_state(benchmark_initial(1));
  const RobinData r = coupled.robin_data(init, fluid);
  const FluidState next = solver.step(fluid, init.fluid, r, nullptr, data.fluid, params.dt);
  const SparseMatrix a = solver.lhs(fluid, init.fluid, nullptr);
  const Vector res = solver.rhs(fluid, init.fluid, r, data.fluid, params.dt) - a * solver.pack(next);
  const Index np = spaces.pressure->size();
  EXPECT_LE(res.tail(np).cwiseAbs().maxCoeff(), 1e-12);
}

namespace {

ErrorRow single_step_errors(int n) {
  const PhysicalParams p = benchmark_params(n);
  auto [f, s] = benchmark_meshes(2 * n);
  CoupledSolver coupled(std::move(f), std::move(s), p, {});
  const CoupledState next =
      coupled.advance_step(coupled.initial_state(benchmark_initial(1)), benchmark_problem(1, p));
  return error_norms(coupled, next, 1);
}

}  // namespace

TEST(FluidStep, SingleStepErrorShrinksUnderRefinement) {
  const ErrorRow coarse = single_step_errors(4), fine = single_step_errors(8);
  EXPECT_LT(coarse.e[3], 2e-2);
  EXPECT_LT(fine.e[3], 0.6 * coarse.e[3]);
  EXPECT_LT(fine.e[4], 0.6 * coarse.e[4]);
}
