#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "fpsi/coupling.hpp"
#include "fpsi/energy.hpp"
#include "fpsi/error.hpp"
#include "fpsi/manufactured.hpp"
#include "fpsi/robin.hpp"

using namespace fpsi;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Io;
}

ScalarTrace constant(Index slots, double v, Index step = 0) {
  ScalarTrace t(slots, step);
  for (auto& x : t.values) x = {v, v, v};
  return t;
}

void expect_constant(const ScalarTrace& t, double v) {
  for (const auto& x : t.values) {
    for (double y : x) EXPECT_NEAR(y, v, 1e-14);
  }
}

double max_diff(const Vector& a, const Vector& b) { return (a - b).cwiseAbs().maxCoeff(); }

double max_diff(const CoupledState& a, const CoupledState& b) {
  return std::max({max_diff(a.fluid.u.values, b.fluid.u.values), max_diff(a.fluid.p.values, b.fluid.p.values),
                   max_diff(a.biot.eta.values, b.biot.eta.values), max_diff(a.biot.xi.values, b.biot.xi.values),
                   max_diff(a.biot.phi.values, b.biot.phi.values)});
}

struct CouplingFixture : ::testing::Test {
  PhysicalParams params = benchmark_params(4);
  Mesh fluid = benchmark_meshes(8).first;
  Mesh solid = benchmark_meshes(8).second;
  InterfacePairing pairing = extract_interface(fluid, solid);
  Index nf = pairing.fluid.num_slots();
  Index ns = pairing.solid.num_slots();
};

}  // namespace

TEST_F(CouplingFixture, RobinDataExamples) {
  params.L = 1.0;
  params.gamma = 2.0;
  FluidTraces f{0, constant(nf, 2.0), VectorTrace(nf, 0)};
  BiotTraces b{0, ScalarTrace(ns, 0), VectorTrace(ns, 0), constant(ns, 3.0)};
  b.tangential.x = constant(ns, 5.0);
  const RobinData r = compute_robin_data(f, b, pairing, params);
  expect_constant(r.R1, -1.0);
  expect_constant(r.R4, 5.0);
  expect_constant(r.R2.x, 10.0);
  expect_constant(r.R2.y, 0.0);
  EXPECT_EQ(r.step, 0);
}

TEST_F(CouplingFixture, RobinDataRejectsMixedSteps) {
  FluidTraces f{3, ScalarTrace(nf, 3), VectorTrace(nf, 3)};
  BiotTraces b{2, ScalarTrace(ns, 2), VectorTrace(ns, 2), ScalarTrace(ns, 2)};
  EXPECT_EQ(kind_of([&] { compute_robin_data(f, b, pairing, params); }), ErrorKind::Synchronization);
}

TEST_F(CouplingFixture, RobinDataRejectsWrongSize) {
  FluidTraces f{0, ScalarTrace(nf + 1, 0), VectorTrace(nf, 0)};
  BiotTraces b{0, ScalarTrace(ns, 0), VectorTrace(ns, 0), ScalarTrace(ns, 0)};
  EXPECT_EQ(kind_of([&] { compute_robin_data(f, b, pairing, params); }), ErrorKind::Dimension);
}

TEST_F(CouplingFixture, ZeroStepStaysZero) {
  CoupledSolver solver(fluid, solid, params, {});
  const CoupledState s = solver.advance_step(solver.initial_state({}), {});
  EXPECT_EQ(s.step(), 1);
  EXPECT_DOUBLE_EQ(s.time(), params.dt);
  EXPECT_EQ(max_diff(s, solver.initial_state({})), 0.0);
}

TEST_F(CouplingFixture, StepRejectsUnsynchronizedState) {
  CoupledSolver solver(fluid, solid, params, {});
  CoupledState s = solver.initial_state({});
  s.biot.step = 1;
  EXPECT_EQ(kind_of([&] { solver.advance_step(s, {}); }), ErrorKind::Synchronization);
}

TEST_F(CouplingFixture, StepLeavesInputUntouched) {
  CoupledSolver solver(fluid, solid, params, {});
  const ProblemData data = benchmark_problem(1, params);
  const CoupledState s0 = solver.initial_state(benchmark_initial(1));
  const CoupledState copy = s0;
  const CoupledState a = solver.advance_step(s0, data);
  EXPECT_EQ(max_diff(s0, copy), 0.0);
  const CoupledState b = solver.advance_step(copy, data);
  EXPECT_EQ(max_diff(a, b), 0.0);
}

TEST_F(CouplingFixture, DispatchOrderDoesNotMatter) {
  CoupledSolver solver(fluid, solid, params, {});
  const ProblemData data = benchmark_problem(2, params);
  CoupledState c = solver.initial_state(benchmark_initial(2));
  CoupledState s = c, r = c;
  for (int k = 0; k < 5; ++k) {
    c = solver.advance_step(c, data, Dispatch::Concurrent);
    s = solver.advance_step(s, data, Dispatch::Sequential);
    r = solver.advance_step(r, data, Dispatch::SequentialReversed);
  }
  EXPECT_LE(max_diff(c, s), 1e-14);
  EXPECT_LE(max_diff(c, r), 1e-14);
}

TEST_F(CouplingFixture, FixedPointOnZeroStateConvergesAtOnce) {
  CoupledSolver solver(fluid, solid, params, {});
  const FixedPointResult fp = solver.fixed_point_iterate(solver.initial_state({}), {}, 1e-12, 10);
  EXPECT_TRUE(fp.converged);
  EXPECT_EQ(fp.iterations, 1);
}

TEST_F(CouplingFixture, FixedPointSingleSweepIsTheLooseStep) {
  CoupledSolver solver(fluid, solid, params, {});
  const ProblemData data = benchmark_problem(1, params);
  const CoupledState s0 = solver.initial_state(benchmark_initial(1));
  const FixedPointResult fp =
      solver.fixed_point_iterate(s0, data, std::numeric_limits<double>::infinity(), 5);
  EXPECT_EQ(fp.iterations, 1);
  EXPECT_EQ(max_diff(fp.state, solver.advance_step(s0, data, Dispatch::Sequential)), 0.0);
}

TEST_F(CouplingFixture, FixedPointDrivesResidualsDown) {
  CoupledSolver solver(fluid, solid, params, {});
  const ProblemData data = benchmark_problem(1, params);
  const CoupledState s0 = solver.initial_state(benchmark_initial(1));
  const FixedPointResult loose = solver.fixed_point_iterate(s0, data, 1e30, 1);
  const FixedPointResult fp = solver.fixed_point_iterate(s0, data, 1e-10, 500);
  EXPECT_TRUE(fp.converged);
  EXPECT_LE(fp.residuals.max(), 1e-8);
  EXPECT_LT(fp.residuals.max(), loose.residuals.max());
}

TEST_F(CouplingFixture, MovingModeRejectsFixedPoint) {
  CoupledSolver solver(fluid, solid, params, {}, true);
  EXPECT_EQ(kind_of([&] { solver.fixed_point_iterate(solver.initial_state({}), {}, 1e-10, 3); }),
            ErrorKind::Capability);
}

TEST_F(CouplingFixture, EnergyOfUniformFlow) {
  CoupledSolver solver(fluid, solid, params, {});
  CoupledState s = solver.initial_state({});
  s.fluid.u = interpolate(VectorFn([](const Vec2&) { return Vec2(1, 0); }), s.fluid.u.space, fluid);
  EXPECT_NEAR(kinetic_elastic_energy(s.fluid, s.biot, fluid, solid, params), 0.5, 1e-13);
}

TEST_F(CouplingFixture, EnergyOfDilation) {
  CoupledSolver solver(fluid, solid, params, {});
  CoupledState s = solver.initial_state({});
  s.biot.eta = interpolate(VectorFn([](const Vec2& x) { return x; }), s.biot.eta.space, solid);
  EXPECT_NEAR(kinetic_elastic_energy(s.fluid, s.biot, fluid, solid, params), 4.0, 1e-12);
}

TEST_F(CouplingFixture, EnergyReportNeedsHistory) {
  EXPECT_EQ(kind_of([&] { energy_report({}, {}, fluid, solid, pairing, params); }),
            ErrorKind::InsufficientHistory);
}

TEST_F(CouplingFixture, EnergyMonitorAgreesWithReport) {
  CoupledSolver solver(fluid, solid, params, {});
  CoupledState s = solver.initial_state(benchmark_initial(1));
  EnergyMonitor m(fluid, solid, pairing, params);
  std::vector<FluidState> fh{s.fluid};
  std::vector<BiotState> bh{s.biot};
  m.record(s.fluid, s.biot);
  for (int k = 0; k < 3; ++k) {
    s = solver.advance_step(s, {});
    fh.push_back(s.fluid);
    bh.push_back(s.biot);
    m.record(s.fluid, s.biot);
  }
  const EnergyReport r = energy_report(fh, bh, fluid, solid, pairing, params);
  const EnergyReport& last = m.history().back();
  EXPECT_EQ(r.step, 3);
  EXPECT_NEAR(r.E, last.E, 1e-14 * std::abs(r.E));
  EXPECT_NEAR(r.D, last.D, 1e-14 * std::abs(r.D));
  EXPECT_NEAR(r.N, last.N, 1e-14 * std::abs(r.N) + 1e-300);
  // Without forcing the energy stays below its initial budget.
  const EnergyReport& first = m.history().front();
  for (const EnergyReport& h : m.history()) EXPECT_LE(h.E, first.E + first.D + first.I);
}
