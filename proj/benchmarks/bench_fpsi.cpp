// Micro benchmarks for the assembly, factorization and coupled-step paths.

#include <benchmark/benchmark.h>

#include "fpsi/assembly.hpp"
#include "fpsi/coupling.hpp"
#include "fpsi/manufactured.hpp"
#include "fpsi/sparse.hpp"

using namespace fpsi;

static void BM_AssembleSymGradP2(benchmark::State& state) {
  const Mesh mesh = build_rect_mesh({0, 1, 0, 1}, state.range(0), state.range(0));
  const DofMap V(mesh, Element::P2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_form({Form::SymGrad}, mesh, V, V));
  state.counters["dofs"] = static_cast<double>(V.size());
}
BENCHMARK(BM_AssembleSymGradP2)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_FactorLaplaceP2(benchmark::State& state) {
  const Mesh mesh = build_rect_mesh({0, 1, 0, 1}, state.range(0), state.range(0));
  const DofMap V(mesh, Element::P2, 1);
  const SparseMatrix k = assemble_form({Form::Stiffness}, mesh, V, V);
  const SparseMatrix m = assemble_form({Form::Mass}, mesh, V, V);
  const SparseMatrix a = k + m;
  const Vector b = Vector::Ones(V.size());
  for (auto _ : state) {
    SparseDirectSolver solver;
    benchmark::DoNotOptimize(solver.solve(a, b));
  }
  state.counters["dofs"] = static_cast<double>(V.size());
}
BENCHMARK(BM_FactorLaplaceP2)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_CoupledStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PhysicalParams p = benchmark_params(n);
  auto [fluid, solid] = benchmark_meshes(2 * n);
  CoupledSolver solver(std::move(fluid), std::move(solid), p, {});
  const ProblemData data = benchmark_problem(1, p);
  CoupledState s = solver.initial_state(benchmark_initial(1));
  s = solver.advance_step(s, data);  // factorizations happen here
  for (auto _ : state) {
    s = solver.advance_step(s, data, Dispatch::Sequential);
    benchmark::DoNotOptimize(s.fluid.u.values.data());
  }
}
BENCHMARK(BM_CoupledStep)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
