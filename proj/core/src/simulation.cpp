#include "fpsi/simulation.hpp"

#include <cmath>
#include <numbers>

#include "fpsi/error.hpp"
#include "fpsi/manufactured.hpp"

namespace fpsi {

namespace fs = std::filesystem;

namespace {

int case_of(ProblemKind kind) {
  return kind == ProblemKind::BenchmarkCase2 ? 2 : 1;
}

bool is_benchmark(ProblemKind kind) {
  return kind == ProblemKind::BenchmarkCase1 || kind == ProblemKind::BenchmarkCase2;
}

bool finite(const CoupledState& s) {
  return s.fluid.u.values.allFinite() && s.fluid.p.values.allFinite() &&
         s.biot.eta.values.allFinite() && s.biot.xi.values.allFinite() &&
         s.biot.phi.values.allFinite();
}

struct Setup {
  std::unique_ptr<CoupledSolver> solver;
  ProblemData data;
  InitialData initial;
};

Setup make_setup(const Config& c) {
  Setup s;
  if (c.kind == ProblemKind::NsBiotDemo) {
    auto [fluid, solid] = channel_meshes(c.channel);
    s.solver = std::make_unique<CoupledSolver>(std::move(fluid), std::move(solid), c.params,
                                               c.discretization, true);
    s.data = channel_problem(c.channel);
    return s;
  }
  auto [fluid, solid] = benchmark_meshes(2 * c.n);
  s.solver = std::make_unique<CoupledSolver>(std::move(fluid), std::move(solid), c.params,
                                             c.discretization, false);
  if (is_benchmark(c.kind)) {
    s.data = benchmark_problem(case_of(c.kind), c.params);
    s.initial = benchmark_initial(case_of(c.kind));
  } else {
    s.initial = stability_initial();
  }
  return s;
}

void check_guard(const Config& c) {
  if (c.kind != ProblemKind::NsBiotDemo && c.n > kMaxUnguardedN && !c.override_resource_guard) {
    fail(ErrorKind::ResourceGuard, "n = " + std::to_string(c.n) + " exceeds " +
                                       std::to_string(kMaxUnguardedN) +
                                       "; set override-resource-guard to run it");
  }
}

}  // namespace

InitialData stability_initial() {
  using std::numbers::pi;
  InitialData init;
  init.u = [](const Vec2& x, double) { return Vec2(0.0, std::sin(pi * x.x()) * (1.0 - x.y())); };
  init.xi = [](const Vec2& x, double) { return Vec2(0.0, std::sin(pi * x.x()) * (1.0 + x.y())); };
  init.phi = [](const Vec2& x, double) {
    return std::sin(pi * x.x()) * std::cos(pi * x.y() / 2.0);
  };
  return init;
}

SimulationResult run_simulation(const Config& config, const SimulationHooks& hooks) {
  validate(config);
  check_guard(config);
  Setup setup = make_setup(config);
  CoupledSolver& solver = *setup.solver;
  const PhysicalParams& p = config.params;
  const fs::path out = config.output_dir;
  const Dispatch dispatch = config.sequential ? Dispatch::Sequential : Dispatch::Concurrent;
  const auto steps = static_cast<Index>(std::llround(p.T / p.dt));

  SimulationResult result;
  // Energies are measured on the reference configurations.
  EnergyMonitor monitor(solver.fluid_mesh(), solver.solid_mesh(), solver.pairing(), p);
  auto snapshot = [&](const CoupledState& s) {
    if (!hooks.write_outputs || config.snapshot_every <= 0) return;
    const Mesh mesh = solver.current_fluid_mesh(s);
    const SnapshotFiles f =
        write_vtk_snapshot(mesh, solver.solid_mesh(), s.fluid, s.biot, out, s.step());
    result.files.push_back(f.fluid);
    result.files.push_back(f.solid);
  };
  auto add_forcing_norms = [&](EnergyReport& r, double t) {
    r.force_fluid = l2_norm_of(setup.data.fluid.force, solver.fluid_mesh(), t);
    r.force_darcy = l2_norm_of(setup.data.biot.source, solver.solid_mesh(), t);
    if (setup.data.fluid.traction && solver.fluid_mesh().has_marker(Marker::NeumannF)) {
      r.traction = boundary_l2_norm_of(setup.data.fluid.traction, solver.fluid_mesh(),
                                       Marker::NeumannF, t);
    }
  };

  CoupledState s = solver.initial_state(setup.initial);
  try {
    EnergyReport r0 = monitor.record(s.fluid, s.biot);
    add_forcing_norms(r0, s.time());
    result.energy.push_back(r0);
    snapshot(s);
    for (Index k = 0; k < steps; ++k) {
      if (config.fixed_point_iterations > 0) {
        s = solver.fixed_point_iterate(s, setup.data, config.solver_tolerance,
                                       config.fixed_point_iterations).state;
      } else {
        s = solver.advance_step(s, setup.data, dispatch);
      }
      if (!finite(s)) {
        fail(ErrorKind::Evaluation, "non-finite field at step " + std::to_string(s.step()));
      }
      EnergyReport r = monitor.record(s.fluid, s.biot);
      add_forcing_norms(r, s.time());
      result.energy.push_back(r);
      result.steps = s.step();
      if (hooks.on_step) hooks.on_step(s, r);
      const bool last = k + 1 == steps;
      if (config.snapshot_every > 0 && (last || s.step() % config.snapshot_every == 0)) {
        snapshot(s);
      }
    }
  } catch (const Error& e) {
    result.failure = std::string(to_string(e.kind())) + ": " + e.what();
  } catch (const std::exception& e) {
    result.failure = std::string("internal: ") + e.what();
  }

  result.completed = result.failure.empty();
  if (result.completed && is_benchmark(config.kind)) {
    ErrorRow row = error_norms(solver, s, case_of(config.kind));
    row.n = config.n;
    result.errors = row;
  }
  if (hooks.write_outputs) {
    if (result.completed) {
      write_energy_csv(result.energy, out / "energy.csv");
      result.files.push_back(out / "energy.csv");
      if (result.errors) {
        write_convergence_csv(ConvergenceTable{{*result.errors}}, out / "errors.csv");
        result.files.push_back(out / "errors.csv");
      }
    } else {
      write_energy_csv(result.energy, out / "energy.partial.csv");
      write_file_atomic(out / "ABORTED.txt", "aborted after step " + std::to_string(result.steps) +
                                                 " of " + std::to_string(steps) + "\n" +
                                                 result.failure + "\n");
      result.files.push_back(out / "energy.partial.csv");
      result.files.push_back(out / "ABORTED.txt");
    }
  }
  result.final_state = std::move(s);
  return result;
}

SweepRun stability_run(const Config& config) {
  SweepRun run;
  run.c0 = config.params.c0;
  run.K = config.params.K;
  run.dt = config.params.dt;
  Config c = config;
  c.kind = ProblemKind::StokesBiotCustom;
  SimulationHooks hooks;
  hooks.write_outputs = false;
  const SimulationResult res = run_simulation(c, hooks);
  run.failure = res.failure;
  run.history = res.energy;
  run.finite = res.completed;
  run.monotone = true;
  for (size_t i = 0; i < run.history.size(); ++i) {
    const EnergyReport& r = run.history[i];
    run.finite = run.finite && std::isfinite(r.E) && std::isfinite(r.D) && std::isfinite(r.I) &&
                 std::isfinite(r.N);
    run.max_E = std::max(run.max_E, r.E);
    if (i > 0) {
      const EnergyReport& q = run.history[i - 1];
      if (r.D < q.D || r.N < q.N) run.monotone = false;
    }
  }
  if (!run.history.empty()) {
    const EnergyReport& r0 = run.history.front();
    run.initial_total = r0.E + r0.D + r0.I;
  }
  return run;
}

std::vector<SweepRun> stability_sweep(const Config& base, const std::vector<double>& c0_values,
                                      const std::vector<double>& K_values,
                                      const std::vector<double>& dt_values,
                                      const std::function<void(const SweepRun&)>& on_run) {
  std::vector<SweepRun> runs;
  for (double c0 : c0_values) {
    for (double K : K_values) {
      for (double dt : dt_values) {
        Config c = base;
        c.params.c0 = c0;
        c.params.K = K;
        c.params.L = 1.0 / K;
        c.params.dt = dt;
        runs.push_back(stability_run(c));
        if (on_run) on_run(runs.back());
      }
    }
  }
  return runs;
}

}  // namespace fpsi
