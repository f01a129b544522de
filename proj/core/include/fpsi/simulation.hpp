#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fpsi/config.hpp"
#include "fpsi/convergence.hpp"
#include "fpsi/output.hpp"

namespace fpsi {

struct SimulationResult {
  Index steps = 0;
  bool completed = false;
  std::string failure;  // error class and message of an aborted run
  std::vector<EnergyReport> energy;
  std::optional<ErrorRow> errors;  // benchmark kinds only
  std::vector<std::filesystem::path> files;
  std::optional<CoupledState> final_state;
};

struct SimulationHooks {
  // Called after every step with the new state and its energy report.
  std::function<void(const CoupledState&, const EnergyReport&)> on_step;
  // Write outputs under config.output_dir (energy CSV, snapshots, errors).
  bool write_outputs = true;
};

/// Time loop from t = 0 to T. Writes energy.csv, snapshots every
/// `snapshot_every` steps (plus the initial and final ones), and errors.csv for
/// benchmark kinds. A run that fails mid-way does not throw: it writes
/// energy.partial.csv and ABORTED.txt, and returns completed = false.
/// Configuration and resource-guard errors are thrown before any compute.
SimulationResult run_simulation(const Config& config, const SimulationHooks& hooks = {});

/// Initial fields of the zero-forcing stability runs.
InitialData stability_initial();

/// Zero-forcing runs over C0 x K x dt with L = 1/K on the custom-problem
/// meshes of `base` (n, T and the remaining parameters are taken from it).
std::vector<SweepRun> stability_sweep(const Config& base, const std::vector<double>& c0_values,
                                      const std::vector<double>& K_values,
                                      const std::vector<double>& dt_values,
                                      const std::function<void(const SweepRun&)>& on_run = {});

/// One zero-forcing run with the given parameters.
SweepRun stability_run(const Config& config);

}  // namespace fpsi
