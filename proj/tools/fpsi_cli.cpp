// fpsi: command-line front end for the Robin-Robin Stokes/Navier-Stokes-Biot solver.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fpsi/config.hpp"
#include "fpsi/convergence.hpp"
#include "fpsi/error.hpp"
#include "fpsi/output.hpp"
#include "fpsi/selftest.hpp"
#include "fpsi/simulation.hpp"

namespace fs = std::filesystem;
using namespace fpsi;

namespace {

int report_error(std::string_view kind, const std::string& message) {
  std::cerr << "error[" << kind << "]: " << message << "\n";
  return 2;
}

void print_row(const ErrorRow& r) {
  std::printf("n=%-4d", r.n);
  for (int m = 0; m < 5; ++m) std::printf("  e_%s=%.3e", kErrorNames[m], r.e[m]);
  std::printf("  (%.1fs)\n", r.seconds);
  std::fflush(stdout);
}

int cmd_bench(int case_id, const std::vector<int>& n_list, const std::string& out_dir,
              bool override_guard, bool sequential, const std::string& corners) {
  BenchmarkOptions opt;
  opt.override_resource_guard = override_guard;
  opt.dispatch = sequential ? Dispatch::Sequential : Dispatch::Concurrent;
  if (corners == "dirichlet") opt.discretization.corners = CornerPolicy::DirichletPrecedence;
  validate_n_list(n_list, override_guard);
  const PhysicalParams unit = benchmark_params(4);
  for (double t : {0.25, 0.5, 0.75}) {
    const ResidualReport r = residual_check(case_id, t, 1e-4, 50, unit);
    if (r.max() > 1e-6) fail(ErrorKind::Evaluation, "forcing oracle failed before the study");
  }
  ConvergenceTable table;
  for (int n : n_list) {
    table.rows.push_back(run_benchmark(case_id, n, opt));
    print_row(table.rows.back());
  }
  const fs::path path = fs::path(out_dir) / ("convergence_case" + std::to_string(case_id) + ".csv");
  write_convergence_csv(table, path);
  std::cout << format_convergence_csv(table);
  if (table.rows.size() >= 2) {
    std::printf("least-squares slopes vs dt:");
    for (int m = 0; m < 5; ++m) std::printf(" %s=%.3f", kErrorNames[m], table.slope(m));
    std::printf("\n");
  }
  std::cout << "wrote " << path.string() << "\n";
  return 0;
}

int print_simulation(const SimulationResult& res) {
  std::printf("steps: %ld\n", static_cast<long>(res.steps));
  if (!res.energy.empty()) {
    const EnergyReport& r = res.energy.back();
    std::printf("final energy: E=%.6e D=%.6e I=%.6e N=%.6e\n", r.E, r.D, r.I, r.N);
  }
  if (res.errors) print_row(*res.errors);
  for (const auto& f : res.files) {
    if (f.extension() != ".vtk") std::cout << "wrote " << f.string() << "\n";
  }
  size_t vtk = 0;
  for (const auto& f : res.files) vtk += f.extension() == ".vtk";
  if (vtk) std::printf("wrote %zu VTK files\n", vtk);
  if (!res.completed) {
    const auto colon = res.failure.find(':');
    return report_error(res.failure.substr(0, colon), res.failure.substr(colon + 2));
  }
  return 0;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(ErrorKind::Argument, "cannot parse '" + item + "' in list '" + text + "'");
    }
  }
  if (v.empty()) fail(ErrorKind::Argument, "empty list");
  return v;
}

int cmd_energy(const std::string& config_path, const std::string& c0s, const std::string& Ks,
               const std::string& dts, const std::string& out) {
  Config base = parse_config(config_path);
  base.kind = ProblemKind::StokesBiotCustom;
  const auto c0 = parse_list(c0s), K = parse_list(Ks), dt = parse_list(dts);
  for (double d : dt) {
    Config probe = base;
    probe.params.dt = d;
    validate(probe);
  }
  bool all = true;
  const auto runs = stability_sweep(base, c0, K, dt, [&all](const SweepRun& r) {
    const double ratio = r.initial_total > 0 ? r.max_E / r.initial_total : 0.0;
    std::printf("%s C0=%g K=%g dt=%g  max E / (E0+D0+I0) = %.3f  monotone D,N: %s%s%s\n",
                r.passed() ? "PASS" : "FAIL", r.c0, r.K, r.dt, ratio, r.monotone ? "yes" : "no",
                r.failure.empty() ? "" : "  aborted: ", r.failure.c_str());
    std::fflush(stdout);
    all = all && r.passed();
  });
  const fs::path path = out.empty() ? fs::path(base.output_dir) / "energy_sweep.csv" : fs::path(out);
  write_file_atomic(path, format_sweep_csv(runs));
  std::cout << "wrote " << path.string() << "\n";
  return all ? 0 : 1;
}

int cmd_verify() {
  bool all = true;
  auto show = [&all](const std::vector<CheckResult>& checks) {
    for (const CheckResult& c : checks) {
      std::printf("%s %s: %s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.detail.c_str());
      all = all && c.passed;
    }
  };
  show(kernel_self_tests());
  show(forcing_gate());
  show(forcing_perturbation_checks());
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robin-Robin partitioned Stokes/Navier-Stokes-Biot solver"};
  app.require_subcommand(1);

  int case_id = 1;
  std::string n_list_text = "4,8,16,32";
  std::string out_dir = ".";
  bool override_guard = false;
  bool sequential = false;
  std::string corners = "interface";
  auto* bench = app.add_subcommand("bench", "Convergence study against the manufactured solution");
  bench->add_option("--case", case_id, "Manufactured case")->check(CLI::IsMember({1, 2}));
  bench->add_option("--n-list", n_list_text, "Comma-separated n values (dt = 0.05/n, h = 0.5/n)");
  bench->add_option("--out", out_dir, "Output directory for the CSV table");
  bench->add_flag("--override-resource-guard", override_guard, "Allow n > 64");
  bench->add_flag("--sequential", sequential, "Run the two subproblems back to back");
  bench->add_option("--corner-policy", corners, "interface or dirichlet")
      ->check(CLI::IsMember({"interface", "dirichlet"}));

  std::string config_path;
  auto* run = app.add_subcommand("run", "General simulation from a config file");
  run->add_option("--config", config_path, "Config file")->required();

  std::string c0s = "1e-6,1", Ks = "1e-6,1", dts = "1e-3,1e-2,1e-1", sweep_out;
  auto* energy = app.add_subcommand("energy", "Zero-forcing stability sweep with energy reports");
  energy->add_option("--config", config_path, "Base config (n, T, materials)")->required();
  energy->add_option("--C0", c0s, "Comma-separated storativity values");
  energy->add_option("--K", Ks, "Comma-separated conductivity values (L = 1/K)");
  energy->add_option("--dt", dts, "Comma-separated time steps");
  energy->add_option("--out", sweep_out, "CSV path (default: <output-dir>/energy_sweep.csv)");

  auto* verify = app.add_subcommand("verify", "FEM kernel self-tests and forcing-oracle gate");

  double demo_T = 0.5;
  std::string demo_out = "demo-out";
  int demo_every = 100;
  std::string demo_config;
  auto* demo = app.add_subcommand("demo-channel", "Channel flow past two poroelastic obstacles");
  demo->add_option("--T", demo_T, "Final time in seconds");
  demo->add_option("--out", demo_out, "Output directory");
  demo->add_option("--snapshot-every", demo_every, "Steps between VTK snapshots (0 disables)");
  demo->add_option("--config", demo_config, "Demo config overriding the defaults");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return report_error("usage", e.what());
  }

  try {
    if (bench->parsed()) {
      std::vector<int> n_list;
      for (double v : parse_list(n_list_text)) {
        if (v != static_cast<int>(v)) fail(ErrorKind::Argument, "n values must be integers");
        n_list.push_back(static_cast<int>(v));
      }
      return cmd_bench(case_id, n_list, out_dir, override_guard, sequential, corners);
    }
    if (run->parsed()) return print_simulation(run_simulation(parse_config(config_path)));
    if (energy->parsed()) return cmd_energy(config_path, c0s, Ks, dts, sweep_out);
    if (verify->parsed()) return cmd_verify();
    if (demo->parsed()) {
      Config c = demo_config.empty() ? default_config(ProblemKind::NsBiotDemo)
                                     : parse_config(demo_config);
      if (c.kind != ProblemKind::NsBiotDemo) {
        fail(ErrorKind::Config, "kind: demo-channel needs kind = nsbiot-demo");
      }
      const bool defaults = demo_config.empty();
      if (defaults || demo->count("--T")) c.params.T = demo_T;
      if (defaults || demo->count("--out")) c.output_dir = demo_out;
      if (defaults || demo->count("--snapshot-every")) c.snapshot_every = demo_every;
      validate(c);
      return print_simulation(run_simulation(c));
    }
  } catch (const Error& e) {
    return report_error(to_string(e.kind()), e.what());
  } catch (const std::exception& e) {
    return report_error("internal", e.what());
  }
  return 0;
}
