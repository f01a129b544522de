#pragma once

#include <array>
#include <functional>
#include <vector>

#include "fpsi/coupling.hpp"
#include "fpsi/manufactured.hpp"

namespace fpsi {

/// Errors in the order (eta, xi, phi, u, p).
struct ErrorRow {
  int n = 0;
  std::array<double, 5> e{};
  double seconds = 0.0;
};

inline constexpr std::array<const char*, 5> kErrorNames = {"eta", "xi", "phi", "u", "p"};

struct ConvergenceTable {
  std::vector<ErrorRow> rows;

  /// Observed order between rows i-1 and i (i >= 1); dt is proportional to 1/n.
  double rate(size_t row, int measure) const;
  /// Least-squares slope of log e against log dt over all rows.
  double slope(int measure) const;
};

/// Errors against the exact solution interpolated into the same spaces;
/// eta is measured in the elastic energy norm.
ErrorRow error_norms(const CoupledSolver& solver, const CoupledState& state, int case_id);

struct BenchmarkOptions {
  DiscretizationOptions discretization;
  Dispatch dispatch = Dispatch::Concurrent;
  bool override_resource_guard = false;
  double T = 1.0;
};

inline constexpr int kMaxUnguardedN = 64;

/// Runs one benchmark resolution to T (dt = 0.05 / n, 2n cells per side).
/// `on_step` (optional) sees every state after it is computed.
ErrorRow run_benchmark(int case_id, int n, const BenchmarkOptions& options = {},
                       const std::function<void(const CoupledState&)>& on_step = {});

/// Final state of a benchmark run (used by equivalence checks).
CoupledState run_benchmark_state(CoupledSolver& solver, int case_id, const BenchmarkOptions& options);

/// Checks the n list (ascending, each a power-of-two multiple of 4) and the
/// resource guard (n > 64 needs the override). Throws Argument/ResourceGuard.
void validate_n_list(const std::vector<int>& n_list, bool override_guard);

/// Gate on the forcing oracle, then one run per n.
ConvergenceTable convergence_study(int case_id, const std::vector<int>& n_list,
                                   const BenchmarkOptions& options = {});

}  // namespace fpsi
