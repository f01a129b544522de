#include "fpsi/convergence.hpp"

#include <chrono>
#include <cmath>

#include "fpsi/error.hpp"
#include "fpsi/norms.hpp"

namespace fpsi {

double ConvergenceTable::rate(size_t row, int measure) const {
  if (row == 0 || row >= rows.size()) fail(ErrorKind::Argument, "rate needs a previous row");
  return std::log(rows[row - 1].e[measure] / rows[row].e[measure]) /
         std::log(static_cast<double>(rows[row].n) / rows[row - 1].n);
}

double ConvergenceTable::slope(int measure) const {
  if (rows.size() < 2) fail(ErrorKind::Argument, "slope needs at least two rows");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(rows.size());
  for (const auto& r : rows) {
    const double x = std::log(0.05 / r.n);
    const double y = std::log(r.e[measure]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

ErrorRow error_norms(const CoupledSolver& solver, const CoupledState& s, int case_id) {
  const ExactSolution ex = exact_solution(case_id);
  const double t = s.time();
  const Mesh& fm = solver.fluid_mesh();
  const Mesh& sm = solver.solid_mesh();
  const PhysicalParams& p = solver.params();
  auto diff = [](const Field& exact, const Field& h) {
    return Field(h.space, exact.values - h.values, h.time);
  };
  ErrorRow row;
  const Field eta = interpolate(ex.eta, s.biot.eta.space, sm, t);
  const Field xi = interpolate(ex.xi, s.biot.xi.space, sm, t);
  const Field phi = interpolate(ex.phi, s.biot.phi.space, sm, t);
  const Field u = interpolate(ex.u, s.fluid.u.space, fm, t);
  const Field pr = interpolate(ex.p, s.fluid.p.space, fm, t);
  row.e[0] = energy_norm_S(diff(eta, s.biot.eta), p.mu_p, p.lambda_p, sm);
  row.e[1] = l2_norm(diff(xi, s.biot.xi), sm);
  row.e[2] = l2_norm(diff(phi, s.biot.phi), sm);
  row.e[3] = l2_norm(diff(u, s.fluid.u), fm);
  row.e[4] = l2_norm(diff(pr, s.fluid.p), fm);
  return row;
}

CoupledState run_benchmark_state(CoupledSolver& solver, int case_id,
                                 const BenchmarkOptions& options) {
  const ProblemData data = benchmark_problem(case_id, solver.params());
  CoupledState s = solver.initial_state(benchmark_initial(case_id));
  const auto steps = static_cast<Index>(std::llround(options.T / solver.params().dt));
  for (Index k = 0; k < steps; ++k) s = solver.advance_step(s, data, options.dispatch);
  return s;
}

ErrorRow run_benchmark(int case_id, int n, const BenchmarkOptions& options,
                       const std::function<void(const CoupledState&)>& on_step) {
  if (n < 1) fail(ErrorKind::Argument, "n must be positive");
  if (n > kMaxUnguardedN && !options.override_resource_guard) {
    fail(ErrorKind::ResourceGuard, "n = " + std::to_string(n) + " exceeds " +
                                       std::to_string(kMaxUnguardedN) +
                                       "; pass the override flag to run it");
  }
  const auto start = std::chrono::steady_clock::now();
  PhysicalParams params = benchmark_params(n);
  params.T = options.T;
  auto [fluid, solid] = benchmark_meshes(2 * n);
  CoupledSolver solver(std::move(fluid), std::move(solid), params, options.discretization);
  const ProblemData data = benchmark_problem(case_id, params);
  CoupledState s = solver.initial_state(benchmark_initial(case_id));
  if (on_step) on_step(s);
  const auto steps = static_cast<Index>(std::llround(options.T / params.dt));
  for (Index k = 0; k < steps; ++k) {
    s = solver.advance_step(s, data, options.dispatch);
    if (on_step) on_step(s);
  }
  ErrorRow row = error_norms(solver, s, case_id);
  row.n = n;
  row.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

void validate_n_list(const std::vector<int>& n_list, bool override_guard) {
  if (n_list.empty()) fail(ErrorKind::Argument, "n list is empty");
  for (size_t i = 0; i < n_list.size(); ++i) {
    const int n = n_list[i];
    if (n < 4 || n % 4 != 0 || ((n / 4) & (n / 4 - 1)) != 0) {
      fail(ErrorKind::Argument, "n = " + std::to_string(n) + " is not 4 times a power of two");
    }
    if (i > 0 && n <= n_list[i - 1]) fail(ErrorKind::Argument, "n list must be ascending");
    if (n > kMaxUnguardedN && !override_guard) {
      fail(ErrorKind::ResourceGuard, "n = " + std::to_string(n) + " exceeds " +
                                         std::to_string(kMaxUnguardedN) +
                                         "; pass the override flag to run it");
    }
  }
}

ConvergenceTable convergence_study(int case_id, const std::vector<int>& n_list,
                                   const BenchmarkOptions& options) {
  validate_n_list(n_list, options.override_resource_guard);
  const PhysicalParams unit = benchmark_params(4);
  for (double t : {0.25, 0.5, 0.75}) {
    const ResidualReport r = residual_check(case_id, t, 1e-4, 50, unit);
    if (r.max() > 1e-6) {
      fail(ErrorKind::Evaluation, "forcing oracle failed: max strong-form residual " +
                                      std::to_string(r.max()));
    }
  }
  ConvergenceTable table;
  for (int n : n_list) table.rows.push_back(run_benchmark(case_id, n, options));
  return table;
}

}  // namespace fpsi
