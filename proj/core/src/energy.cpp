#include "fpsi/energy.hpp"

#include <cmath>

#include "fpsi/error.hpp"
#include "fpsi/norms.hpp"

namespace fpsi {

double kinetic_elastic_energy(const FluidState& f, const BiotState& b, const Mesh& fm,
                              const Mesh& sm, const PhysicalParams& p) {
  const double es = energy_norm_S(b.eta, p.mu_p, p.lambda_p, sm);
  return 0.5 * p.rho_p * l2_norm_sq(b.xi, sm) + 0.5 * es * es + 0.5 * p.c0 * l2_norm_sq(b.phi, sm) +
         0.5 * p.rho_f * l2_norm_sq(f.u, fm);
}

double dissipation_increment(const FluidState& f, const BiotState& b, const Mesh& fm,
                             const Mesh& sm, const PhysicalParams& p) {
  return p.mu_f * p.dt * sym_grad_norm_sq(f.u, fm) + 0.5 * p.dt * p.K * gradient_norm_sq(b.phi, sm);
}

double interface_energy(const FluidState& f, const BiotState& b, const Mesh& fm, const Mesh& sm,
                        const InterfacePairing& pr, const PhysicalParams& p) {
  const double un = trace_l2_norm_sq(normal_trace(f.u, pr.fluid, fm), pr.fluid, fm);
  const double ut = trace_l2_norm_sq(tangential_trace(f.u, pr.fluid, fm), pr.fluid, fm);
  const double phi = trace_l2_norm_sq(scalar_trace(b.phi, pr.solid, sm), pr.solid, sm);
  const double xn = trace_l2_norm_sq(normal_trace(b.xi, pr.solid, sm), pr.solid, sm);
  const double xt = trace_l2_norm_sq(tangential_trace(b.xi, pr.solid, sm), pr.solid, sm);
  return 0.5 * p.dt * (p.L * un + phi / p.L + xn + p.gamma * ut + p.gamma * xt);
}

double numerical_dissipation_increment(const FluidState& f0, const BiotState& b0,
                                       const FluidState& f1, const BiotState& b1, const Mesh& fm,
                                       const Mesh& sm, const InterfacePairing& pr,
                                       const PhysicalParams& p) {
  const Field dxi(b1.xi.space, b1.xi.values - b0.xi.values);
  const Field deta(b1.eta.space, b1.eta.values - b0.eta.values);
  const Field du(f1.u.space, f1.u.values - f0.u.values);
  const Field dphi(b1.phi.space, b1.phi.values - b0.phi.values);
  double n = 0.5 * p.rho_p * l2_norm_sq(dxi, sm) + p.mu_p * sym_grad_norm_sq(deta, sm) +
             0.5 * p.lambda_p * divergence_norm_sq(deta, sm) + 0.5 * p.rho_f * l2_norm_sq(du, fm) +
             0.5 * p.c0 * l2_norm_sq(dphi, sm);
  // Cross-interface slip terms use tangential projections moved across Gamma.
  const VectorTrace ut1 = tangential_trace(f1.u, pr.fluid, fm);
  const VectorTrace xt0 = interface_transfer(tangential_trace(b0.xi, pr.solid, sm), pr,
                                             Direction::SolidToFluid);
  const VectorTrace xt1 = tangential_trace(b1.xi, pr.solid, sm);
  const VectorTrace ut0 = interface_transfer(tangential_trace(f0.u, pr.fluid, fm), pr,
                                             Direction::FluidToSolid);
  n += 0.5 * p.dt * p.gamma * trace_l2_norm_sq(axpby(1.0, ut1, -1.0, xt0), pr.fluid, fm);
  n += 0.5 * p.dt * p.gamma * trace_l2_norm_sq(axpby(1.0, xt1, -1.0, ut0), pr.solid, sm);
  n += 0.5 * p.dt * trace_l2_norm_sq(normal_trace(dxi, pr.solid, sm), pr.solid, sm);
  return n;
}

EnergyMonitor::EnergyMonitor(const Mesh& fluid_mesh, const Mesh& solid_mesh,
                             const InterfacePairing& pairing, PhysicalParams params)
    : fluid_mesh_(&fluid_mesh), solid_mesh_(&solid_mesh), pairing_(&pairing), params_(params) {}

const EnergyReport& EnergyMonitor::record(const FluidState& f, const BiotState& b) {
  if (f.step != b.step) {
    fail(ErrorKind::Synchronization, "fluid and Biot states are at different steps");
  }
  const Mesh& fm = *fluid_mesh_;
  const Mesh& sm = *solid_mesh_;
  EnergyReport r;
  r.step = f.step;
  r.time = f.u.time;
  r.E = kinetic_elastic_energy(f, b, fm, sm, params_);
  D_ += dissipation_increment(f, b, fm, sm, params_);
  r.D = D_;
  r.I = interface_energy(f, b, fm, sm, *pairing_, params_);
  if (prev_f_) {
    N_ += numerical_dissipation_increment(*prev_f_, *prev_b_, f, b, fm, sm, *pairing_, params_);
  }
  r.N = N_;
  prev_f_ = f;
  prev_b_ = b;
  history_.push_back(r);
  return history_.back();
}

EnergyReport energy_report(const std::vector<FluidState>& fh, const std::vector<BiotState>& bh,
                           const Mesh& fm, const Mesh& sm, const InterfacePairing& pairing,
                           const PhysicalParams& params) {
  if (fh.empty() || fh.size() != bh.size()) {
    fail(ErrorKind::InsufficientHistory,
         "energy report needs matching fluid and Biot histories from step 0");
  }
  EnergyMonitor m(fm, sm, pairing, params);
  for (size_t i = 0; i < fh.size(); ++i) m.record(fh[i], bh[i]);
  return m.history().back();
}

namespace {

template <class F>
double domain_sq(const Mesh& mesh, F&& sq) {
  const auto& rule = quadrature_rule(5);
  double sum = 0.0;
  for (Index t = 0; t < mesh.num_triangles(); ++t) {
    const CellGeometry g(mesh, t);
    for (const auto& q : rule) sum += 2.0 * g.area * q.weight * sq(g.map(q.bary));
  }
  return sum;
}

}  // namespace

double l2_norm_of(const VectorFieldFn& f, const Mesh& mesh, double t) {
  if (!f) return 0.0;
  return std::sqrt(domain_sq(mesh, [&](const Vec2& x) { return f(x, t).squaredNorm(); }));
}

double l2_norm_of(const ScalarFieldFn& f, const Mesh& mesh, double t) {
  if (!f) return 0.0;
  return std::sqrt(domain_sq(mesh, [&](const Vec2& x) {
    const double v = f(x, t);
    return v * v;
  }));
}

double boundary_l2_norm_of(const std::function<Vec2(const EdgePoint&, double)>& g,
                           const Mesh& mesh, Marker marker, double t) {
  if (!g) return 0.0;
  double sum = 0.0;
  for (Index id : mesh.boundary_edges_with(marker)) {
    const auto& e = mesh.boundary_edges()[id];
    EdgePoint pt;
    pt.boundary_edge = id;
    pt.normal = mesh.edge_normal(e);
    pt.tangent = mesh.edge_tangent(e);
    const double len = mesh.edge_length(e);
    for (const auto& q : gauss_5()) {
      pt.s = q.s;
      pt.x = (1.0 - q.s) * mesh.nodes()[e.nodes[0]] + q.s * mesh.nodes()[e.nodes[1]];
      sum += len * q.weight * g(pt, t).squaredNorm();
    }
  }
  return std::sqrt(sum);
}

}  // namespace fpsi
