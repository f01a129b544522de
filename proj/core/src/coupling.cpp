#include "fpsi/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <future>
#include <limits>
#include <map>

#include "fpsi/error.hpp"

namespace fpsi {

double InterfaceResiduals::max() const { return std::max({normal_flux, bjs, stress}); }

CoupledSolver::CoupledSolver(Mesh fluid_mesh, Mesh solid_mesh, PhysicalParams params,
                             DiscretizationOptions options, bool moving)
    : fluid_mesh_(std::make_unique<Mesh>(std::move(fluid_mesh))),
      solid_mesh_(std::make_unique<Mesh>(std::move(solid_mesh))),
      params_(params),
      options_(options),
      moving_(moving) {
  params_.validate();
  pairing_ = extract_interface(*fluid_mesh_, *solid_mesh_);
  fluid_spaces_ = make_fluid_spaces(*fluid_mesh_);
  biot_spaces_ = make_biot_spaces(*solid_mesh_);
  fluid_ = std::make_unique<FluidSolver>(*fluid_mesh_, pairing_.fluid, fluid_spaces_, params_,
                                         options_, moving_);
  biot_ = std::make_unique<BiotSolver>(*solid_mesh_, pairing_.solid, biot_spaces_, params_, options_);
  if (moving_) extension_ = std::make_unique<HarmonicExtension>(*fluid_mesh_, pairing_.fluid);
}

CoupledSolver::~CoupledSolver() = default;

CoupledState CoupledSolver::initial_state(const InitialData& init, double t0) const {
  CoupledState s;
  s.fluid = zero_fluid_state(fluid_spaces_, t0);
  s.biot = zero_biot_state(biot_spaces_, t0);
  if (init.u) s.fluid.u = interpolate(init.u, fluid_spaces_.velocity, *fluid_mesh_, t0);
  if (init.p) s.fluid.p = interpolate(init.p, fluid_spaces_.pressure, *fluid_mesh_, t0);
  if (init.eta) s.biot.eta = interpolate(init.eta, biot_spaces_.displacement, *solid_mesh_, t0);
  if (init.xi) s.biot.xi = interpolate(init.xi, biot_spaces_.displacement, *solid_mesh_, t0);
  if (init.phi) s.biot.phi = interpolate(init.phi, biot_spaces_.pressure, *solid_mesh_, t0);
  return s;
}

Field CoupledSolver::fluid_domain_displacement(const BiotState& biot) {
  if (!moving_) fail(ErrorKind::Capability, "fluid-domain displacement needs a moving setup");
  const VectorTrace eta = vector_trace(biot.eta, pairing_.solid, *solid_mesh_);
  return extension_->solve(interface_transfer(eta, pairing_, Direction::SolidToFluid));
}

Mesh CoupledSolver::current_fluid_mesh(const CoupledState& s) {
  if (!moving_) return *fluid_mesh_;
  const Field eta_f = fluid_domain_displacement(s.biot);
  return fluid_mesh_->deformed(vertex_displacement(eta_f));
}

RobinData CoupledSolver::robin_data(const CoupledState& s, const Mesh& fluid_mesh_n) const {
  return compute_robin_data(fluid_interface_traces(s.fluid, pairing_.fluid, fluid_mesh_n),
                            biot_interface_traces(s.biot, pairing_.solid, *solid_mesh_), pairing_,
                            params_);
}

FluidState CoupledSolver::solve_fluid(const CoupledState& s, const Mesh& mesh_n, const Field* w,
                                      const RobinData& r, const ProblemData& data, double t_next) {
  return fluid_->step(mesh_n, s.fluid, r, w, data.fluid, t_next);
}

namespace {

template <class F>
auto run_task(const char* name, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(name) + " task: " + e.what());
  } catch (const std::exception& e) {
    throw Error(ErrorKind::Evaluation, std::string(name) + " task: " + e.what());
  }
}

}  // namespace

CoupledState CoupledSolver::advance_step(const CoupledState& s, const ProblemData& data,
                                         Dispatch dispatch) {
  if (s.fluid.step != s.biot.step) {
    fail(ErrorKind::Synchronization, "fluid state at step " + std::to_string(s.fluid.step) +
                                         ", Biot state at step " + std::to_string(s.biot.step));
  }
  const double t_next = s.time() + params_.dt;
  CoupledState next;
  std::optional<Mesh> moved;
  Field w;
  if (moving_) {
    // Omega_f^n from the step-n solid displacement; w^n by backward difference.
    Field eta_f = fluid_domain_displacement(s.biot);
    w = s.eta_f_prev ? mesh_velocity(eta_f, *s.eta_f_prev, params_.dt)
                     : Field(eta_f.space, Vector::Zero(eta_f.values.size()));
    moved.emplace(fluid_mesh_->deformed(vertex_displacement(eta_f)));
    next.eta_f_prev = std::move(eta_f);
  }
  const Mesh& mesh_n = moved ? *moved : *fluid_mesh_;
  const Field* w_ptr = moving_ ? &w : nullptr;
  const RobinData robin = robin_data(s, mesh_n);

  auto fluid_task = [&] {
    return run_task("fluid", [&] { return solve_fluid(s, mesh_n, w_ptr, robin, data, t_next); });
  };
  auto biot_task = [&] {
    return run_task("biot", [&] { return biot_->step(s.biot, robin, data.biot, t_next); });
  };
  switch (dispatch) {
    case Dispatch::Concurrent: {
      auto f = std::async(std::launch::async, fluid_task);
      auto b = std::async(std::launch::async, biot_task);
      std::exception_ptr first;
      try {
        next.fluid = f.get();
      } catch (...) {
        first = std::current_exception();
      }
      try {
        next.biot = b.get();
      } catch (...) {
        if (!first) first = std::current_exception();
      }
      if (first) std::rethrow_exception(first);
      break;
    }
    case Dispatch::Sequential:
      next.fluid = fluid_task();
      next.biot = biot_task();
      break;
    case Dispatch::SequentialReversed:
      next.biot = biot_task();
      next.fluid = fluid_task();
      break;
  }
  return next;
}

namespace {

double trace_change(const FluidTraces& fa, const BiotTraces& ba, const FluidTraces& fb,
                    const BiotTraces& bb, const InterfacePairing& p, const Mesh& fm,
                    const Mesh& sm) {
  double sum = trace_l2_norm_sq(axpby(1.0, fa.normal, -1.0, fb.normal), p.fluid, fm) +
               trace_l2_norm_sq(axpby(1.0, fa.tangential, -1.0, fb.tangential), p.fluid, fm) +
               trace_l2_norm_sq(axpby(1.0, ba.normal, -1.0, bb.normal), p.solid, sm) +
               trace_l2_norm_sq(axpby(1.0, ba.tangential, -1.0, bb.tangential), p.solid, sm) +
               trace_l2_norm_sq(axpby(1.0, ba.pressure, -1.0, bb.pressure), p.solid, sm);
  return std::sqrt(sum);
}

}  // namespace

FixedPointResult CoupledSolver::fixed_point_iterate(const CoupledState& s, const ProblemData& data,
                                                    double tol, int maxit) {
  if (moving_) fail(ErrorKind::Capability, "fixed-point iteration is defined on fixed domains");
  if (maxit < 1) fail(ErrorKind::Argument, "maxit must be at least 1");
  const double t_next = s.time() + params_.dt;
  const Mesh& fm = *fluid_mesh_;
  const Mesh& sm = *solid_mesh_;
  FixedPointResult out;
  CoupledState iterate = s;
  FluidTraces ft = fluid_interface_traces(iterate.fluid, pairing_.fluid, fm);
  BiotTraces bt = biot_interface_traces(iterate.biot, pairing_.solid, sm);
  for (int k = 1; k <= maxit; ++k) {
    RobinData r = compute_robin_data(ft, bt, pairing_, params_);
    CoupledState next;
    next.fluid = fluid_->step(fm, s.fluid, r, nullptr, data.fluid, t_next);
    next.biot = biot_->step(s.biot, r, data.biot, t_next);
    FluidTraces ft2 = fluid_interface_traces(next.fluid, pairing_.fluid, fm);
    BiotTraces bt2 = biot_interface_traces(next.biot, pairing_.solid, sm);
    const double inc = trace_change(ft, bt, ft2, bt2, pairing_, fm, sm);
    out.increments.push_back(inc);
    out.iterations = k;
    iterate = std::move(next);
    ft = std::move(ft2);
    bt = std::move(bt2);
    if (inc < tol) {
      out.converged = true;
      break;
    }
  }
  out.residuals = interface_residuals(s, iterate, data);
  out.state = std::move(iterate);
  return out;
}

InterfaceResiduals CoupledSolver::interface_residuals(const CoupledState& s_n,
                                                      const CoupledState& s_next,
                                                      const ProblemData& data) {
  if (moving_) fail(ErrorKind::Capability, "interface residuals are defined on fixed domains");
  const double t_next = s_n.time() + params_.dt;
  const Mesh& fm = *fluid_mesh_;
  const Mesh& sm = *solid_mesh_;
  const RobinData r = robin_data(s_next, fm);

  // Average interface normal at each interface node.
  auto node_normals = [](const Mesh& mesh, const DofMap& dm, const InterfaceSide& side) {
    std::map<Index, Vec2> n;
    for (Index e : side.edges) {
      const auto& be = mesh.boundary_edges()[e];
      const Vec2 ne = mesh.edge_normal(be);
      for (Index node : dm.edge_nodes(be)) {
        if (node >= 0) n[node] += ne;
      }
    }
    for (auto& [node, v] : n) v.normalize();
    return n;
  };

  InterfaceResiduals res;
  {
    const Vector x = fluid_->pack(s_next.fluid);
    const Vector b = fluid_->rhs(fm, s_n.fluid, r, data.fluid, t_next);
    Vector rr = fluid_->lhs(fm, s_n.fluid, nullptr) * x - b;
    Vector bf = b;
    for (Index d : fluid_->constrained()) rr[d] = bf[d] = 0.0;
    const DofMap& V = *fluid_spaces_.velocity;
    double tn = 0.0;
    double tt = 0.0;
    for (const auto& [node, n] : node_normals(fm, V, pairing_.fluid)) {
      const Vec2 v(rr[V.dof(0, node)], rr[V.dof(1, node)]);
      const double vn = v.dot(n);
      const double vt = v.x() * n.y() - v.y() * n.x();
      tn += vn * vn;
      tt += vt * vt;
    }
    const double scale = std::max(bf.norm(), std::numeric_limits<double>::min());
    res.bjs = std::sqrt(tt) / scale;
    res.stress = std::sqrt(tn) / scale;
  }
  {
    const Vector x = biot_->pack(s_next.biot);
    const Vector b = biot_->rhs(s_n.biot, r, data.biot, t_next);
    Vector rr = biot_->lhs() * x - b;
    Vector bb = b;
    for (Index d : biot_->constrained()) rr[d] = bb[d] = 0.0;
    const DofMap& V = *biot_spaces_.displacement;
    const DofMap& Q = *biot_spaces_.pressure;
    double ts = 0.0;
    double tf = 0.0;
    for (const auto& [node, n] : node_normals(sm, V, pairing_.solid)) {
      ts += rr[V.dof(0, node)] * rr[V.dof(0, node)] + rr[V.dof(1, node)] * rr[V.dof(1, node)];
      if (node < Q.num_nodes()) {
        const double v = rr[V.size() + node];
        tf += v * v;
      }
    }
    const double scale = std::max(bb.norm(), std::numeric_limits<double>::min());
    res.stress = std::max(res.stress, std::sqrt(ts) / scale);
    res.normal_flux = std::sqrt(tf) / scale;
  }
  return res;
}

}  // namespace fpsi
