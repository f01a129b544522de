#include "fpsi/fluid.hpp"

#include <algorithm>
#include <set>

#include "fpsi/error.hpp"
#include "fpsi/norms.hpp"

namespace fpsi {

FluidSpaces make_fluid_spaces(const Mesh& mesh) {
  return {std::make_shared<const DofMap>(mesh, Element::P2, 2),
          std::make_shared<const DofMap>(mesh, Element::P1, 1)};
}

FluidState zero_fluid_state(const FluidSpaces& spaces, double t) {
  return {Field(spaces.velocity, t), Field(spaces.pressure, t), 0};
}

namespace {

std::set<Index> nodes_on(const Mesh& mesh, const DofMap& dm, Marker m) {
  std::set<Index> out;
  for (Index id : mesh.boundary_edges_with(m)) {
    for (Index n : dm.edge_nodes(mesh.boundary_edges()[id])) {
      if (n >= 0) out.insert(n);
    }
  }
  return out;
}

}  // namespace

std::vector<Index> fluid_constrained_dofs(const Mesh& mesh, const FluidSpaces& spaces,
                                          const DiscretizationOptions& options) {
  const DofMap& v = *spaces.velocity;
  std::set<Index> nodes = nodes_on(mesh, v, Marker::DirichletF);
  if (options.corners == CornerPolicy::InterfacePrecedence) {
    for (Index n : nodes_on(mesh, v, Marker::Interface)) nodes.erase(n);
  }
  for (Index n : nodes_on(mesh, v, Marker::Wall)) nodes.insert(n);
  std::vector<Index> dofs;
  for (int c = 0; c < 2; ++c)
    for (Index n : nodes) dofs.push_back(v.dof(c, n));
  std::sort(dofs.begin(), dofs.end());
  return dofs;
}

FluidSolver::FluidSolver(const Mesh& reference_mesh, InterfaceSide side, FluidSpaces spaces,
                         PhysicalParams params, DiscretizationOptions options, bool convective)
    : side_(std::move(side)),
      spaces_(std::move(spaces)),
      params_(params),
      options_(options),
      convective_(convective) {
  constrained_ = fluid_constrained_dofs(reference_mesh, spaces_, options_);
  if (options_.pressure_mean_zero) {
    pin_ = spaces_.velocity->size();
    constrained_.push_back(pin_);
  }
  mass_ = assemble_form({Form::VectorMass}, reference_mesh, *spaces_.velocity, *spaces_.velocity);
}

Vector FluidSolver::pack(const FluidState& s) const {
  Vector x(spaces_.velocity->size() + spaces_.pressure->size());
  x << s.u.values, s.p.values;
  return x;
}

SparseMatrix FluidSolver::lhs(const Mesh& mesh, const FluidState& state_n, const Field* w_n) const {
  const DofMap& V = *spaces_.velocity;
  const DofMap& Q = *spaces_.pressure;
  const Index nu = V.size();
  const Index n = nu + Q.size();
  const PhysicalParams& p = params_;
  std::vector<Triplet> t;
  add_form(t, {Form::VectorMass, p.rho_f / p.dt}, mesh, V, V);
  add_form(t, {Form::SymGrad, p.mu_f}, mesh, V, V);
  add_form(t, {Form::DivPressure, -1.0}, mesh, Q, V, {0, nu});
  add_form(t, {Form::DivPressure, 1.0}, mesh, V, Q, {nu, 0});
  add_form(t, {Form::BoundaryNormal, p.L, Marker::Interface}, mesh, V, V);
  add_form(t, {Form::BoundaryTangent, p.gamma, Marker::Interface}, mesh, V, V);
  if (convective_) {
    Field b = state_n.u;
    if (w_n != nullptr) {
      if (w_n->values.size() != b.values.size()) {
        fail(ErrorKind::Dimension, "mesh velocity does not match the velocity space");
      }
      b.values -= w_n->values;
    }
    FormSpec conv{Form::Convection, p.rho_f};
    conv.advection = &b;
    add_form(t, conv, mesh, V, V);
  }
  return from_triplets(n, t);
}

Vector FluidSolver::rhs(const Mesh& mesh, const FluidState& state_n, const RobinData& robin,
                        const FluidData& data, double t_next) const {
  const DofMap& V = *spaces_.velocity;
  const DofMap& Q = *spaces_.pressure;
  const Index nu = V.size();
  if (robin.R1.size() != side_.num_slots() || robin.R2.size() != side_.num_slots()) {
    fail(ErrorKind::CouplingData, "Robin data R1/R2 missing or sized for another interface");
  }
  if (state_n.u.values.size() != nu || state_n.p.values.size() != Q.size()) {
    fail(ErrorKind::Dimension, "fluid state does not match the fluid spaces");
  }
  const PhysicalParams& p = params_;
  Vector b = Vector::Zero(nu + Q.size());
  if (convective_) {
    const SparseMatrix m = assemble_form({Form::VectorMass}, mesh, V, V);
    b.head(nu) = (p.rho_f / p.dt) * (m * state_n.u.values);
  } else {
    b.head(nu) = (p.rho_f / p.dt) * (mass_ * state_n.u.values);
  }
  if (data.force) {
    add_functional(b, {Functional::DomainLoad, {}, VectorFn([&](const Vec2& x) { return data.force(x, t_next); })},
                   mesh, V);
  }
  if (data.divergence) {
    add_functional(b,
                   {Functional::DivergenceSource, {},
                    ScalarFn([&](const Vec2& x) { return data.divergence(x, t_next); })},
                   mesh, Q, nu);
  }
  if (data.traction && mesh.has_marker(Marker::NeumannF)) {
    add_functional(b,
                   {Functional::BoundaryLoad, Marker::NeumannF,
                    EdgeVectorFn([&](const EdgePoint& e) { return data.traction(e, t_next); })},
                   mesh, V);
  }
  add_functional(b, {Functional::BoundaryNormalLoad, Marker::Interface, as_edge_function(robin.R1, side_)},
                 mesh, V);
  add_functional(b, {Functional::BoundaryTangentLoad, Marker::Interface, as_edge_function(robin.R2, side_)},
                 mesh, V);
  return b;
}

Constraints FluidSolver::dirichlet(const Mesh& mesh, const FluidData& data, double t_next) const {
  const DofMap& V = *spaces_.velocity;
  const auto coords = V.node_coordinates(mesh);
  std::set<Index> wall = nodes_on(mesh, V, Marker::Wall);
  Constraints c;
  for (Index d : constrained_) {
    if (d == pin_) {
      c[d] = 0.0;
      continue;
    }
    const int comp = static_cast<int>(d / V.num_nodes());
    const Index node = d % V.num_nodes();
    double v = 0.0;
    if (data.velocity && !wall.count(node)) v = data.velocity(coords[node], t_next)[comp];
    c[d] = v;
  }
  return c;
}

namespace {

FluidState unpack(const Vector& x, const FluidState& like, const Mesh& mesh, bool mean_zero,
                  double t) {
  FluidState out;
  const Index nu = like.u.space->size();
  out.u = Field(like.u.space, x.head(nu), t);
  out.p = Field(like.p.space, x.tail(like.p.space->size()), t);
  if (mean_zero) {
    const double mean = integrate(out.p, mesh) / mesh.total_area();
    out.p.values.array() -= mean;
  }
  out.step = like.step + 1;
  return out;
}

}  // namespace

FluidState FluidSolver::step(const Mesh& mesh_n, const FluidState& state_n, const RobinData& robin,
                             const Field* w_n, const FluidData& data, double t_next) {
  const Vector b = rhs(mesh_n, state_n, robin, data, t_next);
  const Constraints g = dirichlet(mesh_n, data, t_next);
  Vector x;
  if (!convective_) {
    if (!fixed_) fixed_.emplace(lhs(mesh_n, state_n, w_n), constrained_);
    x = fixed_->solve(b, g);
  } else {
    EliminatedOperator op(lhs(mesh_n, state_n, w_n), constrained_);
    x = op.solve(b, g);
  }
  return unpack(x, state_n, mesh_n, options_.pressure_mean_zero, t_next);
}

SparseSystem assemble_fluid_step(const PhysicalParams& params, const DiscretizationOptions& options,
                                 const Mesh& mesh_n, const InterfaceSide& side,
                                 const FluidState& state_n, const RobinData& robin,
                                 const Field* w_n, bool convective, const FluidData& data,
                                 double t_next) {
  FluidSolver solver(mesh_n, side, {state_n.u.space, state_n.p.space}, params, options, convective);
  SparseSystem sys{solver.lhs(mesh_n, state_n, w_n),
                   solver.rhs(mesh_n, state_n, robin, data, t_next), {}};
  return apply_dirichlet(std::move(sys), solver.dirichlet(mesh_n, data, t_next));
}

FluidState solve_fluid_step(const SparseSystem& system, const FluidState& state_n,
                            const Mesh& mesh_n, const DiscretizationOptions& options,
                            double t_next) {
  const Index n = state_n.u.space->size() + state_n.p.space->size();
  if (system.matrix.rows() != n) fail(ErrorKind::Dimension, "system does not match fluid spaces");
  return unpack(solve_sparse(system), state_n, mesh_n, options.pressure_mean_zero, t_next);
}

FluidTraces fluid_interface_traces(const FluidState& state, const InterfaceSide& side,
                                   const Mesh& mesh) {
  FluidTraces tr;
  tr.step = state.step;
  tr.normal = normal_trace(state.u, side, mesh);
  tr.tangential = tangential_trace(state.u, side, mesh);
  tr.normal.step = tr.tangential.x.step = tr.tangential.y.step = state.step;
  return tr;
}

}  // namespace fpsi
