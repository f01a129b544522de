#include "fpsi/biot.hpp"

#include <algorithm>
#include <set>

#include "fpsi/error.hpp"

namespace fpsi {

BiotSpaces make_biot_spaces(const Mesh& mesh) {
  return {std::make_shared<const DofMap>(mesh, Element::P2, 2),
          std::make_shared<const DofMap>(mesh, Element::P1, 1)};
}

BiotState zero_biot_state(const BiotSpaces& s, double t) {
  return {Field(s.displacement, t), Field(s.displacement, t), Field(s.pressure, t), 0};
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

std::set<Index> merge(std::set<Index> a, const std::set<Index>& b) {
  a.insert(b.begin(), b.end());
  return a;
}

}  // namespace

std::vector<Index> biot_constrained_dofs(const Mesh& mesh, const BiotSpaces& spaces,
                                         const DiscretizationOptions& options) {
  const DofMap& V = *spaces.displacement;
  const DofMap& Q = *spaces.pressure;
  std::set<Index> xi_nodes =
      merge(nodes_on(mesh, V, Marker::DirichletP), nodes_on(mesh, V, Marker::NeumannP));
  std::set<Index> phi_nodes = nodes_on(mesh, Q, Marker::DirichletP);
  if (options.corners == CornerPolicy::InterfacePrecedence) {
    for (Index n : nodes_on(mesh, V, Marker::Interface)) xi_nodes.erase(n);
    for (Index n : nodes_on(mesh, Q, Marker::Interface)) phi_nodes.erase(n);
  }
  xi_nodes = merge(std::move(xi_nodes), nodes_on(mesh, V, Marker::Wall));
  std::vector<Index> dofs;
  for (int c = 0; c < 2; ++c)
    for (Index n : xi_nodes) dofs.push_back(V.dof(c, n));
  for (Index n : phi_nodes) dofs.push_back(V.size() + Q.dof(0, n));
  std::sort(dofs.begin(), dofs.end());
  return dofs;
}

BiotSolver::BiotSolver(const Mesh& mesh, InterfaceSide side, BiotSpaces spaces,
                       PhysicalParams params, DiscretizationOptions options)
    : mesh_(&mesh),
      side_(std::move(side)),
      spaces_(std::move(spaces)),
      params_(params),
      options_(options) {
  const DofMap& V = *spaces_.displacement;
  const DofMap& Q = *spaces_.pressure;
  const Index nv = V.size();
  const PhysicalParams& p = params_;
  constrained_ = biot_constrained_dofs(mesh, spaces_, options_);
  mass_u_ = assemble_form({Form::VectorMass}, mesh, V, V);
  mass_p_ = assemble_form({Form::Mass}, mesh, Q, Q);
  {
    std::vector<Triplet> t;
    add_form(t, {Form::SymGrad, p.mu_p}, mesh, V, V);
    add_form(t, {Form::GradDiv, p.lambda_p}, mesh, V, V);
    elasticity_ = from_triplets(nv, t);
  }
  std::vector<Triplet> t;
  add_form(t, {Form::VectorMass, p.rho_p / p.dt}, mesh, V, V);
  add_form(t, {Form::SymGrad, p.dt * p.mu_p}, mesh, V, V);
  add_form(t, {Form::GradDiv, p.dt * p.lambda_p}, mesh, V, V);
  add_form(t, {Form::BoundaryTangent, p.gamma, Marker::Interface}, mesh, V, V);
  if (options_.include_xi_normal_term) {
    add_form(t, {Form::BoundaryNormal, 1.0, Marker::Interface}, mesh, V, V);
  }
  add_form(t, {Form::DivPressure, -p.alpha}, mesh, Q, V, {0, nv});
  add_form(t, {Form::BoundaryNormalScalar, 1.0, Marker::Interface}, mesh, Q, V, {0, nv});
  add_form(t, {Form::DivPressure, p.alpha}, mesh, V, Q, {nv, 0});
  add_form(t, {Form::BoundaryNormalScalar, -1.0, Marker::Interface}, mesh, V, Q, {nv, 0});
  add_form(t, {Form::Mass, p.c0 / p.dt}, mesh, Q, Q, {nv, nv});
  add_form(t, {Form::Stiffness, p.K}, mesh, Q, Q, {nv, nv});
  add_form(t, {Form::BoundaryMass, 1.0 / p.L, Marker::Interface}, mesh, Q, Q, {nv, nv});
  lhs_ = from_triplets(nv + Q.size(), t);
}

Vector BiotSolver::pack(const BiotState& s) const {
  Vector x(spaces_.displacement->size() + spaces_.pressure->size());
  x << s.xi.values, s.phi.values;
  return x;
}

Vector BiotSolver::rhs(const BiotState& state_n, const RobinData& robin, const BiotData& data,
                       double t_next) const {
  const Mesh& mesh = *mesh_;
  const DofMap& V = *spaces_.displacement;
  const DofMap& Q = *spaces_.pressure;
  const Index nv = V.size();
  const Index ns = side_.num_slots();
  if (robin.R3.size() != ns || robin.R4.size() != ns || robin.R5.size() != ns) {
    fail(ErrorKind::CouplingData, "Robin data R3/R4/R5 missing or sized for another interface");
  }
  if (state_n.xi.values.size() != nv || state_n.eta.values.size() != nv ||
      state_n.phi.values.size() != Q.size()) {
    fail(ErrorKind::Dimension, "Biot state does not match the Biot spaces");
  }
  const PhysicalParams& p = params_;
  Vector b = Vector::Zero(nv + Q.size());
  b.head(nv) = (p.rho_p / p.dt) * (mass_u_ * state_n.xi.values) - elasticity_ * state_n.eta.values;
  b.tail(Q.size()) = (p.c0 / p.dt) * (mass_p_ * state_n.phi.values);
  if (data.force) {
    add_functional(b, {Functional::DomainLoad, {}, VectorFn([&](const Vec2& x) { return data.force(x, t_next); })},
                   mesh, V);
  }
  if (data.source) {
    add_functional(b, {Functional::DomainLoad, {}, ScalarFn([&](const Vec2& x) { return data.source(x, t_next); })},
                   mesh, Q, nv);
  }
  if (data.flux && mesh.has_marker(Marker::NeumannP)) {
    add_functional(b,
                   {Functional::BoundaryLoad, Marker::NeumannP,
                    EdgeScalarFn([&](const EdgePoint& e) { return data.flux(e, t_next); })},
                   mesh, Q, nv);
  }
  add_functional(b, {Functional::BoundaryNormalLoad, Marker::Interface, as_edge_function(robin.R3, side_)},
                 mesh, V);
  add_functional(b, {Functional::BoundaryTangentLoad, Marker::Interface, as_edge_function(robin.R5, side_)},
                 mesh, V);
  add_functional(b, {Functional::BoundaryLoad, Marker::Interface, as_edge_function(robin.R4, side_)},
                 mesh, Q, nv);
  return b;
}

Constraints BiotSolver::dirichlet(const BiotData& data, double t_next) const {
  const DofMap& V = *spaces_.displacement;
  const Index nv = V.size();
  const auto coords = V.node_coordinates(*mesh_);
  const std::set<Index> wall = nodes_on(*mesh_, V, Marker::Wall);
  Constraints c;
  for (Index d : constrained_) {
    double v = 0.0;
    if (d < nv) {
      const int comp = static_cast<int>(d / V.num_nodes());
      const Index node = d % V.num_nodes();
      if (data.velocity && !wall.count(node)) v = data.velocity(coords[node], t_next)[comp];
    } else if (data.pressure) {
      v = data.pressure(coords[d - nv], t_next);  // P1 nodes are the first vertices
    }
    c[d] = v;
  }
  return c;
}

BiotState BiotSolver::finish(const Vector& x, const BiotState& state_n, double t_next) const {
  const Index nv = spaces_.displacement->size();
  BiotState out;
  out.xi = Field(spaces_.displacement, x.head(nv), t_next);
  out.phi = Field(spaces_.pressure, x.tail(spaces_.pressure->size()), t_next);
  out.eta = Field(spaces_.displacement, state_n.eta.values + params_.dt * out.xi.values, t_next);
  out.step = state_n.step + 1;
  return out;
}

BiotState BiotSolver::step(const BiotState& state_n, const RobinData& robin, const BiotData& data,
                           double t_next) {
  const Vector b = rhs(state_n, robin, data, t_next);
  const Constraints g = dirichlet(data, t_next);
  if (!op_) op_.emplace(lhs_, constrained_);
  return finish(op_->solve(b, g), state_n, t_next);
}

SparseSystem assemble_biot_step(const PhysicalParams& params, const DiscretizationOptions& options,
                                const Mesh& mesh, const InterfaceSide& side,
                                const BiotState& state_n, const RobinData& robin,
                                const BiotData& data, double t_next) {
  BiotSolver solver(mesh, side, {state_n.xi.space, state_n.phi.space}, params, options);
  SparseSystem sys{solver.lhs(), solver.rhs(state_n, robin, data, t_next), {}};
  return apply_dirichlet(std::move(sys), solver.dirichlet(data, t_next));
}

BiotState solve_biot_step(const SparseSystem& system, const BiotState& state_n, double dt,
                          double t_next) {
  const Index nv = state_n.xi.space->size();
  const Index n = nv + state_n.phi.space->size();
  if (system.matrix.rows() != n) fail(ErrorKind::Dimension, "system does not match Biot spaces");
  const Vector x = solve_sparse(system);
  BiotState out;
  out.xi = Field(state_n.xi.space, x.head(nv), t_next);
  out.phi = Field(state_n.phi.space, x.tail(state_n.phi.space->size()), t_next);
  out.eta = Field(state_n.eta.space, state_n.eta.values + dt * out.xi.values, t_next);
  out.step = state_n.step + 1;
  return out;
}

BiotTraces biot_interface_traces(const BiotState& state, const InterfaceSide& side,
                                 const Mesh& mesh) {
  BiotTraces tr;
  tr.step = state.step;
  tr.normal = normal_trace(state.xi, side, mesh);
  tr.tangential = tangential_trace(state.xi, side, mesh);
  tr.pressure = scalar_trace(state.phi, side, mesh);
  for (ScalarTrace* t : {&tr.normal, &tr.tangential.x, &tr.tangential.y, &tr.pressure}) {
    t->step = state.step;
  }
  return tr;
}

}  // namespace fpsi
