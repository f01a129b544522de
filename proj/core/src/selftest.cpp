#include "fpsi/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <set>

#include "fpsi/assembly.hpp"
#include "fpsi/dofmap.hpp"
#include "fpsi/error.hpp"
#include "fpsi/manufactured.hpp"
#include "fpsi/sparse.hpp"

namespace fpsi {

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

CheckResult mass_matrix_check() {
  const Mesh tri({Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)}, {{0, 1, 2}});
  const DofMap p1(tri, Element::P1, 1);
  const Eigen::MatrixXd m = Eigen::MatrixXd(assemble_form({Form::Mass}, tri, p1, p1));
  Eigen::MatrixXd ref = Eigen::MatrixXd::Constant(3, 3, 1.0 / 24.0);
  ref.diagonal().setConstant(2.0 / 24.0);
  const double err = (m - ref).cwiseAbs().maxCoeff();
  return {"P1 reference mass matrix", err <= 1e-15, "max deviation " + sci(err)};
}

CheckResult quadrature_check() {
  double worst = 0.0;
  for (int order = 4; order <= 6; ++order) {
    double one = 0, lin = 0, quartic = 0;
    for (const QuadraturePoint& q : quadrature_rule(order)) {
      const double x = q.bary[1], y = q.bary[2];
      one += q.weight;
      lin += q.weight * (x + y);
      quartic += q.weight * x * x * y * y;
    }
    worst = std::max({worst, std::abs(one - 0.5), std::abs(lin - 1.0 / 3.0),
                      std::abs(quartic - 1.0 / 180.0)});
  }
  return {"quadrature identities (orders 4-6)", worst <= 1e-14, "max deviation " + sci(worst)};
}

// Structured mesh with interior nodes moved off the grid.
Mesh perturbed_mesh() {
  const Mesh base = build_rect_mesh({0, 1, 0, 1}, 4, 4);
  std::vector<Vec2> nodes = base.nodes();
  for (size_t i = 0; i < nodes.size(); ++i) {
    Vec2& x = nodes[i];
    const bool interior = x.x() > 1e-12 && x.x() < 1 - 1e-12 && x.y() > 1e-12 && x.y() < 1 - 1e-12;
    if (interior) x += 0.05 * Vec2(std::sin(7.0 * i), std::cos(5.0 * i));
  }
  return Mesh(nodes, base.triangles());
}

CheckResult patch_check(Element element) {
  const Mesh mesh = perturbed_mesh();
  const DofMap dm(mesh, element, 1);
  const auto xs = dm.node_coordinates(mesh);
  auto exact = [](const Vec2& x) { return 1.0 + 2.0 * x.x() - 3.0 * x.y(); };
  SparseSystem sys{assemble_form({Form::Stiffness}, mesh, dm, dm), Vector::Zero(dm.size()), {}};
  Constraints bc;
  for (const BoundaryEdge& e : mesh.boundary_edges()) {
    const auto nodes = dm.edge_nodes(e);
    for (int k = 0; k < nodes_per_edge(element); ++k) bc[nodes[k]] = exact(xs[nodes[k]]);
  }
  const Vector u = solve_sparse(apply_dirichlet(std::move(sys), bc));
  double err = 0.0;
  for (Index i = 0; i < dm.size(); ++i) err = std::max(err, std::abs(u[i] - exact(xs[i])));
  const char* name = element == Element::P1 ? "affine patch test (P1)" : "affine patch test (P2)";
  return {name, err <= 1e-12, "max nodal error " + sci(err)};
}

}  // namespace

std::vector<CheckResult> kernel_self_tests() {
  std::vector<CheckResult> out;
  auto guarded = [&out](const char* name, auto&& check) {
    try {
      out.push_back(check());
    } catch (const std::exception& e) {
      out.push_back({name, false, e.what()});
    }
  };
  guarded("P1 reference mass matrix", mass_matrix_check);
  guarded("quadrature identities", quadrature_check);
  guarded("affine patch test (P1)", [] { return patch_check(Element::P1); });
  guarded("affine patch test (P2)", [] { return patch_check(Element::P2); });
  return out;
}

std::vector<CheckResult> forcing_gate() {
  std::vector<CheckResult> out;
  const PhysicalParams unit = benchmark_params(4);
  for (int c : {1, 2}) {
    for (double t : {0.25, 0.5, 0.75}) {
      const ResidualReport r = residual_check(c, t, 1e-4, 50, unit);
      char name[64];
      std::snprintf(name, sizeof name, "forcing oracle case %d t=%.2f", c, t);
      out.push_back({name, r.max() <= 1e-6, "max residual " + sci(r.max())});
    }
  }
  return out;
}

std::vector<CheckResult> forcing_perturbation_checks() {
  std::vector<CheckResult> out;
  const PhysicalParams unit = benchmark_params(4);
  ForcingOffsets f, g, s, d;
  f.fluid = Vec2(1, 0);
  g.divergence = 1.0;
  s.solid = Vec2(1, 0);
  d.darcy = 1.0;
  const std::pair<const char*, ForcingOffsets> probes[] = {
      {"fluid_momentum", f}, {"continuity", g}, {"solid_momentum", s}, {"darcy", d}};
  for (int c : {1, 2}) {
    for (const auto& [equation, offsets] : probes) {
      const ResidualReport r = residual_check(c, 0.5, 1e-4, 50, unit, offsets);
      bool ok = true;
      std::string detail;
      for (const auto& [name, value] : r.entries()) {
        const bool target = name == equation;
        ok = ok && (target ? std::abs(value - 1.0) <= 1e-6 : value <= 1e-6);
        if (target) detail = name + " residual " + sci(value);
      }
      char name[96];
      std::snprintf(name, sizeof name, "+1 on %s forcing, case %d", equation, c);
      out.push_back({name, ok, detail + (ok ? ", others below 1e-6" : ", leaked into another equation")});
    }
  }
  return out;
}

}  // namespace fpsi
