#include "fpsi/norms.hpp"

#include <cmath>

#include "fpsi/assembly.hpp"
#include "fpsi/error.hpp"

namespace fpsi {

namespace {

constexpr int kOrder = 4;

void check(const Field& f, const Mesh& mesh) {
  if (!f.space) fail(ErrorKind::Argument, "field has no dof map");
  if (f.space->num_triangles() != mesh.num_triangles() || f.values.size() != f.space->size()) {
    fail(ErrorKind::Dimension, "field does not live on the given mesh");
  }
}

/// Calls visit(weight, value components, gradient rows) at every quadrature
/// point. grad[c] is the gradient of component c.
template <class Visit>
void for_each_point(const Field& f, const Mesh& mesh, Visit&& visit) {
  check(f, mesh);
  const DofMap& dm = *f.space;
  const auto& rule = quadrature_rule(kOrder);
  std::vector<BasisValues> basis;
  for (const auto& q : rule) basis.push_back(reference_basis_unchecked(dm.element(), q.bary));
  const int nc = dm.components();
  const int nn = dm.nodes_per_cell();
  for (Index t = 0; t < mesh.num_triangles(); ++t) {
    const CellGeometry geo(mesh, t);
    const auto nodes = dm.cell_nodes(t);
    for (size_t q = 0; q < rule.size(); ++q) {
      std::array<double, 2> val{0.0, 0.0};
      std::array<Vec2, 2> grad{Vec2::Zero(), Vec2::Zero()};
      for (int i = 0; i < nn; ++i) {
        const Vec2 g = physical_gradient(basis[q], i, geo);
        for (int c = 0; c < nc; ++c) {
          const double coef = f.values[dm.dof(c, nodes[i])];
          val[c] += coef * basis[q].value[i];
          grad[c] += coef * g;
        }
      }
      visit(2.0 * geo.area * rule[q].weight, geo.map(rule[q].bary), val, grad);
    }
  }
}

}  // namespace

double l2_norm_sq(const Field& f, const Mesh& mesh) {
  double sum = 0.0;
  for_each_point(f, mesh, [&](double w, const Vec2&, const auto& v, const auto&) {
    sum += w * (v[0] * v[0] + v[1] * v[1]);
  });
  return sum;
}

double l2_norm(const Field& f, const Mesh& mesh) { return std::sqrt(l2_norm_sq(f, mesh)); }

double l2_error(const Field& f, const ScalarFn& exact, const Mesh& mesh) {
  if (f.space && f.space->components() != 1) fail(ErrorKind::Dimension, "scalar field expected");
  double sum = 0.0;
  for_each_point(f, mesh, [&](double w, const Vec2& x, const auto& v, const auto&) {
    const double d = v[0] - exact(x);
    sum += w * d * d;
  });
  return std::sqrt(sum);
}

double l2_error(const Field& f, const VectorFn& exact, const Mesh& mesh) {
  if (f.space && f.space->components() != 2) fail(ErrorKind::Dimension, "vector field expected");
  double sum = 0.0;
  for_each_point(f, mesh, [&](double w, const Vec2& x, const auto& v, const auto&) {
    const Vec2 d = Vec2(v[0], v[1]) - exact(x);
    sum += w * d.squaredNorm();
  });
  return std::sqrt(sum);
}

double gradient_norm_sq(const Field& f, const Mesh& mesh) {
  double sum = 0.0;
  for_each_point(f, mesh, [&](double w, const Vec2&, const auto&, const auto& g) {
    sum += w * (g[0].squaredNorm() + g[1].squaredNorm());
  });
  return sum;
}

double sym_grad_norm_sq(const Field& u, const Mesh& mesh) {
  if (u.space && u.space->components() != 2) fail(ErrorKind::Dimension, "vector field expected");
  double sum = 0.0;
  for_each_point(u, mesh, [&](double w, const Vec2&, const auto&, const auto& g) {
    const double off = 0.5 * (g[0][1] + g[1][0]);
    sum += w * (g[0][0] * g[0][0] + g[1][1] * g[1][1] + 2.0 * off * off);
  });
  return sum;
}

double divergence_norm_sq(const Field& u, const Mesh& mesh) {
  if (u.space && u.space->components() != 2) fail(ErrorKind::Dimension, "vector field expected");
  double sum = 0.0;
  for_each_point(u, mesh, [&](double w, const Vec2&, const auto&, const auto& g) {
    const double d = g[0][0] + g[1][1];
    sum += w * d * d;
  });
  return sum;
}

double energy_norm_S(const Field& eta, double mu_p, double lambda_p, const Mesh& mesh) {
  return std::sqrt(2.0 * mu_p * sym_grad_norm_sq(eta, mesh) +
                   lambda_p * divergence_norm_sq(eta, mesh));
}

double integrate(const Field& f, const Mesh& mesh) {
  double sum = 0.0;
  for_each_point(f, mesh, [&](double w, const Vec2&, const auto& v, const auto&) {
    sum += w * v[0];
  });
  return sum;
}

}  // namespace fpsi
