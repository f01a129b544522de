#include "fpsi/assembly.hpp"

#include <string>

#include "fpsi/error.hpp"
#include "fpsi/log.hpp"

namespace fpsi {

CellGeometry::CellGeometry(const Mesh& mesh, Index t) {
  const auto& tri = mesh.triangles()[t];
  const auto& nodes = mesh.nodes();
  for (int k = 0; k < 3; ++k) p[k] = nodes[tri[k]];
  area = mesh.signed_area(t);
  const double inv = 1.0 / (2.0 * area);
  grad_lambda[0] = Vec2(p[1].y() - p[2].y(), p[2].x() - p[1].x()) * inv;
  grad_lambda[1] = Vec2(p[2].y() - p[0].y(), p[0].x() - p[2].x()) * inv;
  grad_lambda[2] = Vec2(p[0].y() - p[1].y(), p[1].x() - p[0].x()) * inv;
}

namespace {

bool is_boundary(Form k) {
  return k == Form::BoundaryMass || k == Form::BoundaryNormal || k == Form::BoundaryTangent ||
         k == Form::BoundaryNormalScalar;
}

std::string_view form_name(Form k) {
  switch (k) {
    case Form::Mass: return "mass";
    case Form::VectorMass: return "vector-mass";
    case Form::Stiffness: return "stiffness";
    case Form::SymGrad: return "sym-grad";
    case Form::DivPressure: return "div-pressure";
    case Form::GradDiv: return "grad-div";
    case Form::Convection: return "convection";
    case Form::BoundaryMass: return "boundary-mass";
    case Form::BoundaryNormal: return "boundary-normal";
    case Form::BoundaryTangent: return "boundary-tangent";
    case Form::BoundaryNormalScalar: return "boundary-normal-scalar";
  }
  return "form";
}

void require(bool ok, Form k, const std::string& what) {
  if (!ok) fail(ErrorKind::Dimension, std::string(form_name(k)) + ": " + what);
}

void check_spaces(const FormSpec& spec, const Mesh& mesh, const DofMap& trial,
                  const DofMap& test) {
  require(trial.num_triangles() == mesh.num_triangles() &&
              test.num_triangles() == mesh.num_triangles(),
          spec.kind, "dof map built on a different mesh");
  const int ct = trial.components();
  const int cs = test.components();
  switch (spec.kind) {
    case Form::Mass:
    case Form::Stiffness:
    case Form::BoundaryMass:
      require(ct == cs, spec.kind, "trial and test component counts differ");
      break;
    case Form::VectorMass:
    case Form::SymGrad:
    case Form::GradDiv:
    case Form::Convection:
    case Form::BoundaryNormal:
    case Form::BoundaryTangent:
      require(ct == 2 && cs == 2, spec.kind, "requires 2-component spaces");
      break;
    case Form::DivPressure:
    case Form::BoundaryNormalScalar:
      require((ct == 1 && cs == 2) || (ct == 2 && cs == 1), spec.kind,
              "requires one scalar and one 2-component space");
      break;
  }
  if (spec.kind == Form::Convection) {
    if (spec.advection == nullptr || !spec.advection->space ||
        spec.advection->space->components() != 2) {
      fail(ErrorKind::Argument, "convection requires a 2-component advection field");
    }
    require(spec.advection->space->num_triangles() == mesh.num_triangles(), spec.kind,
            "advection field lives on a different mesh");
  }
  if (is_boundary(spec.kind) && !spec.marker) {
    fail(ErrorKind::Argument, std::string(form_name(spec.kind)) + " requires a marker");
  }
}

struct Table {
  std::vector<QuadraturePoint> points;
  std::vector<BasisValues> trial;
  std::vector<BasisValues> test;
};

Table make_table(int order, Element trial, Element test) {
  Table tb;
  tb.points = quadrature_rule(order);
  for (const auto& q : tb.points) {
    tb.trial.push_back(reference_basis_unchecked(trial, q.bary));
    tb.test.push_back(reference_basis_unchecked(test, q.bary));
  }
  return tb;
}

Index add_domain_form(std::vector<Triplet>& out, const FormSpec& spec, const Mesh& mesh,
                      const DofMap& trial, const DofMap& test, BlockOffset off) {
  const int order = spec.quadrature_order > 0 ? spec.quadrature_order
                    : spec.kind == Form::Convection ? 5
                                                    : 4;
  const Table tb = make_table(order, trial.element(), test.element());
  const int nt = trial.nodes_per_cell();
  const int ns = test.nodes_per_cell();
  const int ct = trial.components();
  const int cs = test.components();
  const int rows = ns * cs;
  const int cols = nt * ct;
  std::vector<double> local(static_cast<size_t>(rows * cols));
  std::array<Vec2, 6> gt;
  std::array<Vec2, 6> gs;
  const double coef = spec.coefficient;
  out.reserve(out.size() + static_cast<size_t>(mesh.num_triangles() * rows * cols));

  for (Index t = 0; t < mesh.num_triangles(); ++t) {
    const CellGeometry geo(mesh, t);
    std::fill(local.begin(), local.end(), 0.0);
    auto at = [&](int c, int i, int d, int j) -> double& {
      return local[static_cast<size_t>((c * ns + i) * cols + d * nt + j)];
    };
    for (size_t q = 0; q < tb.points.size(); ++q) {
      const BasisValues& bt = tb.trial[q];
      const BasisValues& bs = tb.test[q];
      const double w = coef * 2.0 * geo.area * tb.points[q].weight;
      for (int j = 0; j < nt; ++j) gt[j] = physical_gradient(bt, j, geo);
      for (int i = 0; i < ns; ++i) gs[i] = physical_gradient(bs, i, geo);
      switch (spec.kind) {
        case Form::Mass:
        case Form::VectorMass:
          for (int i = 0; i < ns; ++i)
            for (int j = 0; j < nt; ++j) {
              const double v = w * bs.value[i] * bt.value[j];
              for (int c = 0; c < cs; ++c) at(c, i, c, j) += v;
            }
          break;
        case Form::Stiffness:
          for (int i = 0; i < ns; ++i)
            for (int j = 0; j < nt; ++j) {
              const double v = w * gs[i].dot(gt[j]);
              for (int c = 0; c < cs; ++c) at(c, i, c, j) += v;
            }
          break;
        case Form::SymGrad:
          for (int i = 0; i < ns; ++i)
            for (int j = 0; j < nt; ++j) {
              const double gg = gs[i].dot(gt[j]);
              for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                  at(c, i, d, j) += w * ((c == d ? gg : 0.0) + gt[j][c] * gs[i][d]);
            }
          break;
        case Form::GradDiv:
          for (int i = 0; i < ns; ++i)
            for (int j = 0; j < nt; ++j)
              for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) at(c, i, d, j) += w * gt[j][d] * gs[i][c];
          break;
        case Form::DivPressure:
          if (ct == 1) {
            for (int i = 0; i < ns; ++i)
              for (int j = 0; j < nt; ++j)
                for (int c = 0; c < 2; ++c) at(c, i, 0, j) += w * bt.value[j] * gs[i][c];
          } else {
            for (int i = 0; i < ns; ++i)
              for (int j = 0; j < nt; ++j)
                for (int d = 0; d < 2; ++d) at(0, i, d, j) += w * gt[j][d] * bs.value[i];
          }
          break;
        case Form::Convection: {
          const Vec2 b = evaluate_vector(*spec.advection, t, tb.points[q].bary);
          for (int i = 0; i < ns; ++i)
            for (int j = 0; j < nt; ++j) {
              const double v = w * b.dot(gt[j]) * bs.value[i];
              for (int c = 0; c < 2; ++c) at(c, i, c, j) += v;
            }
          break;
        }
        default:
          break;
      }
    }
    const auto tn = trial.cell_nodes(t);
    const auto sn = test.cell_nodes(t);
    for (int c = 0; c < cs; ++c)
      for (int i = 0; i < ns; ++i) {
        const Index r = off.row + test.dof(c, sn[i]);
        for (int d = 0; d < ct; ++d)
          for (int j = 0; j < nt; ++j) {
            const double v = at(c, i, d, j);
            if (v != 0.0) out.emplace_back(r, off.col + trial.dof(d, tn[j]), v);
          }
      }
  }
  return mesh.num_triangles();
}

Index add_boundary_form(std::vector<Triplet>& out, const FormSpec& spec, const Mesh& mesh,
                        const DofMap& trial, const DofMap& test, BlockOffset off) {
  const auto ids = mesh.boundary_edges_with(*spec.marker);
  if (ids.empty()) {
    warn(std::string("empty boundary: no edges carry marker ") +
         std::string(to_string(*spec.marker)) + " for " + std::string(form_name(spec.kind)));
    return 0;
  }
  const int nt = nodes_per_edge(trial.element());
  const int ns = nodes_per_edge(test.element());
  const int ct = trial.components();
  const int cs = test.components();
  const int cols = nt * ct;
  std::vector<double> local(static_cast<size_t>(ns * cs * cols));
  const double coef = spec.coefficient;
  for (Index id : ids) {
    const BoundaryEdge& e = mesh.boundary_edges()[id];
    const double len = mesh.edge_length(e);
    const Vec2 n = mesh.edge_normal(e);
    const Vec2 tau = mesh.edge_tangent(e);
    std::fill(local.begin(), local.end(), 0.0);
    auto at = [&](int c, int i, int d, int j) -> double& {
      return local[static_cast<size_t>((c * ns + i) * cols + d * nt + j)];
    };
    for (const auto& g : gauss_5()) {
      const auto bt = edge_basis(trial.element(), g.s);
      const auto bs = edge_basis(test.element(), g.s);
      const double w = coef * len * g.weight;
      for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nt; ++j) {
          const double v = w * bs[i] * bt[j];
          switch (spec.kind) {
            case Form::BoundaryMass:
              for (int c = 0; c < cs; ++c) at(c, i, c, j) += v;
              break;
            case Form::BoundaryNormal:
              for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) at(c, i, d, j) += v * n[c] * n[d];
              break;
            case Form::BoundaryTangent:
              for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d) at(c, i, d, j) += v * tau[c] * tau[d];
              break;
            case Form::BoundaryNormalScalar:
              if (ct == 1) {
                for (int c = 0; c < 2; ++c) at(c, i, 0, j) += v * n[c];
              } else {
                for (int d = 0; d < 2; ++d) at(0, i, d, j) += v * n[d];
              }
              break;
            default:
              break;
          }
        }
    }
    const auto tn = trial.edge_nodes(e);
    const auto sn = test.edge_nodes(e);
    for (int c = 0; c < cs; ++c)
      for (int i = 0; i < ns; ++i) {
        const Index r = off.row + test.dof(c, sn[i]);
        for (int d = 0; d < ct; ++d)
          for (int j = 0; j < nt; ++j) {
            const double v = at(c, i, d, j);
            if (v != 0.0) out.emplace_back(r, off.col + trial.dof(d, tn[j]), v);
          }
      }
  }
  return static_cast<Index>(ids.size());
}

}  // namespace

Index add_form(std::vector<Triplet>& out, const FormSpec& spec, const Mesh& mesh,
               const DofMap& trial, const DofMap& test, BlockOffset offset) {
  check_spaces(spec, mesh, trial, test);
  if (is_boundary(spec.kind)) return add_boundary_form(out, spec, mesh, trial, test, offset);
  return add_domain_form(out, spec, mesh, trial, test, offset);
}

SparseMatrix assemble_form(const FormSpec& spec, const Mesh& mesh, const DofMap& trial,
                           const DofMap& test) {
  std::vector<Triplet> trips;
  add_form(trips, spec, mesh, trial, test);
  SparseMatrix m(test.size(), trial.size());
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

namespace {

[[noreturn]] void bad_data(std::string_view what) {
  fail(ErrorKind::Argument, "functional data mismatch: " + std::string(what));
}

void add_domain_load(Eigen::Ref<Vector> out, const FunctionalSpec& spec, const Mesh& mesh,
                     const DofMap& test, Index offset) {
  const int order = spec.quadrature_order > 0 ? spec.quadrature_order : 5;
  const auto& rule = quadrature_rule(order);
  std::vector<BasisValues> basis;
  for (const auto& q : rule) basis.push_back(reference_basis_unchecked(test.element(), q.bary));
  const ScalarFn* sf = std::get_if<ScalarFn>(&spec.data);
  const VectorFn* vf = std::get_if<VectorFn>(&spec.data);
  if (test.components() == 1 && sf == nullptr) bad_data("scalar space needs a ScalarFn");
  if (test.components() == 2 && vf == nullptr) bad_data("vector space needs a VectorFn");
  const int ns = test.nodes_per_cell();
  for (Index t = 0; t < mesh.num_triangles(); ++t) {
    const CellGeometry geo(mesh, t);
    const auto sn = test.cell_nodes(t);
    for (size_t q = 0; q < rule.size(); ++q) {
      const Vec2 x = geo.map(rule[q].bary);
      const double w = 2.0 * geo.area * rule[q].weight;
      if (sf) {
        const double f = (*sf)(x);
        for (int i = 0; i < ns; ++i) out[offset + test.dof(0, sn[i])] += w * f * basis[q].value[i];
      } else {
        const Vec2 f = (*vf)(x);
        for (int i = 0; i < ns; ++i)
          for (int c = 0; c < 2; ++c)
            out[offset + test.dof(c, sn[i])] += w * f[c] * basis[q].value[i];
      }
    }
  }
}

void add_boundary_load(Eigen::Ref<Vector> out, const FunctionalSpec& spec, const Mesh& mesh,
                       const DofMap& test, Index offset) {
  if (!spec.marker) fail(ErrorKind::Argument, "boundary functional requires a marker");
  const auto ids = mesh.boundary_edges_with(*spec.marker);
  if (ids.empty()) {
    warn(std::string("empty boundary: no edges carry marker ") +
         std::string(to_string(*spec.marker)));
    return;
  }
  const EdgeScalarFn* sf = std::get_if<EdgeScalarFn>(&spec.data);
  const EdgeVectorFn* vf = std::get_if<EdgeVectorFn>(&spec.data);
  if (!sf && !vf) bad_data("boundary functionals take edge callbacks");
  const int cs = test.components();
  switch (spec.kind) {
    case Functional::BoundaryLoad:
      if ((cs == 1 && !sf) || (cs == 2 && !vf)) bad_data("boundary load rank differs from space");
      break;
    case Functional::BoundaryNormalLoad:
      if (cs != 2 || !sf) bad_data("normal load needs a vector space and a scalar callback");
      break;
    case Functional::BoundaryTangentLoad:
      if (cs != 2) bad_data("tangent load needs a vector space");
      break;
    default:
      break;
  }
  const int ns = nodes_per_edge(test.element());
  for (Index id : ids) {
    const BoundaryEdge& e = mesh.boundary_edges()[id];
    const Vec2& a = mesh.nodes()[e.nodes[0]];
    const Vec2& b = mesh.nodes()[e.nodes[1]];
    EdgePoint pt;
    pt.boundary_edge = id;
    pt.normal = mesh.edge_normal(e);
    pt.tangent = mesh.edge_tangent(e);
    const double len = mesh.edge_length(e);
    const auto sn = test.edge_nodes(e);
    for (const auto& g : gauss_5()) {
      pt.s = g.s;
      pt.x = (1.0 - g.s) * a + g.s * b;
      const auto phi = edge_basis(test.element(), g.s);
      const double w = len * g.weight;
      Vec2 contrib = Vec2::Zero();  // coefficient of phi_i e_c
      double scalar = 0.0;
      switch (spec.kind) {
        case Functional::BoundaryLoad:
          if (cs == 1) scalar = (*sf)(pt);
          else contrib = (*vf)(pt);
          break;
        case Functional::BoundaryNormalLoad:
          contrib = (*sf)(pt) * pt.normal;
          break;
        case Functional::BoundaryTangentLoad: {
          const double r = sf ? (*sf)(pt) : (*vf)(pt).dot(pt.tangent);
          contrib = r * pt.tangent;
          break;
        }
        default:
          break;
      }
      for (int i = 0; i < ns; ++i) {
        if (cs == 1) {
          out[offset + test.dof(0, sn[i])] += w * scalar * phi[i];
        } else {
          for (int c = 0; c < 2; ++c) out[offset + test.dof(c, sn[i])] += w * contrib[c] * phi[i];
        }
      }
    }
  }
}

}  // namespace

void add_functional(Eigen::Ref<Vector> out, const FunctionalSpec& spec, const Mesh& mesh,
                    const DofMap& test, Index offset) {
  if (offset < 0 || offset + test.size() > out.size()) {
    fail(ErrorKind::Dimension, "functional block exceeds output vector");
  }
  switch (spec.kind) {
    case Functional::DomainLoad:
      add_domain_load(out, spec, mesh, test, offset);
      break;
    case Functional::DivergenceSource:
      if (test.components() != 1) bad_data("divergence source needs a scalar space");
      add_domain_load(out, spec, mesh, test, offset);
      break;
    default:
      add_boundary_load(out, spec, mesh, test, offset);
      break;
  }
}

Vector assemble_functional(const FunctionalSpec& spec, const Mesh& mesh, const DofMap& test) {
  Vector out = Vector::Zero(test.size());
  add_functional(out, spec, mesh, test);
  return out;
}

}  // namespace fpsi
