#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fpsi/assembly.hpp"
#include "fpsi/dofmap.hpp"
#include "fpsi/error.hpp"
#include "fpsi/log.hpp"
#include "fpsi/norms.hpp"
#include "fpsi/reference.hpp"
#include "fpsi/sparse.hpp"

using namespace fpsi;

namespace {

Mesh reference_triangle() { return Mesh({Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)}, {{0, 1, 2}}); }

Mesh unit_square(Index n) {
  return mark_boundary(build_rect_mesh({0, 1, 0, 1}, n, n),
                       std::vector<BoundaryRule>{{on_horizontal_line(0.0), Marker::Interface},
                                                 {none_of({on_horizontal_line(0.0)}), Marker::DirichletF}});
}

double asymmetry(const SparseMatrix& a) {
  const SparseMatrix at = a.transpose();
  return (a - at).norm() / a.norm();
}

}  // namespace

TEST(ReferenceBasis, P1Vertex) {
  const BasisValues b = reference_basis(Element::P1, {0, 1, 0});
  EXPECT_EQ(b.count, 3);
  EXPECT_DOUBLE_EQ(b.value[0], 0.0);
  EXPECT_DOUBLE_EQ(b.value[1], 1.0);
  EXPECT_DOUBLE_EQ(b.value[2], 0.0);
}

TEST(ReferenceBasis, P2MidpointIsNodal) {
  // Midpoint of edge (0,1) is local node 3.
  const BasisValues b = reference_basis(Element::P2, {0.5, 0.5, 0.0});
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(b.value[i], i == 3 ? 1.0 : 0.0, 1e-15);
}

TEST(ReferenceBasis, PartitionOfUnity) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(0, 1);
  for (int k = 0; k < 50; ++k) {
    double a = u(rng), b = u(rng);
    if (a + b > 1) a = 1 - a, b = 1 - b;
    for (Element e : {Element::P1, Element::P2}) {
      const BasisValues v = reference_basis(e, {1 - a - b, a, b});
      double sum = 0;
      for (int i = 0; i < v.count; ++i) sum += v.value[i];
      EXPECT_NEAR(sum, 1.0, 1e-15);
    }
  }
  const BasisValues c = reference_basis(Element::P2, {1.0 / 3, 1.0 / 3, 1.0 / 3});
  double sum = 0;
  for (int i = 0; i < 6; ++i) sum += c.value[i];
  EXPECT_NEAR(sum, 1.0, 1e-15);
}

TEST(ReferenceBasis, InvalidPoint) {
  EXPECT_THROW(reference_basis(Element::P1, {-0.1, 0.6, 0.5}), Error);
  EXPECT_THROW(reference_basis(Element::P2, {0.3, 0.3, 0.3}), Error);
}

TEST(Quadrature, Identities) {
  for (int order = 1; order <= 6; ++order) {
    double one = 0, lin = 0, quartic = 0;
    for (const auto& q : quadrature_rule(order)) {
      EXPECT_GT(q.weight, 0.0);
      const double x = q.bary[1], y = q.bary[2];
      one += q.weight;
      lin += q.weight * (x + y);
      quartic += q.weight * x * x * y * y;
    }
    EXPECT_NEAR(one, 0.5, 1e-14) << "order " << order;
    EXPECT_NEAR(lin, 1.0 / 3.0, 1e-14) << "order " << order;
    if (order >= 4) EXPECT_NEAR(quartic, 1.0 / 180.0, 1e-14) << "order " << order;
  }
}

TEST(Quadrature, UnsupportedOrder) {
  try {
    quadrature_rule(9);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Capability);
  }
}

TEST(AssembleForm, P1ReferenceMass) {
  const Mesh m = reference_triangle();
  const DofMap p1(m, Element::P1, 1);
  const Eigen::MatrixXd a(assemble_form({Form::Mass}, m, p1, p1));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(a(i, j), (i == j ? 2.0 : 1.0) / 24.0, 1e-16);
  }
}

TEST(AssembleForm, P1StiffnessRowSums) {
  const Mesh m = reference_triangle();
  const DofMap p1(m, Element::P1, 1);
  const Eigen::MatrixXd a(assemble_form({Form::Stiffness}, m, p1, p1));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(a.row(i).sum(), 0.0, 1e-15);
}

TEST(AssembleForm, DivPressureKillsRotation) {
  const Mesh m = unit_square(4);
  auto V = std::make_shared<const DofMap>(m, Element::P2, 2);
  const DofMap Q(m, Element::P1, 1);
  const Field rot = interpolate(VectorFn([](const Vec2& x) { return Vec2(-x.y(), x.x()); }), V, m);
  const SparseMatrix b = assemble_form({Form::DivPressure}, m, *V, Q);
  EXPECT_EQ(b.rows(), Q.size());
  EXPECT_EQ(b.cols(), V->size());
  EXPECT_LE((b * rot.values).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(AssembleForm, SymmetricKernels) {
  const Mesh m = unit_square(3);
  const DofMap V(m, Element::P2, 2);
  for (Form f : {Form::VectorMass, Form::Stiffness, Form::SymGrad, Form::GradDiv}) {
    EXPECT_LE(asymmetry(assemble_form({f}, m, V, V)), 1e-13);
  }
  const FormSpec tangent{Form::BoundaryTangent, 1.0, Marker::Interface};
  EXPECT_LE(asymmetry(assemble_form(tangent, m, V, V)), 1e-13);
}

TEST(AssembleForm, MassSumsToArea) {
  const Mesh m = build_rect_mesh({0, 2, 0, 1.5}, 3, 5);
  for (Element e : {Element::P1, Element::P2}) {
    const DofMap d(m, e, 1);
    const SparseMatrix a = assemble_form({Form::Mass}, m, d, d);
    EXPECT_NEAR(a.sum(), 3.0, 3.0 * 1e-12);
  }
}

TEST(AssembleForm, ConvectionAntisymmetryInB) {
  const Mesh m = unit_square(3);
  auto V = std::make_shared<const DofMap>(m, Element::P2, 2);
  const Field b = interpolate(VectorFn([](const Vec2& x) { return Vec2(x.y(), 1 - x.x()); }), V, m);
  Field mb = b;
  mb.values = -b.values;
  const SparseMatrix c1 = assemble_form({Form::Convection, 1.0, {}, &b}, m, *V, *V);
  const SparseMatrix c2 = assemble_form({Form::Convection, 1.0, {}, &mb}, m, *V, *V);
  EXPECT_LE((SparseMatrix(c1 + c2)).cwiseAbs().sum(), 1e-14 * c1.cwiseAbs().sum());
}

TEST(AssembleForm, MissingAdvectionField) {
  const Mesh m = unit_square(2);
  const DofMap V(m, Element::P2, 2);
  try {
    assemble_form({Form::Convection}, m, V, V);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Argument);
  }
}

TEST(AssembleForm, EmptyMarkerWarnsAndIsZero) {
  std::vector<std::string> seen;
  set_warning_handler([&seen](std::string_view w) { seen.emplace_back(w); });
  const Mesh m = unit_square(2);
  const DofMap V(m, Element::P2, 2);
  const SparseMatrix a = assemble_form({Form::BoundaryMass, 1.0, Marker::NeumannP}, m, V, V);
  set_warning_handler(nullptr);
  EXPECT_EQ(a.nonZeros(), 0);
  EXPECT_EQ(seen.size(), 1u);
}

TEST(AssembleFunctional, ZeroLoad) {
  const Mesh m = unit_square(2);
  const DofMap V(m, Element::P2, 2);
  const Vector b = assemble_functional({Functional::DomainLoad, {}, VectorFn([](const Vec2&) { return Vec2(0, 0); })}, m, V);
  EXPECT_EQ(b.cwiseAbs().maxCoeff(), 0.0);
}

TEST(AssembleFunctional, UnitLoadSumsToArea) {
  const Mesh m = unit_square(4);
  const DofMap V(m, Element::P2, 2);
  const Vector b = assemble_functional({Functional::DomainLoad, {}, VectorFn([](const Vec2&) { return Vec2(1, 0); })}, m, V);
  EXPECT_NEAR(b.head(V.num_nodes()).sum(), 1.0, 1e-13);
  EXPECT_NEAR(b.tail(V.num_nodes()).cwiseAbs().sum(), 0.0, 1e-15);
}

TEST(AssembleFunctional, NormalLoadOnInterface) {
  const Mesh m = unit_square(4);
  const DofMap V(m, Element::P2, 2);
  const Vector b = assemble_functional(
      {Functional::BoundaryNormalLoad, Marker::Interface, EdgeScalarFn([](const EdgePoint&) { return 1.0; })}, m, V);
  // n = (0, -1) on y = 0: the y block integrates to -1, the x block to 0.
  EXPECT_NEAR(b.tail(V.num_nodes()).sum(), -1.0, 1e-13);
  EXPECT_NEAR(b.head(V.num_nodes()).sum(), 0.0, 1e-13);
}

TEST(ApplyDirichlet, NoConstraintsUnchanged) {
  SparseMatrix a = from_triplets(2, {{0, 0, 2.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 2.0}});
  const SparseSystem s = apply_dirichlet({a, Vector::Constant(2, 3.0), {}}, {});
  EXPECT_EQ(Eigen::MatrixXd(s.matrix), Eigen::MatrixXd(a));
  EXPECT_EQ(s.rhs, Vector::Constant(2, 3.0));
}

TEST(ApplyDirichlet, AllConstrainedToZero) {
  SparseMatrix a = from_triplets(3, {{0, 0, 4.0}, {0, 1, 1.0}, {1, 1, 4.0}, {2, 2, 4.0}, {2, 0, -1.0}});
  const SparseSystem s = apply_dirichlet({a, Vector::Ones(3), {}}, {{0, 0.0}, {1, 0.0}, {2, 0.0}});
  EXPECT_EQ(Eigen::MatrixXd(s.matrix), Eigen::MatrixXd::Identity(3, 3));
  EXPECT_EQ(s.rhs, Vector::Zero(3));
}

TEST(ApplyDirichlet, ThreeNodeLaplace) {
  SparseMatrix a = from_triplets(3, {{0, 0, 1.0}, {0, 1, -1.0}, {1, 0, -1.0}, {1, 1, 2.0},
                                     {1, 2, -1.0}, {2, 1, -1.0}, {2, 2, 1.0}});
  const SparseSystem s = apply_dirichlet({a, Vector::Zero(3), {}}, {{0, 0.0}, {2, 1.0}});
  EXPECT_LE(asymmetry(s.matrix), 1e-16);
  const Vector x = solve_sparse(s);
  EXPECT_NEAR(x[1], 0.5, 1e-15);
  EXPECT_NEAR(x[2], 1.0, 1e-15);
}

TEST(ApplyDirichlet, ConflictingConstraints) {
  Constraints c;
  add_constraint(c, 3, 1.0);
  add_constraint(c, 3, 1.0);
  try {
    add_constraint(c, 3, 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConstraintConflict);
  }
}

TEST(SolveSparse, Identity) {
  SparseMatrix a(4, 4);
  a.setIdentity();
  const Vector r = Vector::LinSpaced(4, 1, 4);
  EXPECT_EQ(solve_sparse({a, r, {}}), r);
}

TEST(SolveSparse, TwoByTwo) {
  const SparseMatrix a = from_triplets(2, {{0, 0, 2.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 2.0}});
  const Vector x = solve_sparse({a, Vector::Constant(2, 3.0), {}});
  EXPECT_NEAR(x[0], 1.0, 1e-15);
  EXPECT_NEAR(x[1], 1.0, 1e-15);
}

TEST(SolveSparse, RandomDiagonallyDominant) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Triplet> t;
  for (int i = 0; i < 50; ++i) {
    double off = 0;
    for (int j = 0; j < 50; ++j) {
      if (i != j && u(rng) > 0.6) {
        const double v = u(rng);
        off += std::abs(v);
        t.emplace_back(i, j, v);
      }
    }
    t.emplace_back(i, i, off + 1.0);
  }
  const SparseMatrix a = from_triplets(50, t);
  Vector b(50);
  for (int i = 0; i < 50; ++i) b[i] = u(rng);
  const Vector x = solve_sparse({a, b, {}});
  EXPECT_LE((b - a * x).norm() / b.norm(), 1e-10);
}

TEST(SolveSparse, SingularMatrix) {
  const SparseMatrix a = from_triplets(2, {{0, 0, 1.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 1.0}});
  try {
    solve_sparse({a, Vector::Ones(2), {}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularSystem);
  }
}

TEST(SparseDirectSolver, ReusesFactorization) {
  const SparseMatrix a = from_triplets(2, {{0, 0, 2.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 2.0}});
  SparseDirectSolver s;
  s.solve(a, Vector::Ones(2));
  s.solve(a, Vector::Zero(2));
  EXPECT_EQ(s.factorizations(), 1);
  SparseMatrix b = a * 2.0;
  s.solve(b, Vector::Ones(2));
  EXPECT_EQ(s.factorizations(), 2);
  EXPECT_EQ(s.analyses(), 1);
}

TEST(Interpolate, ZeroAndLinear) {
  const Mesh m = unit_square(3);
  auto P1 = std::make_shared<const DofMap>(m, Element::P1, 1);
  EXPECT_EQ(interpolate(ScalarFn([](const Vec2&) { return 0.0; }), P1, m).values.cwiseAbs().maxCoeff(), 0.0);
  const Field fx = interpolate(ScalarFn([](const Vec2& x) { return x.x(); }), P1, m);
  for (Index i = 0; i < m.num_nodes(); ++i) EXPECT_EQ(fx.values[i], m.nodes()[i].x());
}

TEST(Interpolate, P2ReproducesQuadratics) {
  const Mesh m = unit_square(3);
  auto P2 = std::make_shared<const DofMap>(m, Element::P2, 1);
  const Field f = interpolate(ScalarFn([](const Vec2& x) { return x.x() * x.x(); }), P2, m);
  double worst = 0;
  for (Index t = 0; t < m.num_triangles(); ++t) {
    const CellGeometry g(m, t);
    for (const auto& q : quadrature_rule(4)) {
      const Vec2 x = g.map(q.bary);
      worst = std::max(worst, std::abs(evaluate_scalar(f, t, q.bary) - x.x() * x.x()));
    }
  }
  EXPECT_LE(worst, 1e-13);
  EXPECT_NEAR(l2_error(f, ScalarFn([](const Vec2& x) { return x.x() * x.x(); }), m), 0.0, 1e-12);
}

TEST(Interpolate, NonFiniteValue) {
  const Mesh m = unit_square(2);
  auto P1 = std::make_shared<const DofMap>(m, Element::P1, 1);
  try {
    interpolate(ScalarFn([](const Vec2& x) { return 1.0 / x.x(); }), P1, m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Evaluation);
  }
}

TEST(Norms, Basics) {
  const Mesh m = unit_square(4);
  auto P1 = std::make_shared<const DofMap>(m, Element::P1, 1);
  auto P2v = std::make_shared<const DofMap>(m, Element::P2, 2);
  EXPECT_EQ(l2_norm(Field(P1), m), 0.0);
  EXPECT_EQ(energy_norm_S(Field(P2v), 1, 1, m), 0.0);
  EXPECT_NEAR(l2_norm(interpolate(ScalarFn([](const Vec2&) { return 1.0; }), P1, m), m), 1.0, 1e-14);
}

TEST(Norms, EnergyNormOfIdentityMap) {
  const Mesh m = build_rect_mesh({0, 1, -1, 0}, 3, 3);
  auto V = std::make_shared<const DofMap>(m, Element::P2, 2);
  const Field eta = interpolate(VectorFn([](const Vec2& x) { return x; }), V, m);
  const double s = energy_norm_S(eta, 1.0, 1.0, m);
  EXPECT_NEAR(s * s, 8.0, 1e-12);
  // Same quantity through the assembled kernels.
  const SparseMatrix k = assemble_form({Form::SymGrad}, m, *V, *V) + SparseMatrix(assemble_form({Form::GradDiv}, m, *V, *V));
  EXPECT_NEAR(eta.values.dot(k * eta.values), s * s, 1e-12 * s * s);
}

TEST(DofMap, Counts) {
  const Mesh m = build_rect_mesh({0, 1, 0, 1}, 3, 2);
  const DofMap p1(m, Element::P1, 1), p2(m, Element::P2, 2);
  EXPECT_EQ(p1.size(), m.num_nodes());
  EXPECT_EQ(p2.size(), 2 * (m.num_nodes() + m.num_edges()));
}

TEST(PatchTest, AffineOnDistortedMesh) {
  const Mesh base = build_rect_mesh({0, 1, 0, 1}, 5, 5);
  std::vector<Vec2> nodes = base.nodes();
  for (size_t i = 0; i < nodes.size(); ++i) {
    Vec2& x = nodes[i];
    if (x.x() > 0 && x.x() < 1 && x.y() > 0 && x.y() < 1) x += 0.04 * Vec2(std::sin(3.0 * i), std::cos(2.0 * i));
  }
  const Mesh m(nodes, base.triangles());
  for (Element e : {Element::P1, Element::P2}) {
    const DofMap d(m, e, 1);
    const auto xs = d.node_coordinates(m);
    auto f = [](const Vec2& x) { return 0.5 - x.x() + 4.0 * x.y(); };
    Constraints bc;
    for (const BoundaryEdge& be : m.boundary_edges()) {
      const auto en = d.edge_nodes(be);
      for (int k = 0; k < nodes_per_edge(e); ++k) bc[en[k]] = f(xs[en[k]]);
    }
    const Vector u = solve_sparse(apply_dirichlet({assemble_form({Form::Stiffness}, m, d, d), Vector::Zero(d.size()), {}}, bc));
    for (Index i = 0; i < d.size(); ++i) EXPECT_NEAR(u[i], f(xs[i]), 1e-12);
  }
}
