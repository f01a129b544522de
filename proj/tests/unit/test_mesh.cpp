#include <gtest/gtest.h>

#include <cmath>

#include "fpsi/error.hpp"
#include "fpsi/interface.hpp"
#include "fpsi/manufactured.hpp"
#include "fpsi/mesh.hpp"

using namespace fpsi;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no fpsi::Error thrown";
  return ErrorKind::Io;
}

std::vector<BoundaryRule> fluid_rules() {
  return {{on_vertical_line(1.0), Marker::NeumannF},
          {on_horizontal_line(0.0), Marker::Interface},
          {any_of({on_vertical_line(0.0), on_horizontal_line(1.0)}), Marker::DirichletF}};
}

std::vector<BoundaryRule> solid_rules(double y_interface = 0.0) {
  return {{on_horizontal_line(y_interface), Marker::Interface},
          {none_of({on_horizontal_line(y_interface)}), Marker::DirichletP}};
}

}  // namespace

TEST(RectMesh, SmallestMesh) {
  const Mesh m = build_rect_mesh({0, 1, 0, 1}, 1, 1);
  EXPECT_EQ(m.num_triangles(), 2);
  EXPECT_EQ(m.num_nodes(), 4);
  EXPECT_EQ(m.boundary_edges().size(), 4u);
}

TEST(RectMesh, CountingIdentity) {
  for (Index n : {2, 5, 8}) {
    const Mesh m = build_rect_mesh({0, 1, 0, 1}, n, n);
    EXPECT_EQ(m.num_nodes(), (n + 1) * (n + 1));
    EXPECT_EQ(m.num_triangles(), 2 * n * n);
  }
}

TEST(RectMesh, AreaOfLowerSquare) {
  const Mesh m = build_rect_mesh({0, 1, -1, 0}, 2, 2);
  double sum = 0.0;
  for (Index t = 0; t < m.num_triangles(); ++t) sum += m.signed_area(t);
  EXPECT_NEAR(sum, 1.0, 1e-14);
}

TEST(RectMesh, BothDiagonalsArePositive) {
  for (Diagonal d : {Diagonal::LowerLeftUpperRight, Diagonal::UpperLeftLowerRight}) {
    const Mesh m = build_rect_mesh({0, 2, 0, 1}, 3, 2, d);
    EXPECT_GT(m.min_area(), 0.0);
    EXPECT_NEAR(m.total_area(), 2.0, 1e-12);
  }
}

TEST(RectMesh, DegenerateRectangle) {
  EXPECT_EQ(kind_of([] { build_rect_mesh({0, 0, 0, 1}, 1, 1); }), ErrorKind::InvalidGeometry);
  EXPECT_EQ(kind_of([] { build_rect_mesh({0, 1, 0, 1}, 0, 1); }), ErrorKind::InvalidGeometry);
}

TEST(Mesh, ClockwiseTriangleRejected) {
  EXPECT_EQ(kind_of([] { Mesh({Vec2(0, 0), Vec2(0, 1), Vec2(1, 0)}, {{0, 1, 2}}); }),
            ErrorKind::InvalidGeometry);
}

TEST(MarkBoundary, BenchmarkFluidMarkers) {
  const Mesh m = mark_boundary(build_rect_mesh({0, 1, 0, 1}, 4, 4), fluid_rules());
  for (const BoundaryEdge& e : m.boundary_edges()) {
    const Vec2 a = m.nodes()[e.nodes[0]], b = m.nodes()[e.nodes[1]];
    ASSERT_TRUE(e.marker.has_value());
    if (a.x() == 1.0 && b.x() == 1.0) {
      EXPECT_EQ(*e.marker, Marker::NeumannF);
    } else if (a.y() == 0.0 && b.y() == 0.0) {
      EXPECT_EQ(*e.marker, Marker::Interface);
    } else {
      EXPECT_EQ(*e.marker, Marker::DirichletF);
    }
  }
}

TEST(MarkBoundary, EmptyRuleList) {
  EXPECT_EQ(kind_of([] { mark_boundary(build_rect_mesh({0, 1, 0, 1}, 2, 2), {}); }),
            ErrorKind::MarkingIncomplete);
}

TEST(MarkBoundary, OverlappingRules) {
  std::vector<BoundaryRule> rules = fluid_rules();
  rules.push_back({on_vertical_line(1.0), Marker::DirichletF});
  EXPECT_EQ(kind_of([&] { mark_boundary(build_rect_mesh({0, 1, 0, 1}, 2, 2), rules); }),
            ErrorKind::AmbiguousMarking);
}

TEST(ExtractInterface, ConformingBenchmark) {
  const auto [fluid, solid] = benchmark_meshes(8);
  const InterfacePairing p = extract_interface(fluid, solid);
  EXPECT_TRUE(p.matching);
  EXPECT_EQ(p.fluid.num_slots(), p.solid.num_slots());
  EXPECT_EQ(p.fluid.num_slots(), 8);
}

TEST(ExtractInterface, RefinedSolidSide) {
  const Mesh fluid = mark_boundary(build_rect_mesh({0, 1, 0, 1}, 8, 8), fluid_rules());
  const Mesh solid = mark_boundary(build_rect_mesh({0, 1, -1, 0}, 4, 4), solid_rules());
  const InterfacePairing p = extract_interface(fluid, solid);
  EXPECT_FALSE(p.matching);
  for (const InterfaceSide* side : {&p.fluid, &p.solid}) {
    ASSERT_EQ(side->chains.size(), 1u);
    const auto& sigma = side->chains[0].sigma;
    EXPECT_DOUBLE_EQ(sigma.front(), 0.0);
    EXPECT_DOUBLE_EQ(sigma.back(), 1.0);
    for (size_t i = 1; i < sigma.size(); ++i) EXPECT_GT(sigma[i], sigma[i - 1]);
  }
}

TEST(ExtractInterface, ShiftedSolidMismatch) {
  const Mesh fluid = mark_boundary(build_rect_mesh({0, 1, 0, 1}, 4, 4), fluid_rules());
  const Mesh solid = mark_boundary(build_rect_mesh({0, 1, -0.9, 0.1}, 4, 4), solid_rules(0.1));
  EXPECT_EQ(kind_of([&] { extract_interface(fluid, solid); }), ErrorKind::InterfaceMismatch);
}

namespace {

InterfacePairing refined_pairing(Index fluid_cells, Index solid_cells) {
  const Mesh fluid =
      mark_boundary(build_rect_mesh({0, 1, 0, 1}, fluid_cells, fluid_cells), fluid_rules());
  const Mesh solid =
      mark_boundary(build_rect_mesh({0, 1, -1, 0}, solid_cells, solid_cells), solid_rules());
  return extract_interface(fluid, solid);
}

// Fills a trace on `side` with f(x) at (start, end, mid) of each slot.
template <class F>
ScalarTrace sample(const InterfaceSide& side, const Mesh& mesh, F f) {
  ScalarTrace t(side.num_slots());
  for (Index s = 0; s < side.num_slots(); ++s) {
    const BoundaryEdge& e = mesh.boundary_edges()[side.edges[s]];
    const Vec2 a = mesh.nodes()[e.nodes[0]], b = mesh.nodes()[e.nodes[1]];
    t.values[s] = {f(a), f(b), f(0.5 * (a + b))};
  }
  return t;
}

}  // namespace

TEST(InterfaceTransfer, MatchingIsIdentity) {
  const auto [fluid, solid] = benchmark_meshes(4);
  const InterfacePairing p = extract_interface(fluid, solid);
  const ScalarTrace src = sample(p.fluid, fluid, [](const Vec2& x) { return std::sin(3 * x.x()); });
  const ScalarTrace there = interface_transfer(src, p, Direction::FluidToSolid);
  const ScalarTrace back = interface_transfer(there, p, Direction::SolidToFluid);
  for (Index s = 0; s < src.size(); ++s) {
    for (int k = 0; k < 3; ++k) EXPECT_EQ(back.values[s][k], src.values[s][k]);
  }
}

TEST(InterfaceTransfer, ConstantsPreserved) {
  const Mesh fluid = mark_boundary(build_rect_mesh({0, 1, 0, 1}, 6, 6), fluid_rules());
  const Mesh solid = mark_boundary(build_rect_mesh({0, 1, -1, 0}, 4, 4), solid_rules());
  const InterfacePairing p = extract_interface(fluid, solid);
  const ScalarTrace c = sample(p.solid, solid, [](const Vec2&) { return 2.5; });
  const ScalarTrace out = interface_transfer(c, p, Direction::SolidToFluid);
  for (const auto& v : out.values) {
    for (double x : v) EXPECT_NEAR(x, 2.5, 1e-15);
  }
}

TEST(InterfaceTransfer, AffineInArclengthCoarseToFine) {
  const Mesh fluid = mark_boundary(build_rect_mesh({0, 1, 0, 1}, 8, 8), fluid_rules());
  const Mesh solid = mark_boundary(build_rect_mesh({0, 1, -1, 0}, 4, 4), solid_rules());
  const InterfacePairing p = extract_interface(fluid, solid);
  // Arclength along y = 0 is x on both sides.
  const ScalarTrace src = sample(p.solid, solid, [](const Vec2& x) { return 2 * x.x(); });
  const ScalarTrace out = interface_transfer(src, p, Direction::SolidToFluid);
  const ScalarTrace want = sample(p.fluid, fluid, [](const Vec2& x) { return 2 * x.x(); });
  for (Index s = 0; s < out.size(); ++s) {
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(out.values[s][k], want.values[s][k], 1e-14);
  }
}

TEST(InterfaceTransfer, AffineAnyRefinementPair) {
  for (auto [a, b] : {std::pair<Index, Index>{3, 7}, {5, 2}, {4, 12}}) {
    const InterfacePairing p = refined_pairing(a, b);
    const Mesh fluid = mark_boundary(build_rect_mesh({0, 1, 0, 1}, a, a), fluid_rules());
    const Mesh solid = mark_boundary(build_rect_mesh({0, 1, -1, 0}, b, b), solid_rules());
    auto f = [](const Vec2& x) { return 1.0 - 3.0 * x.x(); };
    const ScalarTrace out = interface_transfer(sample(p.fluid, fluid, f), p, Direction::FluidToSolid);
    const ScalarTrace want = sample(p.solid, solid, f);
    for (Index s = 0; s < out.size(); ++s) {
      for (int k = 0; k < 3; ++k) EXPECT_NEAR(out.values[s][k], want.values[s][k], 1e-13);
    }
  }
}

TEST(InterfaceTransfer, LengthMismatch) {
  const InterfacePairing p = refined_pairing(4, 4);
  EXPECT_EQ(kind_of([&] { interface_transfer(ScalarTrace(3), p, Direction::FluidToSolid); }),
            ErrorKind::Dimension);
}

TEST(Deform, ZeroDisplacementIsIdentity) {
  const Mesh m = build_rect_mesh({0, 1, 0, 1}, 3, 3);
  const Mesh d = deform_mesh(m, std::vector<Vec2>(m.num_nodes(), Vec2::Zero()));
  EXPECT_EQ(d.nodes(), m.nodes());
}

TEST(Deform, TranslationKeepsAreas) {
  const Mesh m = build_rect_mesh({0, 1, 0, 1}, 3, 3);
  const Mesh d = deform_mesh(m, std::vector<Vec2>(m.num_nodes(), Vec2(0.3, 0.0)));
  for (Index i = 0; i < m.num_nodes(); ++i) {
    EXPECT_NEAR((d.nodes()[i] - m.nodes()[i] - Vec2(0.3, 0)).norm(), 0.0, 1e-15);
  }
  for (Index t = 0; t < m.num_triangles(); ++t) {
    EXPECT_NEAR(d.signed_area(t), m.signed_area(t), 1e-14);
  }
}

TEST(Deform, FlippedTriangleIsTangled) {
  const Mesh m = build_rect_mesh({0, 1, 0, 1}, 2, 2);
  // Push the center node across the far corner: its triangles turn over.
  std::vector<Vec2> disp(m.num_nodes(), Vec2::Zero());
  for (Index i = 0; i < m.num_nodes(); ++i) {
    if ((m.nodes()[i] - Vec2(0.5, 0.5)).norm() < 1e-12) disp[i] = Vec2(0.8, 0.8);
  }
  EXPECT_EQ(kind_of([&] { deform_mesh(m, disp); }), ErrorKind::TangledMesh);
}

TEST(Deform, ResetIsBitwiseIdentity) {
  const Mesh m = build_rect_mesh({0, 1, -1, 0}, 4, 4);
  std::vector<Vec2> disp(m.num_nodes());
  for (Index i = 0; i < m.num_nodes(); ++i) {
    disp[i] = 1e-3 * Vec2(std::sin(1.7 * i), std::cos(2.3 * i));
  }
  const Mesh back = reset_mesh(deform_mesh(m, disp));
  EXPECT_EQ(back.nodes(), m.nodes());
  EXPECT_NEAR(back.total_area(), 1.0, 1e-12);
}

TEST(MaskedGrid, DropsMaskedCells) {
  const Mesh m = build_masked_grid({0, 3, 0, 1}, 3, 1, [](Index i, Index) { return i != 1; });
  EXPECT_EQ(m.num_triangles(), 4);
  EXPECT_EQ(m.num_nodes(), 8);
  EXPECT_NEAR(m.total_area(), 2.0, 1e-14);
}
