#include "fpsi/demo.hpp"

#include <cmath>
#include <string>

#include "fpsi/error.hpp"

namespace fpsi {

namespace {

// Number of grid steps of size h in `len`, or -1 if len is not a multiple.
Index steps(double len, double h) {
  const double k = len / h;
  const double r = std::round(k);
  if (std::abs(k - r) > 1e-9 * std::max(1.0, r)) return -1;
  return static_cast<Index>(r);
}

bool overlaps(const Rect& a, const Rect& b) {
  return a.x0 < b.x1 && b.x0 < a.x1 && a.y0 < b.y1 && b.y0 < a.y1;
}

}  // namespace

void validate(const ChannelGeometry& g) {
  auto bad = [](const std::string& key, const std::string& why) {
    fail(ErrorKind::Config, key + ": " + why);
  };
  if (!(g.length > 0) || !(g.height > 0)) bad("length", "channel extents must be positive");
  if (!(g.h_fluid > 0)) bad("h", "must be positive");
  if (g.solid_refinement < 1) bad("solid-refinement", "must be at least 1");
  if (!(g.inlet_peak >= 0) || !std::isfinite(g.inlet_peak)) bad("inlet-peak", "must be nonnegative");
  if (steps(g.length, g.h_fluid) < 1 || steps(g.height, g.h_fluid) < 1) {
    bad("h", "channel extents must be multiples of h");
  }
  const std::pair<const char*, const Rect*> obstacles[] = {{"obstacle-a", &g.obstacle_a},
                                                           {"obstacle-b", &g.obstacle_b}};
  for (const auto& [key, r] : obstacles) {
    if (!(r->x1 > r->x0) || !(r->y1 > r->y0)) bad(key, "empty rectangle");
    if (r->x0 <= 0 || r->x1 >= g.length || r->y0 < 0 || r->y1 > g.height) {
      bad(key, "must lie strictly inside the channel in x and within it in y");
    }
    if (r->y0 == 0 && r->y1 == g.height) bad(key, "must not block the channel");
    for (double v : {r->x0, r->x1, r->y0, r->y1}) {
      if (steps(v, g.h_fluid) < 0) bad(key, "edges must lie on the fluid grid");
    }
  }
  if (overlaps(g.obstacle_a, g.obstacle_b)) bad("obstacle-b", "overlaps obstacle-a");
}

std::pair<Mesh, Mesh> channel_meshes(const ChannelGeometry& g) {
  validate(g);
  const Index nx = steps(g.length, g.h_fluid);
  const Index ny = steps(g.height, g.h_fluid);
  auto inside = [&](const Rect& r, double x, double y) {
    return x > r.x0 && x < r.x1 && y > r.y0 && y < r.y1;
  };
  Mesh fluid = build_masked_grid({0.0, g.length, 0.0, g.height}, nx, ny, [&](Index i, Index j) {
    const double x = (static_cast<double>(i) + 0.5) * g.h_fluid;
    const double y = (static_cast<double>(j) + 0.5) * g.h_fluid;
    return !inside(g.obstacle_a, x, y) && !inside(g.obstacle_b, x, y);
  });

  auto block = [&](const Rect& r) {
    const double h = g.h_fluid / g.solid_refinement;
    return build_rect_mesh(r, steps(r.x1 - r.x0, h), steps(r.y1 - r.y0, h));
  };
  Mesh solid = merge_meshes(block(g.obstacle_a), block(g.obstacle_b));

  const EdgePredicate walls =
      any_of({on_horizontal_line(0.0), on_horizontal_line(g.height)});
  const std::vector<BoundaryRule> fluid_rules = {
      {on_vertical_line(0.0), Marker::DirichletF},
      {on_vertical_line(g.length), Marker::NeumannF},
      {walls, Marker::Wall},
      {none_of({on_vertical_line(0.0), on_vertical_line(g.length), walls}), Marker::Interface},
  };
  const std::vector<BoundaryRule> solid_rules = {
      {walls, Marker::Wall},
      {none_of({walls}), Marker::Interface},
  };
  return {mark_boundary(std::move(fluid), fluid_rules),
          mark_boundary(std::move(solid), solid_rules)};
}

PhysicalParams channel_params() {
  PhysicalParams p;
  p.rho_f = 1.0;
  p.mu_f = 0.01;
  p.rho_p = 1.2;
  p.mu_p = 1.0336e3;
  p.lambda_p = 4.9364e4;
  p.alpha = 1.0;
  p.c0 = 1e-3;
  p.K = 1e-3;
  p.gamma = 1.0 / std::sqrt(p.K);
  p.L = 1.0 / p.K;
  p.dt = 1e-3;
  p.T = 0.5;
  return p;
}

ProblemData channel_problem(const ChannelGeometry& g) {
  ProblemData data;
  const double H = g.height;
  const double peak = g.inlet_peak;
  data.fluid.velocity = [H, peak](const Vec2& x, double) {
    return Vec2(4.0 * peak * x.y() * (H - x.y()) / (H * H), 0.0);
  };
  return data;
}

}  // namespace fpsi
