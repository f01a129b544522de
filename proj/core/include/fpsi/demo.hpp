#pragma once

#include <utility>

#include "fpsi/coupling.hpp"
#include "fpsi/mesh.hpp"
#include "fpsi/params.hpp"

namespace fpsi {

/// Channel [0, length] x [0, height] with two rectangular poroelastic
/// obstacles. Obstacle edges must lie on the fluid grid of spacing h_fluid.
/// The obstacle placement is a choice of this code: A sits on the lower
/// wall, B hangs from the upper wall further downstream.
struct ChannelGeometry {
  double length = 12.0;
  double height = 1.0;
  Rect obstacle_a{1.5, 2.0, 0.0, 0.4};
  Rect obstacle_b{3.0, 3.5, 0.6, 1.0};
  double h_fluid = 0.1;
  int solid_refinement = 2;  // solid cells per fluid cell width
  double inlet_peak = 5.0;   // max of the parabolic inlet profile

  bool operator==(const ChannelGeometry&) const = default;
};

/// Throws Config for obstacles off the grid, overlapping, or outside the channel.
void validate(const ChannelGeometry& geometry);

/// Marked meshes: fluid INTERFACE on obstacle sides facing the flow, WALL on
/// y = 0 and y = height, DIRICHLET_F at the inlet, NEUMANN_F at the outlet.
/// Solid sides on the channel walls are WALL.
std::pair<Mesh, Mesh> channel_meshes(const ChannelGeometry& geometry);

/// Material parameters of the channel run (nu = 0.01, gamma = 1/sqrt(K), L = 1/K).
PhysicalParams channel_params();

/// Parabolic inlet u = (4 peak y (H - y) / H^2, 0); everything else zero.
ProblemData channel_problem(const ChannelGeometry& geometry);

}  // namespace fpsi
