#pragma once

#include <string>

namespace fpsi {

/// Material and discretization parameters (CGS units).
struct PhysicalParams {
  double rho_f = 1.0;
  double mu_f = 1.0;
  double rho_p = 1.0;
  double mu_p = 1.0;
  double lambda_p = 1.0;
  double alpha = 1.0;
  double c0 = 1.0;
  double K = 1.0;      // isotropic hydraulic conductivity
  double gamma = 1.0;  // BJS slip rate
  double L = 1.0;      // Robin parameter
  double dt = 0.0125;
  double T = 1.0;

  /// Throws Config naming the first invalid parameter.
  void validate() const;
  bool operator==(const PhysicalParams&) const = default;
};

/// Which condition owns a dof shared by an INTERFACE edge and a Dirichlet edge.
enum class CornerPolicy { InterfacePrecedence, DirichletPrecedence };

struct DiscretizationOptions {
  CornerPolicy corners = CornerPolicy::InterfacePrecedence;
  bool include_xi_normal_term = true;  // <xi.n, zeta.n> on the Biot interface
  bool pressure_mean_zero = false;     // pin and shift the fluid pressure
  bool operator==(const DiscretizationOptions&) const = default;
};

}  // namespace fpsi
