#pragma once

#include "fpsi/dofmap.hpp"
#include "fpsi/mesh.hpp"

namespace fpsi {

/// All integrals use the order-4 rule on the mesh's current coordinates.

/// sqrt(int |f|^2) for scalar or vector fields.
double l2_norm(const Field& f, const Mesh& mesh);
double l2_norm_sq(const Field& f, const Mesh& mesh);

/// L2 norm of the difference between a field and a closed-form function.
double l2_error(const Field& f, const ScalarFn& exact, const Mesh& mesh);
double l2_error(const Field& f, const VectorFn& exact, const Mesh& mesh);

/// ||grad f||^2 (componentwise for vector fields).
double gradient_norm_sq(const Field& f, const Mesh& mesh);
/// ||D(u)||^2 with D the symmetric gradient.
double sym_grad_norm_sq(const Field& u, const Mesh& mesh);
/// ||div u||^2.
double divergence_norm_sq(const Field& u, const Mesh& mesh);

/// sqrt(2 mu_p ||D(eta)||^2 + lambda_p ||div eta||^2).
double energy_norm_S(const Field& eta, double mu_p, double lambda_p, const Mesh& mesh);

/// Integral of a scalar field.
double integrate(const Field& f, const Mesh& mesh);

}  // namespace fpsi
