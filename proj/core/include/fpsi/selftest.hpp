#pragma once

#include <string>
#include <vector>

namespace fpsi {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Reference mass matrix, quadrature identities and affine patch tests.
std::vector<CheckResult> kernel_self_tests();

/// residual_check at h = 1e-4 with 50 points for both cases at t = 0.25,
/// 0.5, 0.75; each must stay below 1e-6.
std::vector<CheckResult> forcing_gate();

/// Adds 1 to one forcing at a time; only the matching equation's residual
/// may move, and it must read 1.
std::vector<CheckResult> forcing_perturbation_checks();

}  // namespace fpsi
