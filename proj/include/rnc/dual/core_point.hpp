// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

namespace rnc::dual {

/// Normalization coefficients. Interior dimensions sit strictly inside the
/// triangle conv{(0,0), (B-xhat, 0), (0, xhat)} of the lifted domain.
struct CorePoint {
  std::vector<double> u_plus, u_minus;
  double u0 = 0.0;
};

struct CorePointConfig {
  double boundary_eps = 1e-3;  // coefficient used when xhat touches the box
  double u0_eps = 1e-6;        // u0 = Q(xhat) - theta_hat + u0_eps
  double boundary_tol = 1e-9;
};

/// Interior dims: u+ = u- = xhat (B - xhat) / (2B), which puts the pair at
/// margin exactly 1/2 inside the triangle. Boundary dims follow the
/// (eps, 0) / (0, eps) rule.
CorePoint core_point(const std::vector<double>& xhat, const std::vector<double>& bound,
                     double q_at_xhat, double theta_hat, const CorePointConfig& cfg = {});

/// Relative-interior margin u+/(B-xhat) + u-/xhat for an interior dimension;
/// strictly below 1 certifies relint membership.
double relint_margin(const CorePoint& core, const std::vector<double>& xhat,
                     const std::vector<double>& bound, int dim);

}  // namespace rnc::dual
