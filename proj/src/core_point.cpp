// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#include "rnc/dual/core_point.hpp"

#include <stdexcept>

namespace rnc::dual {

CorePoint core_point(const std::vector<double>& xhat, const std::vector<double>& bound,
                     double q_at_xhat, double theta_hat, const CorePointConfig& cfg) {
  if (xhat.size() != bound.size()) throw std::invalid_argument("core_point: dimension mismatch");
  CorePoint core;
  const size_t d = xhat.size();
  core.u_plus.resize(d);
  core.u_minus.resize(d);
  for (size_t k = 0; k < d; ++k) {
    if (xhat[k] <= cfg.boundary_tol) {
      core.u_plus[k] = cfg.boundary_eps;
      core.u_minus[k] = 0.0;
    } else if (xhat[k] >= bound[k] - cfg.boundary_tol) {
      core.u_plus[k] = 0.0;
      core.u_minus[k] = cfg.boundary_eps;
    } else {
      const double t = xhat[k] * (bound[k] - xhat[k]) / (2.0 * bound[k]);
      core.u_plus[k] = t;
      core.u_minus[k] = t;
    }
  }
  core.u0 = q_at_xhat - theta_hat + cfg.u0_eps;
  return core;
}

double relint_margin(const CorePoint& core, const std::vector<double>& xhat,
                     const std::vector<double>& bound, int dim) {
  return core.u_plus[dim] / (bound[dim] - xhat[dim]) + core.u_minus[dim] / xhat[dim];
}

}  // namespace rnc::dual
