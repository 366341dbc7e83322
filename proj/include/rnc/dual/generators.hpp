// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "rnc/cuts/cut.hpp"
#include "rnc/dual/core_point.hpp"
#include "rnc/dual/lagrangian.hpp"
#include "rnc/dual/level_bundle.hpp"

namespace rnc::dual {

struct DualSolveOptions {
  BundleParams bundle;
  double box_bound = 1e4;  // artificial bounds keeping the bundle LPs compact
  std::optional<DualPoint> warm_start;
};

struct ReluDualResult {
  DualPoint point;
  double value = 0.0;
  int iterations = 0;
};

/// Maximizes L^R over (pi+, pi-); with restrict_equal the search runs on the
/// diagonal pi+ = pi-, yielding Lambda-shaped coefficients.
ReluDualResult solve_relu_dual(const stoch::Instance& instance, int node,
                               const cuts::CutPool& pool, const std::vector<double>& xhat,
                               bool restrict_equal, const DualSolveOptions& opts = {},
                               const milp::SolverBackend& backend = milp::default_backend());

struct NormalizedOptions {
  DualSolveOptions solve;
  double degenerate_pi0 = 1e-9;
  int max_rescale = 3;   // x10 retries on a degenerate scale
  bool tighten = false;  // u0 doubling until the cut is tight at the anchor
  int max_doublings = 8;
  double tight_tol = 1e-4;
};

struct NormalizedResult {
  DualPoint point;
  double value = 0.0;  // normalized dual objective at the point
  cuts::ReluCut cut;
  int iterations = 0;
  double bundle_gap = 0.0;  // model gap of the final bundle solve
  bool tight = false;
  bool degenerate = false;  // ended as a feasibility-type cut
  double q_at_xhat = 0.0;
  CorePoint core;  // coefficients actually used (after any rescaling)
};

/// Maximizes L(pi+, pi-, pi0) - pi0 * theta_hat subject to the normalization
/// u+.pi+ + u-.pi- + u0 pi0 <= 1, pi0 >= 0. The emitted cut carries the exact
/// Lagrangian value at the returned multipliers.
NormalizedResult solve_normalized_dual(const stoch::Instance& instance, int node,
                                       const cuts::CutPool& pool,
                                       const std::vector<double>& xhat, double theta_hat,
                                       CorePoint core, const NormalizedOptions& opts = {},
                                       const milp::SolverBackend& backend =
                                           milp::default_backend());

struct RegularizedOptions {
  DualSolveOptions solve;
  double epsilon = 1e-2;      // slack in the optimal-set constraint
  double bound_factor = 10.0; // dual box as multiples of the Lambda coefficients
};

struct RegularizedResult {
  DualPoint point;  // pi0 = 1
  double value = 0.0;  // regularized objective at the point
  cuts::ReluCut cut;
  int iterations = 0;
  bool feasible_found = false;  // false: no start satisfied the optimal-set constraint
  DualPoint lambda_coefficients;
  double q_at_xhat = 0.0;
};

/// Maximizes L^R(pi) - pi . (u+, u-) over { L^R(pi) >= Q(xhat) - epsilon },
/// the concave constraint enforced by dynamically added majorant rows. Box
/// bounds and the scaled start come from the Lambda-shaped coefficients.
RegularizedResult solve_regularized_dual(const stoch::Instance& instance, int node,
                                         const cuts::CutPool& pool,
                                         const std::vector<double>& xhat,
                                         const CorePoint& core,
                                         const RegularizedOptions& opts = {},
                                         const milp::SolverBackend& backend =
                                             milp::default_backend());

/// Benders cut from the LP relaxation: intercept/slope from the optimal value
/// and the copy-row duals.
cuts::LinearCut benders_cut(const stoch::Instance& instance, int node,
                            const cuts::CutPool& pool, const std::vector<double>& xhat,
                            const milp::SolverBackend& backend = milp::default_backend());

}  // namespace rnc::dual
