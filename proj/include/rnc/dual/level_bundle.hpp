// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <iosfwd>

#include "rnc/milp/solver.hpp"

namespace rnc::dual {

struct OracleEval {
  double value = 0.0;
  std::vector<double> supergradient;
  bool feasible = true;  // non-polyhedral constraints hold at the query point
  std::vector<milp::Row> new_region_rows;  // outer-approximation rows found here
};

using DualOracle = std::function<OracleEval(const std::vector<double>&)>;

/// Polyhedral feasible set for the dual iterates; the box must be finite.
struct FeasibleRegion {
  int dim = 0;
  std::vector<double> lower, upper;
  std::vector<milp::Row> rows;
};

struct BundleParams {
  double tol = 1e-2;    // relative model gap
  int max_iters = 300;
  double lambda = 0.5;  // level between best value and model max
  // return the smallest-norm support among those within tol of the best
  // value; ties in a degenerate dual then resolve to the flattest multiplier
  bool prefer_flat = false;
  std::ostream* trace = nullptr;
};

struct Support {
  std::vector<double> point;
  double value = 0.0;
  std::vector<double> grad;
};

struct BundleResult {
  std::vector<double> best_point;
  double best_value = 0.0;
  OracleEval best_eval;
  int iterations = 0;
  bool found_feasible = false;
  double model_gap = 0.0;
  std::vector<Support> supports;  // the cutting-plane model at termination
};

class OracleFailure : public std::runtime_error {
 public:
  explicit OracleFailure(const std::string& what) : std::runtime_error(what) {}
};

class InfeasibleRegion : public std::runtime_error {
 public:
  explicit InfeasibleRegion(const std::string& what) : std::runtime_error(what) {}
};

/// Maximizes a concave function by the level method: cutting-plane model,
/// level set at lambda * best + (1 - lambda) * model max, next iterate by
/// infinity-norm projection of the incumbent onto the level set (an LP).
BundleResult level_bundle_max(const DualOracle& oracle, FeasibleRegion region,
                              std::vector<double> init, const BundleParams& params = {},
                              const milp::SolverBackend& backend = milp::default_backend());

}  // namespace rnc::dual
