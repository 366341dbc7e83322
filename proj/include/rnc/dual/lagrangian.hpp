// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rnc/cuts/pool.hpp"
#include "rnc/milp/solver.hpp"
#include "rnc/stoch/instance.hpp"

namespace rnc::dual {

struct DualPoint {
  std::vector<double> pi_plus, pi_minus;
  double pi0 = 1.0;
};

struct LagrangianEval {
  double value = 0.0;                 // L(pi+, pi-, pi0; xhat)
  std::vector<double> w_plus, w_minus;  // minimizer, the supergradient in (pi+, pi-)
  double recourse_value = 0.0;        // Q' at the minimizer, the supergradient in pi0
  milp::SolveStatus status = milp::SolveStatus::Optimal;
};

/// Exact MILP value of  min  pi+.w+ + pi-.w- + pi0 * Q'(w+, w-)  over the
/// lifted domain, built as the ReLU-copy model with a reweighted objective.
LagrangianEval eval_lagrangian(const stoch::Instance& instance, int node,
                               const cuts::CutPool& pool, const std::vector<double>& xhat,
                               const DualPoint& p,
                               const milp::SolverBackend& backend = milp::default_backend());

/// Q_bar(xhat) for the node under the given pool: exact FixedState solve.
double eval_recourse(const stoch::Instance& instance, int node, const cuts::CutPool& pool,
                     const std::vector<double>& xhat,
                     const milp::SolverBackend& backend = milp::default_backend());

}  // namespace rnc::dual
