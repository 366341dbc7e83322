// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#include "rnc/dual/lagrangian.hpp"

#include <cmath>

#include "rnc/stoch/node_model.hpp"

namespace rnc::dual {

using stoch::BuildMode;
using stoch::BuildOptions;

LagrangianEval eval_lagrangian(const stoch::Instance& instance, int node,
                               const cuts::CutPool& pool, const std::vector<double>& xhat,
                               const DualPoint& p, const milp::SolverBackend& backend) {
  BuildOptions opt;
  opt.mode = BuildMode::ReluCopy;
  opt.xhat = xhat;
  stoch::NodeModel nm = stoch::build_node_model(instance, node, pool, opt);
  const auto& h = nm.handles;
  const int d = static_cast<int>(xhat.size());

  // capture the recourse objective before reweighting
  std::vector<double> recourse_cost = nm.model.objective;
  for (int j = 0; j < nm.model.num_vars; ++j) nm.model.objective[j] *= p.pi0;
  for (int k = 0; k < d; ++k) {
    nm.model.objective[h.w_plus[k]] = p.pi_plus[k];
    nm.model.objective[h.w_minus[k]] = p.pi_minus[k];
    recourse_cost[h.w_plus[k]] = 0.0;
    recourse_cost[h.w_minus[k]] = 0.0;
  }

  const milp::MilpSolution sol = backend.solve_milp(nm.model, {});
  LagrangianEval out;
  out.status = sol.status;
  if (sol.status != milp::SolveStatus::Optimal) return out;

  out.value = sol.objective;
  out.w_plus.resize(d);
  out.w_minus.resize(d);
  for (int k = 0; k < d; ++k) {
    out.w_plus[k] = sol.x[h.w_plus[k]];
    out.w_minus[k] = sol.x[h.w_minus[k]];
  }
  if (p.pi0 > 1e-12) {
    double rec = 0.0;
    for (int j = 0; j < nm.model.num_vars; ++j) rec += recourse_cost[j] * sol.x[j];
    out.recourse_value = rec;
  } else {
    // the combined objective carries no recourse signal; re-evaluate Q at the
    // minimizer's state so the pi0 supergradient stays exact
    std::vector<double> z(d);
    for (int k = 0; k < d; ++k) z[k] = sol.x[h.z[k]];
    const std::vector<double> bound = instance.ancestor_bounds(node);
    for (int k = 0; k < d; ++k) z[k] = std::min(std::max(z[k], 0.0), bound[k]);
    out.recourse_value = eval_recourse(instance, node, pool, z, backend);
  }
  return out;
}

double eval_recourse(const stoch::Instance& instance, int node, const cuts::CutPool& pool,
                     const std::vector<double>& xhat, const milp::SolverBackend& backend) {
  BuildOptions opt;
  opt.mode = BuildMode::FixedState;
  opt.xhat = xhat;
  const stoch::NodeModel nm = stoch::build_node_model(instance, node, pool, opt);
  const milp::MilpSolution sol = backend.solve_milp(nm.model, {});
  if (sol.status != milp::SolveStatus::Optimal)
    throw std::runtime_error("FixedState solve failed at node " + std::to_string(node) + ": " +
                             milp::to_string(sol.status));
  return sol.objective;
}

}  // namespace rnc::dual
