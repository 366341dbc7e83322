// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <map>

#include "rnc/oracle/certify.hpp"

namespace rnc::oracle {

using milp::LinearModel;
using milp::Row;
using milp::RowSense;

ExtensiveResult solve_extensive_form(const stoch::Instance& instance,
                                     const milp::SolverBackend& backend) {
  long total_cols = 0;
  for (const auto& [id, p] : instance.problems) total_cols += p.state_dim + p.locals.size();
  if (total_cols > 2000)
    throw TooLarge("extensive form would have " + std::to_string(total_cols) + " columns");

  LinearModel m;
  m.name = instance.name + "_extensive";
  std::map<int, std::vector<int>> state_cols;
  for (const stoch::TreeNode& n : instance.tree.nodes) {
    const stoch::NodeProblem& p = instance.problem(n.id);
    const double weight = instance.tree.path_probability(n.id);
    std::vector<int> xs;
    for (int k = 0; k < p.state_dim; ++k)
      xs.push_back(m.add_variable(0.0, p.state_bound[k], weight * p.state_cost[k],
                                  p.state_integral[k]));
    state_cols[n.id] = xs;
    std::vector<int> ys;
    for (int j = 0; j < p.locals.size(); ++j)
      ys.push_back(m.add_variable(p.locals.lb[j], p.locals.ub[j], weight * p.locals.cost[j],
                                  p.locals.integral[j]));
    std::vector<Row> rows(p.num_rows);
    for (int r = 0; r < p.num_rows; ++r) {
      rows[r].sense = RowSense::Equal;
      rows[r].rhs = p.rhs[r];
    }
    if (n.ancestor < 0) {
      for (const stoch::Triplet& t : p.T) rows[t.row].rhs -= t.value * instance.x0[t.col];
    } else {
      const std::vector<int>& az = state_cols.at(n.ancestor);
      for (const stoch::Triplet& t : p.T) rows[t.row].entries.push_back({az[t.col], t.value});
    }
    for (const stoch::Triplet& t : p.W) rows[t.row].entries.push_back({xs[t.col], t.value});
    for (const stoch::Triplet& t : p.Wbar) rows[t.row].entries.push_back({ys[t.col], t.value});
    for (Row& r : rows) m.add_row(std::move(r));
  }

  const milp::MilpSolution sol = backend.solve_milp(m, {});
  ExtensiveResult out;
  out.status = sol.status;
  out.nodes = sol.nodes;
  if (sol.status != milp::SolveStatus::Optimal) return out;
  out.optimum = sol.objective;
  for (int col : state_cols.at(instance.tree.root_id)) out.first_stage.push_back(sol.x[col]);
  return out;
}

double prop1_discrepancy(const stoch::Instance& instance, int node, const cuts::CutPool& pool,
                         const std::vector<double>& xhat, const dual::DualPoint& p,
                         const milp::SolverBackend& backend) {
  const stoch::NodeProblem& prob = instance.problem(node);
  const stoch::TreeNode& tn = instance.tree.node(node);
  const int d = instance.ancestor_dim(node);
  const std::vector<double> bound = instance.ancestor_bounds(node);

  // lifted model: no copy variable; the state is substituted as
  // xhat + w+ - w-, with (w+, w-) confined to the lifted domain by r.
  LinearModel m;
  m.name = "lifted_n" + std::to_string(node);
  std::vector<int> wp(d), wm(d), rr(d);
  for (int k = 0; k < d; ++k) {
    wp[k] = m.add_variable(0.0, std::max(bound[k] - xhat[k], 0.0), p.pi_plus[k]);
    wm[k] = m.add_variable(0.0, std::max(xhat[k], 0.0), p.pi_minus[k]);
    rr[k] = m.add_variable(0.0, 1.0, 0.0, true, -1);
  }
  std::vector<int> xs(prob.state_dim), ys(prob.locals.size());
  for (int k = 0; k < prob.state_dim; ++k)
    xs[k] = m.add_variable(0.0, prob.state_bound[k], prob.state_cost[k], prob.state_integral[k]);
  for (int j = 0; j < prob.locals.size(); ++j)
    ys[j] = m.add_variable(prob.locals.lb[j], prob.locals.ub[j], prob.locals.cost[j],
                           prob.locals.integral[j]);

  for (int k = 0; k < d; ++k) {
    m.add_row({{wp[k], 1.0}, {rr[k], -(bound[k] - xhat[k])}}, RowSense::LessEqual, 0.0);
    m.add_row({{wm[k], 1.0}, {rr[k], xhat[k]}}, RowSense::LessEqual, xhat[k]);
  }
  std::vector<Row> rows(prob.num_rows);
  for (int r = 0; r < prob.num_rows; ++r) {
    rows[r].sense = RowSense::Equal;
    rows[r].rhs = prob.rhs[r];
  }
  for (const stoch::Triplet& t : prob.T) {
    rows[t.row].entries.push_back({wp[t.col], t.value});
    rows[t.row].entries.push_back({wm[t.col], -t.value});
    rows[t.row].rhs -= t.value * xhat[t.col];
  }
  for (const stoch::Triplet& t : prob.W) rows[t.row].entries.push_back({xs[t.col], t.value});
  for (const stoch::Triplet& t : prob.Wbar) rows[t.row].entries.push_back({ys[t.col], t.value});
  for (Row& r : rows) m.add_row(std::move(r));

  for (int child : tn.children) {
    const int theta = m.add_variable(instance.node_value_lb(child), milp::kInf,
                                     instance.tree.node(child).prob);
    for (const cuts::Cut& cut : pool.for_child(child)) {
      if (std::holds_alternative<cuts::LinearCut>(cut)) {
        const auto& c = std::get<cuts::LinearCut>(cut);
        Row row;
        for (int k = 0; k < prob.state_dim; ++k)
          if (c.slope[k] != 0.0) row.entries.push_back({xs[k], c.slope[k]});
        row.entries.push_back({theta, -1.0});
        row.sense = RowSense::LessEqual;
        row.rhs = -c.intercept;
        m.add_row(std::move(row));
      } else {
        const auto& c = std::get<cuts::ReluCut>(cut);
        Row row;
        if (c.pi0 != 0.0) row.entries.push_back({theta, c.pi0});
        for (int k = 0; k < prob.state_dim; ++k) {
          const int cwp = m.add_variable(0.0, std::max(prob.state_bound[k] - c.anchor[k], 0.0), 0.0);
          const int cwm = m.add_variable(0.0, std::max(c.anchor[k], 0.0), 0.0);
          const int cr = m.add_variable(0.0, 1.0, 0.0, true, -1);
          m.add_row({{cwp, 1.0}, {cwm, -1.0}, {xs[k], -1.0}}, RowSense::Equal, -c.anchor[k]);
          m.add_row({{cwp, 1.0}, {cr, -(prob.state_bound[k] - c.anchor[k])}}, RowSense::LessEqual,
                    0.0);
          m.add_row({{cwm, 1.0}, {cr, c.anchor[k]}}, RowSense::LessEqual, c.anchor[k]);
          if (c.pi_plus[k] != 0.0) row.entries.push_back({cwp, c.pi_plus[k]});
          if (c.pi_minus[k] != 0.0) row.entries.push_back({cwm, c.pi_minus[k]});
        }
        row.sense = RowSense::GreaterEqual;
        row.rhs = c.value;
        m.add_row(std::move(row));
      }
    }
  }

  const milp::MilpSolution lifted = backend.solve_milp(m, {});
  if (lifted.status != milp::SolveStatus::Optimal)
    throw std::runtime_error("lifted relaxation solve failed");
  const dual::LagrangianEval relu = dual::eval_lagrangian(instance, node, pool, xhat, p, backend);
  return std::fabs(relu.value - lifted.objective);
}

}  // namespace rnc::oracle
