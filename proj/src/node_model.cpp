// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#include "rnc/stoch/node_model.hpp"

#include <cmath>

namespace rnc::stoch {

using milp::LinearModel;
using milp::RowSense;

namespace {

// One ReLU-linearized block anchored at `anchor` over the columns `linked`
// (state or copy variables with box `bounds`):
//   w+ - w- = linked - anchor,  0 <= w+ <= (B-anchor) r,  0 <= w- <= anchor (1-r).
struct ReluBlock {
  std::vector<int> w_plus, w_minus, binary;
};

ReluBlock add_relu_block(LinearModel& m, const std::vector<int>& linked,
                         const std::vector<double>& anchor, const std::vector<double>& bounds,
                         bool relax_binaries) {
  ReluBlock blk;
  const int d = static_cast<int>(linked.size());
  for (int k = 0; k < d; ++k) {
    const double up = std::max(bounds[k] - anchor[k], 0.0);
    const double dn = std::max(anchor[k], 0.0);
    blk.w_plus.push_back(m.add_variable(0.0, up, 0.0));
    blk.w_minus.push_back(m.add_variable(0.0, dn, 0.0));
    blk.binary.push_back(m.add_variable(0.0, 1.0, 0.0, !relax_binaries, -1));
  }
  for (int k = 0; k < d; ++k) {
    m.add_row({{blk.w_plus[k], 1.0}, {blk.w_minus[k], -1.0}, {linked[k], -1.0}},
              RowSense::Equal, -anchor[k]);
    m.add_row({{blk.w_plus[k], 1.0}, {blk.binary[k], -(bounds[k] - anchor[k])}},
              RowSense::LessEqual, 0.0);
    m.add_row({{blk.w_minus[k], 1.0}, {blk.binary[k], anchor[k]}}, RowSense::LessEqual,
              anchor[k]);
  }
  return blk;
}

}  // namespace

NodeModel build_node_model(const Instance& instance, int node_id, const cuts::CutPool& pool,
                           const BuildOptions& options) {
  const TreeNode& node = instance.tree.node(node_id);
  const NodeProblem& prob = instance.problem(node_id);
  const int da = instance.ancestor_dim(node_id);
  const std::vector<double> abound = instance.ancestor_bounds(node_id);

  if (static_cast<int>(options.xhat.size()) != da)
    throw DimensionMismatch("xhat has dimension " + std::to_string(options.xhat.size()) +
                            ", ancestor state has " + std::to_string(da));
  for (int k = 0; k < da; ++k) {
    if (options.xhat[k] < -1e-9 || options.xhat[k] > abound[k] + 1e-9)
      throw DimensionMismatch("xhat outside the ancestor box in dimension " + std::to_string(k));
  }

  const bool lp = options.mode == BuildMode::LpRelaxed;
  NodeModel out;
  LinearModel& m = out.model;
  NodeModelHandles& h = out.handles;
  m.name = (instance.name.empty() ? "node" : instance.name) + "_n" + std::to_string(node_id);

  // copy variables z
  for (int k = 0; k < da; ++k) {
    const double lo = options.mode == BuildMode::FixedState ? options.xhat[k] : 0.0;
    const double hi = options.mode == BuildMode::FixedState ? options.xhat[k] : abound[k];
    h.z.push_back(m.add_variable(lo, hi, 0.0));
  }
  // own state and locals
  for (int k = 0; k < prob.state_dim; ++k) {
    double lo = 0.0, hi = prob.state_bound[k];
    if (options.pin_state) lo = hi = (*options.pin_state)[k];
    h.state.push_back(m.add_variable(lo, hi, prob.state_cost[k], !lp && prob.state_integral[k]));
  }
  for (int j = 0; j < prob.locals.size(); ++j) {
    h.locals.push_back(m.add_variable(prob.locals.lb[j], prob.locals.ub[j], prob.locals.cost[j],
                                      !lp && prob.locals.integral[j]));
  }

  // node rows T z + W x + Wbar y = b
  std::vector<milp::Row> rows(prob.num_rows);
  for (int r = 0; r < prob.num_rows; ++r) {
    rows[r].sense = RowSense::Equal;
    rows[r].rhs = prob.rhs[r];
  }
  for (const Triplet& t : prob.T) rows[t.row].entries.push_back({h.z[t.col], t.value});
  for (const Triplet& t : prob.W) rows[t.row].entries.push_back({h.state[t.col], t.value});
  for (const Triplet& t : prob.Wbar) rows[t.row].entries.push_back({h.locals[t.col], t.value});
  for (auto& r : rows) m.add_row(std::move(r));

  if (options.mode == BuildMode::ReluCopy) {
    const ReluBlock blk = add_relu_block(m, h.z, options.xhat, abound, /*relax=*/false);
    h.w_plus = blk.w_plus;
    h.w_minus = blk.w_minus;
    h.relu_binary = blk.binary;
  } else if (options.mode == BuildMode::LpRelaxed) {
    for (int k = 0; k < da; ++k)
      h.copy_rows.push_back(m.add_row({{h.z[k], 1.0}}, RowSense::Equal, options.xhat[k]));
  }

  if (!options.include_children) return out;

  // epigraph variables and the multi-cut pool, children in id order
  for (int child : node.children) {
    const double q = instance.tree.node(child).prob;
    const int theta = m.add_variable(instance.node_value_lb(child), milp::kInf, q);
    h.theta[child] = theta;

    for (const cuts::Cut& cut : pool.for_child(child)) {
      if (std::holds_alternative<cuts::LinearCut>(cut)) {
        const auto& c = std::get<cuts::LinearCut>(cut);
        if (static_cast<int>(c.slope.size()) != prob.state_dim)
          throw CutAnchorMismatch("linear cut dimension mismatch at child " +
                                  std::to_string(child));
        milp::Row row;
        for (int k = 0; k < prob.state_dim; ++k)
          if (c.slope[k] != 0.0) row.entries.push_back({h.state[k], c.slope[k]});
        row.entries.push_back({theta, -1.0});
        row.sense = RowSense::LessEqual;
        row.rhs = -c.intercept;
        m.add_row(std::move(row));
      } else {
        const auto& c = std::get<cuts::ReluCut>(cut);
        if (static_cast<int>(c.dim()) != prob.state_dim)
          throw CutAnchorMismatch("relu cut anchored in dimension " + std::to_string(c.dim()) +
                                  " embedded at child " + std::to_string(child) +
                                  " with state dimension " + std::to_string(prob.state_dim));
        const ReluBlock blk = add_relu_block(m, h.state, c.anchor, prob.state_bound, lp);
        milp::Row row;  // pi0 theta + pi+.w+ + pi-.w- >= value
        if (c.pi0 != 0.0) row.entries.push_back({theta, c.pi0});
        for (int k = 0; k < prob.state_dim; ++k) {
          if (c.pi_plus[k] != 0.0) row.entries.push_back({blk.w_plus[k], c.pi_plus[k]});
          if (c.pi_minus[k] != 0.0) row.entries.push_back({blk.w_minus[k], c.pi_minus[k]});
        }
        row.sense = RowSense::GreaterEqual;
        row.rhs = c.value;
        m.add_row(std::move(row));

        if (options.strengthen_cut_relaxations) {
          // pi0 theta >= value - sum_k g_k(x_k) with separable
          // g_k = pi+ (x-a)+ + pi- (a-x)+; relax each g_k to its concave
          // envelope via t_k <= env pieces, then pi0 theta + sum t_k >= value.
          milp::Row link;
          if (c.pi0 != 0.0) link.entries.push_back({theta, c.pi0});
          for (int k = 0; k < prob.state_dim; ++k) {
            const double a = c.anchor[k];
            const double B = prob.state_bound[k];
            const int t = m.add_variable(-milp::kInf, milp::kInf, 0.0);
            link.entries.push_back({t, 1.0});
            const bool left_exists = a > 1e-12;
            const bool right_exists = a < B - 1e-12;
            const bool concave = c.pi_plus[k] + c.pi_minus[k] <= 0.0;
            if (!left_exists) {
              m.add_row({{t, 1.0}, {h.state[k], -c.pi_plus[k]}}, RowSense::LessEqual,
                        -c.pi_plus[k] * a);
            } else if (!right_exists) {
              m.add_row({{t, 1.0}, {h.state[k], c.pi_minus[k]}}, RowSense::LessEqual,
                        c.pi_minus[k] * a);
            } else if (concave) {
              m.add_row({{t, 1.0}, {h.state[k], c.pi_minus[k]}}, RowSense::LessEqual,
                        c.pi_minus[k] * a);
              m.add_row({{t, 1.0}, {h.state[k], -c.pi_plus[k]}}, RowSense::LessEqual,
                        -c.pi_plus[k] * a);
            } else {
              const double chord = (c.pi_plus[k] * (B - a) - c.pi_minus[k] * a) / B;
              m.add_row({{t, 1.0}, {h.state[k], -chord}}, RowSense::LessEqual,
                        c.pi_minus[k] * a);
            }
          }
          link.sense = RowSense::GreaterEqual;
          link.rhs = c.value;
          m.add_row(std::move(link));
        }
      }
    }
  }
  return out;
}

}  // namespace rnc::stoch
