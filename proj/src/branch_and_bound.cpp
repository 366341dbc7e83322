// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#include "rnc/milp/branch_and_bound.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>

#include "rnc/milp/simplex.hpp"

namespace rnc::milp {

namespace {

struct Node {
  double bound;  // parent LP value, valid lower bound for the subtree
  long id;
  std::vector<double> lower, upper;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;  // min-heap on bound
    return a.id > b.id;                                // FIFO on ties
  }
};

// Most fractional integer variable in the highest fractional priority class;
// strict comparisons keep the lowest index on ties. Returns -1 when the point
// is integral within int_tol.
int most_fractional(const std::vector<double>& x, const LinearModel& model, double int_tol) {
  int best = -1;
  double best_dist = int_tol;
  int best_prio = std::numeric_limits<int>::min();
  for (int j = 0; j < model.num_vars; ++j) {
    if (!model.integral[j]) continue;
    const double frac = x[j] - std::floor(x[j]);
    const double dist = std::min(frac, 1.0 - frac);
    if (dist <= int_tol) continue;
    const int prio = model.branch_priority[j];
    if (prio > best_prio || (prio == best_prio && dist > best_dist)) {
      best = j;
      best_dist = dist;
      best_prio = prio;
    }
  }
  return best;
}

}  // namespace

// Best-bound node selection with depth-first plunging: the child nearest the
// fractional LP value is processed immediately, the sibling joins the queue.
// Plunging finds incumbents fast when many linking binaries tie at equal
// bounds; the queue keeps the proof side exact.
MilpSolution solve_milp(const LinearModel& model, const MilpLimits& limits, const Tolerances& tol) {
  validate_model(model);
  const auto t_start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  };

  MilpSolution out;
  LinearModel work = model;
  const double gap = limits.mip_gap >= 0 ? limits.mip_gap : tol.mip_gap;

  std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
  long next_id = 0;
  open.push(Node{-kInf, next_id++, model.lower, model.upper});
  std::optional<Node> in_hand;

  double incumbent_obj = kInf;
  std::vector<double> incumbent;
  bool root_unbounded = false;

  auto global_bound = [&] {
    double b = incumbent_obj;
    if (in_hand.has_value()) b = std::min(b, in_hand->bound);
    if (!open.empty()) b = std::min(b, open.top().bound);
    return b;
  };

  while (in_hand.has_value() || !open.empty()) {
    if (out.nodes >= limits.max_nodes || elapsed() > limits.time_limit_s) {
      out.status = SolveStatus::LimitReached;
      out.best_bound = global_bound();
      out.objective = incumbent_obj;
      out.x = incumbent;
      return out;
    }
    const double cutoff = incumbent_obj - gap * std::max(1.0, std::fabs(incumbent_obj));

    Node node{0, 0, {}, {}};
    if (in_hand.has_value()) {
      node = std::move(*in_hand);
      in_hand.reset();
      if (std::isfinite(incumbent_obj) && node.bound >= cutoff) continue;  // abandon the dive
    } else {
      node = open.top();
      open.pop();
      if (std::isfinite(incumbent_obj) && node.bound >= cutoff) break;  // all open are worse
    }
    if (limits.record_bound_history)
      out.bound_history.push_back(std::min(global_bound(), std::max(node.bound, -1e300)));

    work.lower = node.lower;
    work.upper = node.upper;
    const LpSolution lp = solve_lp(work, tol);
    ++out.nodes;
    if (lp.status == SolveStatus::Infeasible) continue;
    if (lp.status == SolveStatus::Unbounded) {
      if (node.id == 0) root_unbounded = true;
      break;
    }
    if (lp.status == SolveStatus::LimitReached) continue;
    if (std::isfinite(incumbent_obj) && lp.objective >= cutoff) continue;

    const int branch_var = most_fractional(lp.x, model, tol.integrality);
    if (branch_var < 0) {
      if (lp.objective < incumbent_obj) {
        incumbent_obj = lp.objective;
        incumbent = lp.x;
        for (int j = 0; j < model.num_vars; ++j)
          if (model.integral[j]) incumbent[j] = std::round(incumbent[j]);
      }
      continue;
    }
    const double v = lp.x[branch_var];
    Node down{lp.objective, next_id++, node.lower, node.upper};
    down.upper[branch_var] = std::floor(v);
    Node up{lp.objective, next_id++, std::move(node.lower), std::move(node.upper)};
    up.lower[branch_var] = std::ceil(v);
    const bool down_ok = down.lower[branch_var] <= down.upper[branch_var];
    const bool up_ok = up.lower[branch_var] <= up.upper[branch_var];
    const bool prefer_down = v - std::floor(v) <= 0.5;
    if (down_ok && up_ok) {
      in_hand = prefer_down ? std::move(down) : std::move(up);
      open.push(prefer_down ? std::move(up) : std::move(down));
    } else if (down_ok) {
      in_hand = std::move(down);
    } else if (up_ok) {
      in_hand = std::move(up);
    }
  }

  if (root_unbounded) {
    out.status = SolveStatus::Unbounded;
    out.best_bound = -kInf;
    return out;
  }
  if (!std::isfinite(incumbent_obj)) {
    out.status = SolveStatus::Infeasible;
    return out;
  }
  out.status = SolveStatus::Optimal;
  out.x = std::move(incumbent);
  out.objective = incumbent_obj;
  out.best_bound = global_bound();
  return out;
}

}  // namespace rnc::milp
