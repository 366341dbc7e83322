// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#include "rnc/stoch/instance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace rnc::stoch {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

int index_of(const ScenarioTree& tree, int id) {
  auto it = std::lower_bound(tree.nodes.begin(), tree.nodes.end(), id,
                             [](const TreeNode& n, int v) { return n.id < v; });
  if (it == tree.nodes.end() || it->id != id) return -1;
  return static_cast<int>(it - tree.nodes.begin());
}
}  // namespace

const TreeNode& ScenarioTree::node(int id) const {
  const int i = index_of(*this, id);
  if (i < 0) throw std::out_of_range("unknown tree node " + std::to_string(id));
  return nodes[i];
}

bool ScenarioTree::has_node(int id) const { return index_of(*this, id) >= 0; }

int ScenarioTree::num_stages() const {
  int s = 0;
  for (const TreeNode& n : nodes) s = std::max(s, n.stage);
  return s;
}

double ScenarioTree::path_probability(int id) const {
  double p = 1.0;
  const TreeNode* n = &node(id);
  while (n->ancestor >= 0) {
    p *= n->prob;
    n = &node(n->ancestor);
  }
  return p;
}

int Instance::ancestor_dim(int node_id) const {
  const TreeNode& n = tree.node(node_id);
  if (n.ancestor < 0) return static_cast<int>(x0.size());
  return problem(n.ancestor).state_dim;
}

std::vector<double> Instance::ancestor_bounds(int node_id) const {
  const TreeNode& n = tree.node(node_id);
  if (n.ancestor < 0) {
    std::vector<double> b(x0.size());
    for (size_t k = 0; k < x0.size(); ++k) b[k] = std::max(x0[k], 1.0);
    return b;
  }
  return problem(n.ancestor).state_bound;
}

const NodeProblem& Instance::problem(int node_id) const {
  auto it = problems.find(node_id);
  if (it == problems.end())
    throw std::out_of_range("no problem data for node " + std::to_string(node_id));
  return it->second;
}

double Instance::node_value_lb(int node_id) const {
  const int i = index_of(tree, node_id);
  if (i < 0 || i >= static_cast<int>(value_lb.size())) return -kInf;
  return value_lb[i];
}

namespace {

// Detects a +1/-1 pair of penalized slack locals for the given row: local,
// continuous, zero lower bound, unbounded above, positive cost, and touching
// only this row.
bool row_has_slack_pair(const NodeProblem& p, int row) {
  std::vector<int> touches(p.locals.size(), 0);
  for (const Triplet& t : p.Wbar) ++touches[t.col];
  bool plus = false, minus = false;
  for (const Triplet& t : p.Wbar) {
    if (t.row != row) continue;
    const int j = t.col;
    if (touches[j] != 1 || p.locals.integral[j]) continue;
    if (p.locals.lb[j] != 0.0 || p.locals.ub[j] != kInf) continue;
    if (p.locals.cost[j] <= 0.0) continue;
    if (t.value == 1.0) minus = true;   // absorbs lhs < rhs
    if (t.value == -1.0) plus = true;   // absorbs lhs > rhs
  }
  return plus && minus;
}

void check_triplets(const std::vector<Triplet>& ts, int rows, int cols, const char* mat,
                    int node_id, ValidationReport& rep) {
  for (const Triplet& t : ts) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
      std::ostringstream os;
      os << "node " << node_id << ": " << mat << " triplet (" << t.row << "," << t.col
         << ") out of range " << rows << "x" << cols;
      rep.issues.push_back(os.str());
      return;
    }
    if (!std::isfinite(t.value)) {
      rep.issues.push_back(std::string("node ") + std::to_string(node_id) + ": non-finite " +
                           mat + " entry");
      return;
    }
  }
}

}  // namespace

ValidationReport validate(const Instance& instance) {
  ValidationReport rep;
  const ScenarioTree& tree = instance.tree;
  if (tree.nodes.empty()) {
    rep.issues.push_back("empty tree");
    return rep;
  }
  if (!tree.has_node(tree.root_id)) {
    rep.issues.push_back("root id not in node list");
    return rep;
  }
  const TreeNode& root = tree.node(tree.root_id);
  if (root.stage != 1) rep.issues.push_back("root must have stage 1");
  if (root.ancestor >= 0) rep.issues.push_back("root must not have an ancestor");

  for (const TreeNode& n : tree.nodes) {
    if (n.id != tree.root_id) {
      if (!tree.has_node(n.ancestor)) {
        rep.issues.push_back("node " + std::to_string(n.id) + " has unknown ancestor");
        continue;
      }
      const TreeNode& a = tree.node(n.ancestor);
      if (n.stage != a.stage + 1)
        rep.issues.push_back("node " + std::to_string(n.id) + " stage must be ancestor stage + 1");
      if (std::find(a.children.begin(), a.children.end(), n.id) == a.children.end())
        rep.issues.push_back("ancestor/children maps inconsistent at node " + std::to_string(n.id));
      if (!(n.prob > 0))
        rep.issues.push_back("node " + std::to_string(n.id) + " transition probability must be > 0");
    }
    if (!n.children.empty()) {
      double sum = 0;
      for (int c : n.children) {
        if (!tree.has_node(c)) {
          rep.issues.push_back("node " + std::to_string(n.id) + " lists unknown child");
          continue;
        }
        sum += tree.node(c).prob;
      }
      if (std::fabs(sum - 1.0) > 1e-9) {
        std::ostringstream os;
        os << "node " << n.id << ": child probabilities sum to " << sum;
        rep.issues.push_back(os.str());
      }
    }
    auto pit = instance.problems.find(n.id);
    if (pit == instance.problems.end()) {
      rep.issues.push_back("node " + std::to_string(n.id) + " has no problem data");
      continue;
    }
    const NodeProblem& p = pit->second;
    if (p.state_dim <= 0) rep.issues.push_back("node " + std::to_string(n.id) + ": state_dim < 1");
    if (static_cast<int>(p.state_bound.size()) != p.state_dim ||
        static_cast<int>(p.state_integral.size()) != p.state_dim ||
        static_cast<int>(p.state_cost.size()) != p.state_dim) {
      rep.issues.push_back("node " + std::to_string(n.id) + ": state arrays out of sync");
      continue;
    }
    for (int k = 0; k < p.state_dim; ++k) {
      if (!(p.state_bound[k] > 0)) {
        std::ostringstream os;
        os << "node " << n.id << ": state bound B_" << k << " must be positive";
        rep.issues.push_back(os.str());
      }
    }
    const int nl = p.locals.size();
    if (static_cast<int>(p.locals.ub.size()) != nl ||
        static_cast<int>(p.locals.cost.size()) != nl ||
        static_cast<int>(p.locals.integral.size()) != nl) {
      rep.issues.push_back("node " + std::to_string(n.id) + ": local arrays out of sync");
      continue;
    }
    for (int j = 0; j < nl; ++j) {
      if (p.locals.lb[j] > p.locals.ub[j])
        rep.issues.push_back("node " + std::to_string(n.id) + ": local bound reversed");
      if (p.locals.lb[j] == -kInf && p.locals.cost[j] > 0)
        rep.issues.push_back("node " + std::to_string(n.id) +
                             ": local unbounded below with positive cost");
      if (p.locals.ub[j] == kInf && p.locals.cost[j] < 0)
        rep.issues.push_back("node " + std::to_string(n.id) +
                             ": local unbounded above with negative cost");
    }
    if (static_cast<int>(p.rhs.size()) != p.num_rows)
      rep.issues.push_back("node " + std::to_string(n.id) + ": rhs size != num_rows");
    for (double b : p.rhs)
      if (!std::isfinite(b))
        rep.issues.push_back("node " + std::to_string(n.id) + ": non-finite rhs");
    const int da = n.ancestor < 0 ? static_cast<int>(instance.x0.size())
                                  : (instance.problems.count(n.ancestor)
                                         ? instance.problems.at(n.ancestor).state_dim
                                         : 0);
    check_triplets(p.T, p.num_rows, da, "T", n.id, rep);
    check_triplets(p.W, p.num_rows, p.state_dim, "W", n.id, rep);
    check_triplets(p.Wbar, p.num_rows, nl, "Wbar", n.id, rep);

    if (instance.recourse_penalty.has_value()) {
      for (int r = 0; r < p.num_rows; ++r) {
        if (!row_has_slack_pair(p, r)) {
          std::ostringstream os;
          os << "node " << n.id << ": row " << r
             << " lacks penalty slack pair but the recourse flag is set";
          rep.issues.push_back(os.str());
          break;
        }
      }
    }
  }
  for (size_t k = 0; k < instance.x0.size(); ++k) {
    const double cap = std::max(instance.x0[k], 1.0);
    if (instance.x0[k] < 0 || instance.x0[k] > cap)
      rep.issues.push_back("x0 component " + std::to_string(k) + " outside the root state box");
  }
  return rep;
}

void finalize_instance(Instance& instance) {
  std::sort(instance.tree.nodes.begin(), instance.tree.nodes.end(),
            [](const TreeNode& a, const TreeNode& b) { return a.id < b.id; });
  for (TreeNode& n : instance.tree.nodes) n.children.clear();
  for (const TreeNode& n : instance.tree.nodes) {
    if (n.ancestor < 0) continue;
    const int i = [&] {
      for (size_t k = 0; k < instance.tree.nodes.size(); ++k)
        if (instance.tree.nodes[k].id == n.ancestor) return static_cast<int>(k);
      return -1;
    }();
    if (i >= 0) instance.tree.nodes[i].children.push_back(n.id);
  }
  for (TreeNode& n : instance.tree.nodes) std::sort(n.children.begin(), n.children.end());

  const ValidationReport rep = validate(instance);
  if (!rep.ok()) {
    std::string msg = "instance validation failed:";
    for (const std::string& s : rep.issues) msg += "\n  - " + s;
    throw ValidationError(msg);
  }

  // Per-node value lower bounds by leaf-up recursion over box minima; used to
  // bound epigraph variables before any cut exists.
  instance.value_lb.assign(instance.tree.nodes.size(), 0.0);
  std::vector<size_t> order(instance.tree.nodes.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return instance.tree.nodes[a].stage > instance.tree.nodes[b].stage;
  });
  for (size_t i : order) {
    const TreeNode& n = instance.tree.nodes[i];
    const NodeProblem& p = instance.problem(n.id);
    double lb = 0.0;
    for (int k = 0; k < p.state_dim; ++k)
      lb += std::min(0.0, p.state_cost[k] * p.state_bound[k]);
    for (int j = 0; j < p.locals.size(); ++j) {
      const double at_lb = p.locals.cost[j] * p.locals.lb[j];
      const double at_ub = p.locals.cost[j] * p.locals.ub[j];
      double mn = std::min(at_lb, at_ub);
      if (std::isnan(mn)) mn = 0.0;  // 0 * inf
      lb += std::min(0.0, mn);
    }
    for (int c : n.children) {
      const TreeNode& cn = instance.tree.node(c);
      size_t ci = 0;
      for (; ci < instance.tree.nodes.size(); ++ci)
        if (instance.tree.nodes[ci].id == c) break;
      lb += cn.prob * std::min(0.0, instance.value_lb[ci]);
    }
    instance.value_lb[i] = lb;
  }
}

}  // namespace rnc::stoch
