// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rnc::stoch {

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

struct TreeNode {
  int id = -1;
  int stage = 0;
  int ancestor = -1;      // node id, -1 for the root
  double prob = 1.0;      // q_{a(n),n}; 1 for the root
  std::vector<int> children;  // node ids, sorted
};

struct ScenarioTree {
  std::vector<TreeNode> nodes;  // sorted by id
  int root_id = -1;

  const TreeNode& node(int id) const;
  bool has_node(int id) const;
  int num_stages() const;
  double path_probability(int id) const;  // product of q along the root path
};

struct LocalVars {
  std::vector<double> lb, ub, cost;
  std::vector<bool> integral;
  int size() const { return static_cast<int>(lb.size()); }
};

/// Node subproblem data. Rows are equalities T z + W x + Wbar y = b over the
/// inherited state z, own state x and locals y; inequalities are modeled with
/// slack locals by the generators.
struct NodeProblem {
  int state_dim = 0;
  std::vector<double> state_bound;    // x_k in [0, B_k]
  std::vector<bool> state_integral;
  std::vector<double> state_cost;
  LocalVars locals;
  int num_rows = 0;
  std::vector<Triplet> T, W, Wbar;
  std::vector<double> rhs;
};

struct Instance {
  std::string name;
  ScenarioTree tree;
  std::map<int, NodeProblem> problems;
  std::vector<double> x0;
  std::optional<double> recourse_penalty;
  std::vector<double> value_lb;  // indexed like tree.nodes: lower bound on any Q_n

  int ancestor_dim(int node_id) const;
  /// Inherited-state box for node_id: ancestor's B, or max(x0, 1) at the root.
  std::vector<double> ancestor_bounds(int node_id) const;
  const NodeProblem& problem(int node_id) const;
  double node_value_lb(int node_id) const;
};

struct ValidationReport {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
};

/// Structural validation: probability sums, bound signs, matrix shapes,
/// missing recourse slacks. Report-based, never throws.
ValidationReport validate(const Instance& instance);

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// Fills tree children maps and value_lb; throws ValidationError if the
/// report is nonempty.
void finalize_instance(Instance& instance);

}  // namespace rnc::stoch
