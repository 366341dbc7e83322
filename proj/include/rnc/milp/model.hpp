// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace rnc::milp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Kernel tolerances. The kernel is kept tighter than the cut-level
/// tolerances it feeds.
struct Tolerances {
  double feas = 1e-7;
  double integrality = 1e-6;
  double mip_gap = 1e-9;
};

enum class RowSense { LessEqual, Equal, GreaterEqual };

struct RowEntry {
  int column = 0;
  double value = 0.0;
};

struct Row {
  std::vector<RowEntry> entries;
  RowSense sense = RowSense::Equal;
  double rhs = 0.0;
};

/// Sparse-row LP/MILP in minimization form.
struct LinearModel {
  int num_vars = 0;
  std::vector<double> lower;     // -inf allowed
  std::vector<double> upper;     // +inf allowed
  std::vector<bool> integral;
  std::vector<double> objective;
  std::vector<int> branch_priority;  // higher branches first; linking binaries go low
  std::vector<Row> rows;
  std::string name;

  int add_variable(double lb, double ub, double cost, bool is_integral = false,
                   int priority = 0) {
    lower.push_back(lb);
    upper.push_back(ub);
    objective.push_back(cost);
    integral.push_back(is_integral);
    branch_priority.push_back(priority);
    return num_vars++;
  }

  int add_row(Row row) {
    rows.push_back(std::move(row));
    return static_cast<int>(rows.size()) - 1;
  }

  int add_row(std::vector<RowEntry> entries, RowSense sense, double rhs) {
    return add_row(Row{std::move(entries), sense, rhs});
  }
};

class MalformedModel : public std::runtime_error {
 public:
  explicit MalformedModel(const std::string& what) : std::runtime_error(what) {}
};

/// Throws MalformedModel on any violated LinearModel invariant.
void validate_model(const LinearModel& model);

enum class SolveStatus { Optimal, Infeasible, Unbounded, LimitReached };

const char* to_string(SolveStatus status);

struct LpSolution {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  std::vector<double> row_duals;      // d(objective)/d(rhs)
  std::vector<double> reduced_costs;
  int iterations = 0;
};

struct MilpLimits {
  long max_nodes = 2'000'000;
  double time_limit_s = kInf;
  double mip_gap = -1.0;  // relative; overrides Tolerances::mip_gap when >= 0
  bool record_bound_history = false;
};

struct MilpSolution {
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  double best_bound = -kInf;
  long nodes = 0;
  std::vector<double> bound_history;  // filled when requested in limits
};

}  // namespace rnc::milp
