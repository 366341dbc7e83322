// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#include "rnc/oracle/value_table.hpp"

#include <algorithm>
#include <cmath>

#include "rnc/dual/lagrangian.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rnc::oracle {

int ValueTable::index_of(const std::vector<double>& x, double tol) const {
  for (size_t i = 0; i < points.size(); ++i) {
    bool match = true;
    for (int k = 0; k < dim; ++k) {
      if (std::fabs(points[i][k] - x[k]) > tol) {
        match = false;
        break;
      }
    }
    if (match) return static_cast<int>(i);
  }
  return -1;
}

double ValueTable::value_at(const std::vector<double>& x) const {
  const int i = index_of(x);
  if (i < 0) throw std::out_of_range("point not in the value table grid");
  return values[i];
}

ValueTable enum_value_function(const stoch::Instance& instance, int node,
                               const cuts::CutPool& pool, double resolution,
                               const std::vector<std::vector<double>>& extra_points,
                               const milp::SolverBackend& backend, int threads) {
  const int d = instance.ancestor_dim(node);
  if (d > 3) throw GridTooLarge("value-table enumeration supports ancestor dimension <= 3");
  const std::vector<double> bound = instance.ancestor_bounds(node);

  std::vector<std::vector<double>> axes(d);
  for (int k = 0; k < d; ++k) {
    std::vector<double>& axis = axes[k];
    for (double v = 0.0; v <= bound[k] + 1e-9; v += 1.0) axis.push_back(std::min(v, bound[k]));
    if (resolution > 0) {
      for (double v = 0.0; v <= bound[k] + 1e-9; v += resolution)
        axis.push_back(std::min(v, bound[k]));
    }
    axis.push_back(bound[k]);
    std::sort(axis.begin(), axis.end());
    axis.erase(std::unique(axis.begin(), axis.end(),
                           [](double a, double b) { return std::fabs(a - b) < 1e-9; }),
               axis.end());
  }
  size_t total = 1;
  for (const auto& axis : axes) total *= axis.size();
  if (total > 10000)
    throw GridTooLarge("grid has " + std::to_string(total) + " points (limit 10000)");

  ValueTable table;
  table.node = node;
  table.dim = d;
  std::vector<int> idx(d, 0);
  for (size_t i = 0; i < total; ++i) {
    std::vector<double> pt(d);
    size_t rem = i;
    for (int k = 0; k < d; ++k) {
      pt[k] = axes[k][rem % axes[k].size()];
      rem /= axes[k].size();
    }
    table.points.push_back(std::move(pt));
  }
  for (const auto& x : extra_points)
    if (table.index_of(x) < 0) table.points.push_back(x);

  const int n = static_cast<int>(table.points.size());
  table.values.assign(n, 0.0);
  std::exception_ptr error;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(threads, 1)) if (threads > 1)
#endif
  for (int i = 0; i < n; ++i) {
    try {
      table.values[i] = dual::eval_recourse(instance, node, pool, table.points[i], backend);
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return table;
}

ConvexEnvelope::ConvexEnvelope(std::vector<std::vector<double>> points,
                               std::vector<double> values)
    : points_(std::move(points)), values_(std::move(values)) {}

double ConvexEnvelope::evaluate(const std::vector<double>& x,
                                const milp::SolverBackend& backend) const {
  // env(x) = min sum lambda_i v_i  s.t.  sum lambda_i p_i = x, sum lambda = 1
  milp::LinearModel m;
  const int n = static_cast<int>(points_.size());
  const int d = static_cast<int>(x.size());
  for (int i = 0; i < n; ++i) m.add_variable(0.0, 1.0, values_[i]);
  for (int k = 0; k < d; ++k) {
    milp::Row row;
    for (int i = 0; i < n; ++i)
      if (points_[i][k] != 0.0) row.entries.push_back({i, points_[i][k]});
    row.sense = milp::RowSense::Equal;
    row.rhs = x[k];
    m.add_row(std::move(row));
  }
  milp::Row one;
  for (int i = 0; i < n; ++i) one.entries.push_back({i, 1.0});
  one.sense = milp::RowSense::Equal;
  one.rhs = 1.0;
  m.add_row(std::move(one));
  const milp::LpSolution sol = backend.solve_lp(m);
  if (sol.status != milp::SolveStatus::Optimal)
    throw std::domain_error("point outside the hull of the value-table grid");
  return sol.objective;
}

ConvexEnvelope convex_envelope(const ValueTable& table) {
  return ConvexEnvelope(table.points, table.values);
}

}  // namespace rnc::oracle
