// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rnc/cuts/pool.hpp"
#include "rnc/milp/solver.hpp"
#include "rnc/stoch/instance.hpp"

namespace rnc::oracle {

class GridTooLarge : public std::runtime_error {
 public:
  explicit GridTooLarge(const std::string& what) : std::runtime_error(what) {}
};

/// Exact Q values over a grid of ancestor states: every integer point of the
/// box plus multiples of `resolution` (resolution 0 keeps integers only).
struct ValueTable {
  int node = -1;
  int dim = 0;
  std::vector<std::vector<double>> points;
  std::vector<double> values;

  int index_of(const std::vector<double>& x, double tol = 1e-9) const;
  /// Exact value lookup; throws std::out_of_range for a point not in the grid.
  double value_at(const std::vector<double>& x) const;
};

/// Guardrails: ancestor dimension <= 3 and at most 10^4 grid points. Each
/// value is an exact FixedState MILP solve; `threads` > 1 enumerates grid
/// points with OpenMP, the serial path is the reference.
ValueTable enum_value_function(const stoch::Instance& instance, int node,
                               const cuts::CutPool& pool, double resolution,
                               const std::vector<std::vector<double>>& extra_points = {},
                               const milp::SolverBackend& backend = milp::default_backend(),
                               int threads = 1);

/// Lower convex hull of the table's graph points, evaluable anywhere in the
/// hull of the grid via a small LP.
class ConvexEnvelope {
 public:
  ConvexEnvelope(std::vector<std::vector<double>> points, std::vector<double> values);
  double evaluate(const std::vector<double>& x,
                  const milp::SolverBackend& backend = milp::default_backend()) const;

 private:
  std::vector<std::vector<double>> points_;
  std::vector<double> values_;
};

ConvexEnvelope convex_envelope(const ValueTable& table);

}  // namespace rnc::oracle
