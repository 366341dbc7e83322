// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#include "rnc/dual/level_bundle.hpp"

#include <cmath>
#include <ostream>

namespace rnc::dual {

using milp::kInf;
using milp::LinearModel;
using milp::LpSolution;
using milp::Row;
using milp::RowSense;
using milp::SolveStatus;

namespace {

// t <= value + grad . (p - point)  as a row over (p, t)
Row majorant_row(const Support& m, int dim, int t_col) {
  Row row;
  double rhs = m.value;
  for (int i = 0; i < dim; ++i) {
    if (m.grad[i] != 0.0) row.entries.push_back({i, -m.grad[i]});
    rhs -= m.grad[i] * m.point[i];
  }
  row.entries.push_back({t_col, 1.0});
  row.sense = RowSense::LessEqual;
  row.rhs = rhs;
  return row;
}

}  // namespace

BundleResult level_bundle_max(const DualOracle& oracle, FeasibleRegion region,
                              std::vector<double> init, const BundleParams& params,
                              const milp::SolverBackend& backend) {
  const int dim = region.dim;
  if (static_cast<int>(init.size()) != dim)
    throw std::invalid_argument("level_bundle_max: init dimension mismatch");

  BundleResult res;
  std::vector<Support>& bundle = res.supports;
  std::vector<double> center = init;  // stability center follows the incumbent

  auto evaluate = [&](const std::vector<double>& p) {
    OracleEval ev = oracle(p);
    if (static_cast<int>(ev.supergradient.size()) != dim)
      throw OracleFailure("oracle returned a supergradient of wrong dimension");
    for (Row& r : ev.new_region_rows) region.rows.push_back(std::move(r));
    ev.new_region_rows.clear();
    bundle.push_back(Support{p, ev.value, ev.supergradient});
    if (ev.feasible && (!res.found_feasible || ev.value > res.best_value)) {
      res.found_feasible = true;
      res.best_value = ev.value;
      res.best_point = p;
      res.best_eval = ev;
      center = p;
    }
    return ev;
  };

  evaluate(init);

  for (int it = 0; it < params.max_iters; ++it) {
    res.iterations = it + 1;

    // model max: max t over the bundle majorants and the region
    LinearModel model;
    for (int i = 0; i < dim; ++i) model.add_variable(region.lower[i], region.upper[i], 0.0);
    const int t_col = model.add_variable(-kInf, kInf, -1.0);  // maximize t
    for (const Support& m : bundle) model.add_row(majorant_row(m, dim, t_col));
    for (const Row& r : region.rows) model.add_row(r);
    const LpSolution model_sol = backend.solve_lp(model);
    if (model_sol.status == SolveStatus::Infeasible)
      throw InfeasibleRegion("level bundle: feasible region is empty");
    if (model_sol.status != SolveStatus::Optimal)
      throw OracleFailure(std::string("level bundle: model LP ") +
                          milp::to_string(model_sol.status));
    const double model_max = model_sol.x[t_col];
    const double best = res.found_feasible ? res.best_value : -kInf;
    res.model_gap = model_max - best;
    if (params.trace) {
      *params.trace << "bundle iter=" << res.iterations << " best=" << best
                    << " model=" << model_max << " gap=" << res.model_gap << "\n";
    }
    if (res.found_feasible &&
        res.model_gap <= params.tol * std::max(1.0, std::fabs(best)) + 1e-12)
      break;

    const double level =
        res.found_feasible ? params.lambda * best + (1.0 - params.lambda) * model_max
                           : model_max;

    // projection of the stability center onto {model >= level} in the inf-norm
    LinearModel proj;
    for (int i = 0; i < dim; ++i) proj.add_variable(region.lower[i], region.upper[i], 0.0);
    const int s_col = proj.add_variable(0.0, kInf, 1.0);
    for (int i = 0; i < dim; ++i) {
      proj.add_row({{i, 1.0}, {s_col, -1.0}}, RowSense::LessEqual, center[i]);
      proj.add_row({{i, 1.0}, {s_col, 1.0}}, RowSense::GreaterEqual, center[i]);
    }
    for (const Support& m : bundle) {
      Row r;  // value + grad.(p - point) >= level
      double rhs = level - m.value;
      for (int i = 0; i < dim; ++i) {
        if (m.grad[i] != 0.0) r.entries.push_back({i, m.grad[i]});
        rhs += m.grad[i] * m.point[i];
      }
      r.sense = RowSense::GreaterEqual;
      r.rhs = rhs;
      proj.add_row(std::move(r));
    }
    for (const Row& r : region.rows) proj.add_row(r);
    const LpSolution proj_sol = backend.solve_lp(proj);
    if (proj_sol.status != SolveStatus::Optimal)
      throw OracleFailure(std::string("level bundle: projection LP ") +
                          milp::to_string(proj_sol.status));
    std::vector<double> next(proj_sol.x.begin(), proj_sol.x.begin() + dim);
    evaluate(next);
  }
  if (params.prefer_flat && res.found_feasible) {
    const double floor = res.best_value - params.tol * std::max(1.0, std::fabs(res.best_value));
    auto norm1 = [](const std::vector<double>& p) {
      double s = 0.0;
      for (double v : p) s += std::fabs(v);
      return s;
    };
    size_t pick = bundle.size();
    double pick_norm = 0.0;
    for (size_t j = 0; j < bundle.size(); ++j) {
      if (bundle[j].value < floor) continue;
      const double n1 = norm1(bundle[j].point);
      if (pick == bundle.size() || n1 < pick_norm) {
        pick = j;
        pick_norm = n1;
      }
    }
    if (pick < bundle.size()) {
      res.best_point = bundle[pick].point;
      res.best_value = bundle[pick].value;
      res.best_eval.value = bundle[pick].value;
      res.best_eval.supergradient = bundle[pick].grad;
    }
  }
  return res;
}

}  // namespace rnc::dual
