// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#include "rnc/dual/generators.hpp"

#include <cmath>

#include "rnc/stoch/node_model.hpp"

namespace rnc::dual {

using milp::Row;
using milp::RowSense;

namespace {

std::vector<double> concat(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

ReluDualResult solve_relu_dual(const stoch::Instance& instance, int node,
                               const cuts::CutPool& pool, const std::vector<double>& xhat,
                               bool restrict_equal, const DualSolveOptions& opts,
                               const milp::SolverBackend& backend) {
  const int d = static_cast<int>(xhat.size());
  const int dim = restrict_equal ? d : 2 * d;

  DualOracle oracle = [&](const std::vector<double>& p) {
    DualPoint dp;
    dp.pi0 = 1.0;
    if (restrict_equal) {
      dp.pi_plus.assign(p.begin(), p.end());
      dp.pi_minus = dp.pi_plus;
    } else {
      dp.pi_plus.assign(p.begin(), p.begin() + d);
      dp.pi_minus.assign(p.begin() + d, p.end());
    }
    const LagrangianEval ev = eval_lagrangian(instance, node, pool, xhat, dp, backend);
    if (ev.status != milp::SolveStatus::Optimal)
      throw OracleFailure("Lagrangian evaluation failed: " +
                          std::string(milp::to_string(ev.status)));
    OracleEval out;
    out.value = ev.value;
    if (restrict_equal) {
      out.supergradient.resize(d);
      for (int k = 0; k < d; ++k) out.supergradient[k] = ev.w_plus[k] + ev.w_minus[k];
    } else {
      out.supergradient = concat(ev.w_plus, ev.w_minus);
    }
    return out;
  };

  // a flat start: the LP-dual slopes reproduce the Benders cut in ReLU form,
  // so the first bundle support is globally strong and the returned
  // near-optimal point tends to keep that shape
  const cuts::LinearCut lp_cut = benders_cut(instance, node, pool, xhat, backend);
  std::vector<double> init(dim, 0.0);
  double slope_scale = 1.0;
  for (int k = 0; k < d; ++k) {
    slope_scale = std::max(slope_scale, std::fabs(lp_cut.slope[k]));
    if (restrict_equal) {
      init[k] = std::fabs(lp_cut.slope[k]);
    } else {
      init[k] = -lp_cut.slope[k];
      init[d + k] = lp_cut.slope[k];
    }
  }
  FeasibleRegion region;
  region.dim = dim;
  region.lower.assign(dim, -std::min(opts.box_bound, 100.0 * slope_scale));
  region.upper.assign(dim, std::min(opts.box_bound, 100.0 * slope_scale));
  if (opts.warm_start.has_value()) {
    const DualPoint& w = *opts.warm_start;
    if (restrict_equal && static_cast<int>(w.pi_plus.size()) == d) {
      init = w.pi_plus;
    } else if (!restrict_equal && static_cast<int>(w.pi_plus.size()) == d) {
      init = concat(w.pi_plus, w.pi_minus);
    }
  }
  for (int i = 0; i < dim; ++i)
    init[i] = std::clamp(init[i], region.lower[i], region.upper[i]);

  BundleParams params = opts.bundle;
  params.prefer_flat = true;
  const BundleResult br = level_bundle_max(oracle, region, init, params, backend);
  ReluDualResult out;
  out.value = br.best_value;
  out.iterations = br.iterations;
  out.point.pi0 = 1.0;
  if (restrict_equal) {
    out.point.pi_plus = br.best_point;
    out.point.pi_minus = br.best_point;
  } else {
    out.point.pi_plus.assign(br.best_point.begin(), br.best_point.begin() + d);
    out.point.pi_minus.assign(br.best_point.begin() + d, br.best_point.end());
  }
  return out;
}

NormalizedResult solve_normalized_dual(const stoch::Instance& instance, int node,
                                       const cuts::CutPool& pool, const std::vector<double>& xhat,
                                       double theta_hat, CorePoint core,
                                       const NormalizedOptions& opts,
                                       const milp::SolverBackend& backend) {
  const int d = static_cast<int>(xhat.size());
  const int dim = 2 * d + 1;  // (pi+, pi-, pi0)

  NormalizedResult out;
  out.q_at_xhat = eval_recourse(instance, node, pool, xhat, backend);

  DualOracle oracle = [&](const std::vector<double>& p) {
    DualPoint dp;
    dp.pi_plus.assign(p.begin(), p.begin() + d);
    dp.pi_minus.assign(p.begin() + d, p.begin() + 2 * d);
    dp.pi0 = std::max(p[2 * d], 0.0);
    const LagrangianEval ev = eval_lagrangian(instance, node, pool, xhat, dp, backend);
    if (ev.status != milp::SolveStatus::Optimal)
      throw OracleFailure("Lagrangian evaluation failed: " +
                          std::string(milp::to_string(ev.status)));
    OracleEval o;
    o.value = ev.value - dp.pi0 * theta_hat;
    o.supergradient = concat(ev.w_plus, ev.w_minus);
    o.supergradient.push_back(ev.recourse_value - theta_hat);
    return o;
  };

  auto solve_once = [&](const CorePoint& cp, const std::optional<DualPoint>& warm) {
    FeasibleRegion region;
    region.dim = dim;
    region.lower.assign(dim, -opts.solve.box_bound);
    region.upper.assign(dim, opts.solve.box_bound);
    region.lower[2 * d] = 0.0;
    region.upper[2 * d] = 1e6;
    Row norm_row;  // u+.pi+ + u-.pi- + u0 pi0 <= 1
    for (int k = 0; k < d; ++k) {
      if (cp.u_plus[k] != 0.0) norm_row.entries.push_back({k, cp.u_plus[k]});
      if (cp.u_minus[k] != 0.0) norm_row.entries.push_back({d + k, cp.u_minus[k]});
    }
    norm_row.entries.push_back({2 * d, cp.u0});
    norm_row.sense = RowSense::LessEqual;
    norm_row.rhs = 1.0;
    region.rows.push_back(std::move(norm_row));

    std::vector<double> init(dim, 0.0);
    if (warm.has_value() && static_cast<int>(warm->pi_plus.size()) == d) {
      init = concat(warm->pi_plus, warm->pi_minus);
      init.push_back(std::max(warm->pi0, 0.0));
      double g = cp.u0 * init[2 * d];
      for (int k = 0; k < d; ++k)
        g += cp.u_plus[k] * init[k] + cp.u_minus[k] * init[d + k];
      if (g > 1.0) {
        const double scale = 0.999 / g;  // normalization is homogeneous
        for (double& v : init) v *= scale;
      }
      for (int i = 0; i < dim; ++i)
        init[i] = std::clamp(init[i], region.lower[i], region.upper[i]);
    }
    return level_bundle_max(oracle, region, init, opts.solve.bundle, backend);
  };

  CorePoint cp = core;
  std::optional<DualPoint> warm = opts.solve.warm_start;
  BundleResult br = solve_once(cp, warm);
  int total_iters = br.iterations;
  for (int attempt = 0; attempt < opts.max_rescale && br.best_point[2 * d] <= opts.degenerate_pi0;
       ++attempt) {
    cp.u0 *= 10.0;
    br = solve_once(cp, warm);
    total_iters += br.iterations;
  }

  auto finish = [&](const BundleResult& b, const CorePoint& used) {
    out.point.pi_plus.assign(b.best_point.begin(), b.best_point.begin() + d);
    out.point.pi_minus.assign(b.best_point.begin() + d, b.best_point.begin() + 2 * d);
    out.point.pi0 = b.best_point[2 * d];
    out.value = b.best_value;
    out.bundle_gap = b.model_gap;
    out.core = used;
    out.cut.anchor = xhat;
    out.cut.pi_plus = out.point.pi_plus;
    out.cut.pi_minus = out.point.pi_minus;
    out.cut.pi0 = out.point.pi0;
    out.cut.value = b.best_value + out.point.pi0 * theta_hat;  // exact Lagrangian value
    out.cut.meta.node = node;
    out.cut.meta.generator = "norm";
    if (out.point.pi0 <= opts.degenerate_pi0) {
      // keep it as a feasibility-type cut with an exactly consistent value
      DualPoint flat;
      flat.pi_plus = out.point.pi_plus;
      flat.pi_minus = out.point.pi_minus;
      flat.pi0 = 0.0;
      const LagrangianEval ev = eval_lagrangian(instance, node, pool, xhat, flat, backend);
      out.cut.pi0 = 0.0;
      out.point.pi0 = 0.0;
      out.cut.value = ev.value;
      out.degenerate = true;
      out.tight = false;
    } else {
      out.tight = std::fabs(out.cut.value / out.cut.pi0 - out.q_at_xhat) <= opts.tight_tol;
    }
  };

  finish(br, cp);
  if (opts.tighten && !out.degenerate) {
    for (int round = 0; round < opts.max_doublings && !out.tight; ++round) {
      cp.u0 *= 2.0;
      warm = out.point;
      br = solve_once(cp, warm);
      total_iters += br.iterations;
      finish(br, cp);
    }
    if (out.tight) out.cut.meta.generator = "norm_tight";
  }
  out.iterations = total_iters;
  return out;
}

RegularizedResult solve_regularized_dual(const stoch::Instance& instance, int node,
                                         const cuts::CutPool& pool,
                                         const std::vector<double>& xhat, const CorePoint& core,
                                         const RegularizedOptions& opts,
                                         const milp::SolverBackend& backend) {
  const int d = static_cast<int>(xhat.size());
  RegularizedResult out;
  out.q_at_xhat = eval_recourse(instance, node, pool, xhat, backend);
  const double floor = out.q_at_xhat - opts.epsilon;

  DualSolveOptions lambda_opts;
  lambda_opts.bundle = opts.solve.bundle;
  lambda_opts.box_bound = opts.solve.box_bound;
  const ReluDualResult lambda =
      solve_relu_dual(instance, node, pool, xhat, /*restrict_equal=*/true, lambda_opts, backend);
  out.lambda_coefficients = lambda.point;
  out.iterations = lambda.iterations;

  const std::vector<double> u = concat(core.u_plus, core.u_minus);
  auto raw_eval = [&](const std::vector<double>& p) {
    DualPoint dp;
    dp.pi_plus.assign(p.begin(), p.begin() + d);
    dp.pi_minus.assign(p.begin() + d, p.end());
    dp.pi0 = 1.0;
    const LagrangianEval ev = eval_lagrangian(instance, node, pool, xhat, dp, backend);
    if (ev.status != milp::SolveStatus::Optimal)
      throw OracleFailure("Lagrangian evaluation failed: " +
                          std::string(milp::to_string(ev.status)));
    return ev;
  };

  // scaled Lambda start: largest s in {1, 1/2, ..., 2^-6} inside the optimal set
  std::vector<double> init;
  const std::vector<double> lambda_full = concat(lambda.point.pi_plus, lambda.point.pi_minus);
  double s = 1.0;
  for (int k = 0; k <= 6; ++k, s *= 0.5) {
    std::vector<double> cand(2 * d);
    for (int i = 0; i < 2 * d; ++i) cand[i] = s * lambda_full[i];
    if (raw_eval(cand).value >= floor - 1e-9) {
      init = std::move(cand);
      break;
    }
  }
  if (init.empty()) {
    out.feasible_found = false;
    return out;
  }
  out.feasible_found = true;

  DualOracle oracle = [&](const std::vector<double>& p) {
    const LagrangianEval ev = raw_eval(p);
    OracleEval o;
    double lin = 0.0;
    for (int i = 0; i < d; ++i)
      lin += core.u_plus[i] * p[i] + core.u_minus[i] * p[d + i];
    o.value = ev.value - lin;
    const std::vector<double> w = concat(ev.w_plus, ev.w_minus);
    o.supergradient.resize(2 * d);
    for (int i = 0; i < 2 * d; ++i) o.supergradient[i] = w[i] - u[i];
    o.feasible = ev.value >= floor - 1e-9;
    // outer approximation of { L^R(pi) >= floor }:
    //   ev.value + w.(pi - p) >= floor
    Row r;
    double rhs = floor - ev.value;
    for (int i = 0; i < 2 * d; ++i) {
      if (w[i] != 0.0) r.entries.push_back({i, w[i]});
      rhs += w[i] * p[i];
    }
    r.sense = RowSense::GreaterEqual;
    r.rhs = rhs;
    o.new_region_rows.push_back(std::move(r));
    return o;
  };

  FeasibleRegion region;
  region.dim = 2 * d;
  region.lower.resize(2 * d);
  region.upper.resize(2 * d);
  for (int i = 0; i < 2 * d; ++i) {
    const double m = opts.bound_factor * std::max(std::fabs(lambda_full[i]), 1.0);
    region.lower[i] = -m;
    region.upper[i] = m;
  }

  const BundleResult br = level_bundle_max(oracle, region, init, opts.solve.bundle, backend);
  out.iterations += br.iterations;
  if (!br.found_feasible) {
    out.feasible_found = false;
    return out;
  }
  out.point.pi_plus.assign(br.best_point.begin(), br.best_point.begin() + d);
  out.point.pi_minus.assign(br.best_point.begin() + d, br.best_point.end());
  out.point.pi0 = 1.0;
  out.value = br.best_value;
  double lin = 0.0;
  for (int i = 0; i < d; ++i)
    lin += core.u_plus[i] * br.best_point[i] + core.u_minus[i] * br.best_point[d + i];
  out.cut.anchor = xhat;
  out.cut.pi_plus = out.point.pi_plus;
  out.cut.pi_minus = out.point.pi_minus;
  out.cut.pi0 = 1.0;
  out.cut.value = br.best_value + lin;  // exact L^R at the returned multipliers
  out.cut.meta.node = node;
  out.cut.meta.generator = "reg";
  return out;
}

cuts::LinearCut benders_cut(const stoch::Instance& instance, int node, const cuts::CutPool& pool,
                            const std::vector<double>& xhat, const milp::SolverBackend& backend) {
  stoch::BuildOptions opt;
  opt.mode = stoch::BuildMode::LpRelaxed;
  opt.xhat = xhat;
  const stoch::NodeModel nm = stoch::build_node_model(instance, node, pool, opt);
  const milp::LpSolution sol = backend.solve_lp(nm.model);
  if (sol.status != milp::SolveStatus::Optimal)
    throw std::runtime_error("Benders LP solve failed at node " + std::to_string(node) + ": " +
                             milp::to_string(sol.status));
  cuts::LinearCut cut;
  cut.slope.resize(xhat.size());
  cut.intercept = sol.objective;
  for (size_t k = 0; k < xhat.size(); ++k) {
    cut.slope[k] = sol.row_duals[nm.handles.copy_rows[k]];
    cut.intercept -= cut.slope[k] * xhat[k];
  }
  cut.meta.node = node;
  cut.meta.generator = "benders";
  return cut;
}

}  // namespace rnc::dual
