// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#include "rnc/engine/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>

#include "rnc/dual/core_point.hpp"
#include "rnc/stoch/node_model.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rnc::engine {

using milp::kInf;

std::optional<Method> parse_method(const std::string& name) {
  if (name == "benders") return Method::Benders;
  if (name == "relu") return Method::Relu;
  if (name == "norm") return Method::Norm;
  if (name == "reg") return Method::Reg;
  return std::nullopt;
}

const char* to_string(Method method) {
  switch (method) {
    case Method::Benders: return "benders";
    case Method::Relu: return "relu";
    case Method::Norm: return "norm";
    case Method::Reg: return "reg";
  }
  return "?";
}

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::Converged: return "Converged";
    case StopReason::IterationLimit: return "IterationLimit";
    case StopReason::TimeLimit: return "TimeLimit";
    case StopReason::Stalled: return "Stalled";
  }
  return "?";
}

namespace {

// Snap an incumbent state into the box, rounding integral dimensions; keeps
// anchors rational and pinned resolves feasible.
std::vector<double> snap_state(const std::vector<double>& x, const stoch::NodeProblem& prob,
                               double int_tol) {
  std::vector<double> out = x;
  for (int k = 0; k < prob.state_dim; ++k) {
    if (prob.state_integral[k] && std::fabs(out[k] - std::round(out[k])) <= int_tol)
      out[k] = std::round(out[k]);
    out[k] = std::clamp(out[k], 0.0, prob.state_bound[k]);
  }
  return out;
}

struct ChildCutResult {
  int child = -1;
  std::vector<cuts::Cut> cuts;
  bool relu_family = false;
  double bundle_iterations = 0;
  std::optional<dual::DualPoint> warm;
};

ChildCutResult generate_for_child(const stoch::Instance& instance, const cuts::CutPool& pool,
                                  int child, const std::vector<double>& xhat, double theta_hat,
                                  const EngineConfig& config, int iteration,
                                  const std::optional<dual::DualPoint>& warm,
                                  const milp::SolverBackend& backend) {
  ChildCutResult out;
  out.child = child;

  const bool benders_first = config.method == Method::Benders || config.alternating;
  if (benders_first) {
    cuts::LinearCut cut = dual::benders_cut(instance, child, pool, xhat, backend);
    cut.meta.iteration = iteration;
    const double viol = cuts::violation(cut, xhat, theta_hat);
    if (config.method == Method::Benders || viol > config.benders_violation_tol) {
      out.cuts.emplace_back(std::move(cut));
      return out;
    }
  }

  dual::DualSolveOptions solve_opts;
  solve_opts.bundle = config.bundle;
  solve_opts.box_bound = config.dual_box_bound;
  solve_opts.warm_start = warm;

  switch (config.method) {
    case Method::Relu: {
      const dual::ReluDualResult res =
          solve_relu_dual(instance, child, pool, xhat, /*restrict_equal=*/false, solve_opts,
                          backend);
      cuts::ReluCut cut;
      cut.anchor = xhat;
      cut.pi_plus = res.point.pi_plus;
      cut.pi_minus = res.point.pi_minus;
      cut.pi0 = 1.0;
      cut.value = res.value;
      cut.meta.node = child;
      cut.meta.iteration = iteration;
      cut.meta.generator = "relu";
      out.cuts.emplace_back(std::move(cut));
      out.relu_family = true;
      out.bundle_iterations = res.iterations;
      out.warm = res.point;
      break;
    }
    case Method::Norm: {
      dual::NormalizedOptions opts;
      opts.solve = solve_opts;
      opts.tighten = config.norm_tighten;
      const double q_hat = dual::eval_recourse(instance, child, pool, xhat, backend);
      const dual::CorePoint core =
          dual::core_point(xhat, instance.ancestor_bounds(child), q_hat, theta_hat);
      dual::NormalizedResult res =
          solve_normalized_dual(instance, child, pool, xhat, theta_hat, core, opts, backend);
      res.cut.meta.iteration = iteration;
      out.cuts.emplace_back(std::move(res.cut));
      out.relu_family = true;
      out.bundle_iterations = res.iterations;
      out.warm = res.point;
      break;
    }
    case Method::Reg: {
      dual::RegularizedOptions opts;
      opts.solve = solve_opts;
      opts.epsilon = config.reg_epsilon;
      opts.bound_factor = config.reg_bound_factor;
      const double q_hat = dual::eval_recourse(instance, child, pool, xhat, backend);
      const dual::CorePoint core =
          dual::core_point(xhat, instance.ancestor_bounds(child), q_hat, theta_hat);
      dual::RegularizedResult res =
          solve_regularized_dual(instance, child, pool, xhat, core, opts, backend);
      if (!res.feasible_found) {
        // no start satisfied the optimal-set constraint; fall back
        const dual::ReluDualResult fb = solve_relu_dual(instance, child, pool, xhat,
                                                        /*restrict_equal=*/false, solve_opts,
                                                        backend);
        cuts::ReluCut cut;
        cut.anchor = xhat;
        cut.pi_plus = fb.point.pi_plus;
        cut.pi_minus = fb.point.pi_minus;
        cut.pi0 = 1.0;
        cut.value = fb.value;
        cut.meta.node = child;
        cut.meta.iteration = iteration;
        cut.meta.generator = "relu_fallback";
        out.cuts.emplace_back(std::move(cut));
        out.relu_family = true;
        out.bundle_iterations = res.iterations + fb.iterations;
        out.warm = fb.point;
      } else {
        res.cut.meta.iteration = iteration;
        out.cuts.emplace_back(std::move(res.cut));
        out.relu_family = true;
        out.bundle_iterations = res.iterations;
        out.warm = res.point;
      }
      break;
    }
    case Method::Benders:
      break;  // handled above
  }
  return out;
}

struct MasterSolution {
  double objective = 0.0;
  std::vector<double> state;
  std::map<int, double> theta;
};

// Given the node state, every embedded ReLU block is forced, and the cut
// heights are affine between consecutive anchors. The master therefore splits
// exactly into one small MILP per anchor-grid cell with no cut binaries; the
// minimum over cells is the master optimum. Falls back to the plain MILP with
// embedded binaries when the anchor grid is too fine.
std::optional<MasterSolution> solve_master_by_cells(const stoch::Instance& instance, int node_id,
                                                    const cuts::CutPool& pool,
                                                    const std::vector<double>& inherited,
                                                    const milp::SolverBackend& backend) {
  const stoch::TreeNode& node = instance.tree.node(node_id);
  const stoch::NodeProblem& prob = instance.problem(node_id);
  const int d = prob.state_dim;

  std::vector<std::vector<double>> axes(d);
  for (int k = 0; k < d; ++k) axes[k] = {0.0, prob.state_bound[k]};
  for (int child : node.children) {
    for (const cuts::Cut& cut : pool.for_child(child)) {
      if (!std::holds_alternative<cuts::ReluCut>(cut)) continue;
      const auto& c = std::get<cuts::ReluCut>(cut);
      for (int k = 0; k < d; ++k)
        if (c.anchor[k] > 1e-9 && c.anchor[k] < prob.state_bound[k] - 1e-9)
          axes[k].push_back(c.anchor[k]);
    }
  }
  size_t cell_count = 1;
  for (int k = 0; k < d; ++k) {
    std::sort(axes[k].begin(), axes[k].end());
    axes[k].erase(std::unique(axes[k].begin(), axes[k].end(),
                              [](double a, double b) { return std::fabs(a - b) < 1e-9; }),
                  axes[k].end());
    cell_count *= axes[k].size() - 1;
  }
  if (cell_count > 8192) return std::nullopt;

  std::optional<MasterSolution> best;
  std::vector<size_t> cell(d, 0);
  for (size_t index = 0; index < cell_count; ++index) {
    size_t rem = index;
    for (int k = 0; k < d; ++k) {
      cell[k] = rem % (axes[k].size() - 1);
      rem /= axes[k].size() - 1;
    }

    milp::LinearModel m;
    std::vector<int> xs(d), zs(inherited.size());
    for (size_t k = 0; k < inherited.size(); ++k)
      zs[k] = m.add_variable(inherited[k], inherited[k], 0.0);
    for (int k = 0; k < d; ++k)
      xs[k] = m.add_variable(axes[k][cell[k]], axes[k][cell[k] + 1], prob.state_cost[k],
                             prob.state_integral[k]);
    std::vector<int> ys(prob.locals.size());
    for (int j = 0; j < prob.locals.size(); ++j)
      ys[j] = m.add_variable(prob.locals.lb[j], prob.locals.ub[j], prob.locals.cost[j],
                             prob.locals.integral[j]);
    std::vector<milp::Row> rows(prob.num_rows);
    for (int r = 0; r < prob.num_rows; ++r) {
      rows[r].sense = milp::RowSense::Equal;
      rows[r].rhs = prob.rhs[r];
    }
    for (const stoch::Triplet& t : prob.T) rows[t.row].entries.push_back({zs[t.col], t.value});
    for (const stoch::Triplet& t : prob.W) rows[t.row].entries.push_back({xs[t.col], t.value});
    for (const stoch::Triplet& t : prob.Wbar)
      rows[t.row].entries.push_back({ys[t.col], t.value});
    for (milp::Row& r : rows) m.add_row(std::move(r));

    std::map<int, int> theta_cols;
    for (int child : node.children) {
      const int theta =
          m.add_variable(instance.node_value_lb(child), milp::kInf,
                         instance.tree.node(child).prob);
      theta_cols[child] = theta;
      for (const cuts::Cut& cut : pool.for_child(child)) {
        if (std::holds_alternative<cuts::LinearCut>(cut)) {
          const auto& c = std::get<cuts::LinearCut>(cut);
          milp::Row row;
          for (int k = 0; k < d; ++k)
            if (c.slope[k] != 0.0) row.entries.push_back({xs[k], c.slope[k]});
          row.entries.push_back({theta, -1.0});
          row.sense = milp::RowSense::LessEqual;
          row.rhs = -c.intercept;
          m.add_row(std::move(row));
        } else {
          const auto& c = std::get<cuts::ReluCut>(cut);
          // pi0 theta >= value - sum_k side-resolved penalty, affine per cell
          milp::Row row;
          if (c.pi0 != 0.0) row.entries.push_back({theta, c.pi0});
          double rhs = c.value;
          for (int k = 0; k < d; ++k) {
            const double lo = axes[k][cell[k]];
            const bool right_of_anchor = lo >= c.anchor[k] - 1e-9;
            const double slope = right_of_anchor ? c.pi_plus[k] : -c.pi_minus[k];
            if (slope != 0.0) row.entries.push_back({xs[k], slope});
            rhs += slope * c.anchor[k];
          }
          row.sense = milp::RowSense::GreaterEqual;
          row.rhs = rhs;
          m.add_row(std::move(row));
        }
      }
    }
    const milp::MilpSolution sol = backend.solve_milp(m, {});
    if (sol.status == milp::SolveStatus::Infeasible) continue;
    if (sol.status != milp::SolveStatus::Optimal)
      throw std::runtime_error("master cell solve " + std::string(milp::to_string(sol.status)));
    if (!best.has_value() || sol.objective < best->objective - 1e-12) {
      MasterSolution ms;
      ms.objective = sol.objective;
      ms.state.resize(d);
      for (int k = 0; k < d; ++k) ms.state[k] = sol.x[xs[k]];
      for (const auto& [child, col] : theta_cols) ms.theta[child] = sol.x[col];
      best = std::move(ms);
    }
  }
  if (!best.has_value()) throw std::runtime_error("master infeasible across all cells");
  return best;
}

}  // namespace

ForwardResult forward_pass(const stoch::Instance& instance, const cuts::CutPool& pool,
                           const milp::SolverBackend& backend, double master_gap) {
  ForwardResult out;
  const milp::Tolerances tol;
  std::vector<const stoch::TreeNode*> order;
  for (const stoch::TreeNode& n : instance.tree.nodes) order.push_back(&n);
  std::sort(order.begin(), order.end(), [](const stoch::TreeNode* a, const stoch::TreeNode* b) {
    return a->stage != b->stage ? a->stage < b->stage : a->id < b->id;
  });

  for (const stoch::TreeNode* n : order) {
    if (n->children.empty() && n->ancestor >= 0) continue;  // leaves are backward-pass work
    const std::vector<double> inherited =
        n->ancestor < 0 ? instance.x0 : out.incumbent.state.at(n->ancestor);

    MasterSolution master;
    std::optional<MasterSolution> by_cells =
        solve_master_by_cells(instance, n->id, pool, inherited, backend);
    if (by_cells.has_value()) {
      master = std::move(*by_cells);
    } else {
      stoch::BuildOptions opt;
      opt.mode = stoch::BuildMode::FixedState;
      opt.xhat = inherited;
      opt.strengthen_cut_relaxations = true;
      const stoch::NodeModel nm = stoch::build_node_model(instance, n->id, pool, opt);
      milp::MilpLimits limits;
      limits.mip_gap = master_gap;
      const milp::MilpSolution sol = backend.solve_milp(nm.model, limits);
      if (sol.status != milp::SolveStatus::Optimal)
        throw std::runtime_error("forward pass: node " + std::to_string(n->id) + " solve " +
                                 milp::to_string(sol.status));
      master.objective = sol.best_bound;  // valid at any master gap
      master.state.resize(nm.handles.state.size());
      for (size_t k = 0; k < master.state.size(); ++k)
        master.state[k] = sol.x[nm.handles.state[k]];
      for (const auto& [child, col] : nm.handles.theta) master.theta[child] = sol.x[col];
    }

    out.incumbent.state[n->id] = snap_state(master.state, instance.problem(n->id),
                                            tol.integrality);
    out.incumbent.inherited[n->id] = inherited;
    for (const auto& [child, value] : master.theta) out.incumbent.theta[child] = value;
    if (n->ancestor < 0) {
      out.root_objective = master.objective;
      out.incumbent.first_stage = out.incumbent.state[n->id];
    }
  }
  // leaves inherit from their (now fixed) ancestors
  for (const stoch::TreeNode* n : order) {
    if (!(n->children.empty() && n->ancestor >= 0)) continue;
    out.incumbent.inherited[n->id] = out.incumbent.state.at(n->ancestor);
  }
  return out;
}

double compute_upper_bound(const stoch::Instance& instance, const IncumbentState& incumbent,
                           const milp::SolverBackend& backend, int threads) {
  const auto& nodes = instance.tree.nodes;
  const int n = static_cast<int>(nodes.size());
  std::vector<double> contribution(n, 0.0);
  std::exception_ptr error;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(threads, 1)) if (threads > 1)
#endif
  for (int i = 0; i < n; ++i) {
    try {
      const stoch::TreeNode& node = nodes[i];
      const std::vector<double>& inherited = incumbent.inherited.at(node.id);
      stoch::BuildOptions opt;
      opt.mode = stoch::BuildMode::FixedState;
      opt.xhat = inherited;
      opt.include_children = false;
      const std::vector<double>* pin = nullptr;
      if (!node.children.empty()) pin = &incumbent.state.at(node.id);
      opt.pin_state = pin;
      const stoch::NodeModel nm =
          stoch::build_node_model(instance, node.id, cuts::CutPool{}, opt);
      const milp::MilpSolution sol = backend.solve_milp(nm.model, {});
      if (sol.status != milp::SolveStatus::Optimal)
        throw std::runtime_error("upper bound: node " + std::to_string(node.id) + " solve " +
                                 milp::to_string(sol.status));
      contribution[i] = instance.tree.path_probability(node.id) * sol.objective;
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  double ub = 0.0;
  for (double c : contribution) ub += c;
  return ub;
}

BackwardStats backward_pass(const stoch::Instance& instance, cuts::CutPool& pool,
                            const IncumbentState& incumbent, const EngineConfig& config,
                            int iteration, std::map<int, dual::DualPoint>& warm_starts,
                            const milp::SolverBackend& backend) {
  BackwardStats stats;
  std::vector<const stoch::TreeNode*> parents;
  for (const stoch::TreeNode& n : instance.tree.nodes)
    if (!n.children.empty()) parents.push_back(&n);
  std::sort(parents.begin(), parents.end(),
            [](const stoch::TreeNode* a, const stoch::TreeNode* b) {
              return a->stage != b->stage ? a->stage > b->stage : a->id < b->id;
            });

  for (const stoch::TreeNode* parent : parents) {
    const std::vector<double>& xhat = incumbent.state.at(parent->id);
    const std::vector<int>& children = parent->children;
    const int nc = static_cast<int>(children.size());
    std::vector<ChildCutResult> results(nc);
    std::exception_ptr error;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(std::max(config.threads, 1)) \
    if (config.threads > 1)
#endif
    for (int i = 0; i < nc; ++i) {
      try {
        const int child = children[i];
        const double theta_hat =
            incumbent.theta.count(child) ? incumbent.theta.at(child) : -kInf;
        std::optional<dual::DualPoint> warm;
        if (auto it = warm_starts.find(child); it != warm_starts.end()) warm = it->second;
        results[i] = generate_for_child(instance, pool, child, xhat, theta_hat, config,
                                        iteration, warm, backend);
      } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);

    for (ChildCutResult& r : results) {  // deterministic merge in child order
      ++stats.generations;
      stats.bundle_iterations += r.bundle_iterations;
      for (cuts::Cut& cut : r.cuts) {
        const bool added = pool.append(r.child, std::move(cut));
        if (added) {
          ++stats.cuts_added;
          if (r.relu_family) ++stats.relu_cuts;
        }
      }
      if (r.warm.has_value()) warm_starts[r.child] = *r.warm;
    }
  }
  return stats;
}

RunResult run(const stoch::Instance& instance, const EngineConfig& config,
              const milp::SolverBackend& backend) {
  const auto t_start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  };

  RunResult res;
  res.lb = -kInf;
  res.ub = kInf;
  std::map<int, dual::DualPoint> warm_starts;
  long total_cuts = 0, total_relu = 0;
  int stall_count = 0;
  double prev_lb = -kInf, prev_ub = kInf;

  for (int iter = 0;; ++iter) {
    const ForwardResult fwd = forward_pass(instance, res.pool, backend, config.master_gap);
    res.lb = std::max(res.lb, fwd.root_objective);
    const double ub_candidate = compute_upper_bound(instance, fwd.incumbent, backend,
                                                    config.threads);
    if (ub_candidate < res.ub) {
      res.ub = ub_candidate;
      res.first_stage = fwd.incumbent.first_stage;
    }
    const double gap = (res.ub - res.lb) / std::max(std::fabs(res.ub), 1e-12);
    res.gap_pct = gap * 100.0;

    if (iter > 0) {
      const bool lb_flat = res.lb - prev_lb <= config.stall_eps;
      const bool ub_flat = prev_ub - res.ub <= config.stall_eps;
      stall_count = (lb_flat && ub_flat) ? stall_count + 1 : 0;
    }
    prev_lb = res.lb;
    prev_ub = res.ub;

    IterationRow row;
    row.iter = iter + 1;
    row.ub = res.ub;
    row.lb = res.lb;
    row.gap_pct = res.gap_pct;
    row.prop_relu = total_cuts > 0 ? static_cast<double>(total_relu) / total_cuts : 0.0;

    std::optional<StopReason> stop;
    if (gap < config.gap_tol || res.ub - res.lb <= config.stall_eps)
      stop = StopReason::Converged;
    else if (iter >= config.max_iterations)
      stop = StopReason::IterationLimit;
    else if (elapsed() > config.time_limit_s)
      stop = StopReason::TimeLimit;
    else if (stall_count >= config.stall_window)
      stop = StopReason::Stalled;

    if (stop.has_value()) {
      row.time_s = elapsed();
      res.log.push_back(row);
      res.reason = *stop;
      break;
    }

    const BackwardStats stats =
        backward_pass(instance, res.pool, fwd.incumbent, config, iter + 1, warm_starts, backend);
    total_cuts += stats.cuts_added;
    total_relu += stats.relu_cuts;
    res.generations += stats.generations;
    res.bundle_iterations += stats.bundle_iterations;
    row.d_iter_avg =
        stats.generations > 0 ? stats.bundle_iterations / stats.generations : 0.0;
    row.prop_relu = total_cuts > 0 ? static_cast<double>(total_relu) / total_cuts : 0.0;
    row.time_s = elapsed();
    res.log.push_back(row);
    if (config.verbose && config.trace) {
      *config.trace << "iter " << row.iter << " lb=" << row.lb << " ub=" << row.ub
                    << " gap%=" << row.gap_pct << " cuts+" << stats.cuts_added << "\n";
    }
  }
  res.cuts_added = total_cuts;
  res.relu_cuts_added = total_relu;
  return res;
}

void write_csv(const std::vector<IterationRow>& log, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << kCsvHeader << "\n";
  f.precision(10);
  for (const IterationRow& r : log) {
    f << r.iter << "," << r.time_s << "," << r.ub << "," << r.lb << "," << r.gap_pct << ","
      << r.d_iter_avg << "," << r.prop_relu << "\n";
  }
}

}  // namespace rnc::engine
