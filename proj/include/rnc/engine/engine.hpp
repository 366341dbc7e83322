// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <map>
#include <optional>

#include "rnc/cuts/pool.hpp"
#include "rnc/dual/generators.hpp"
#include "rnc/milp/solver.hpp"
#include "rnc/stoch/instance.hpp"

namespace rnc::engine {

enum class Method { Benders, Relu, Norm, Reg };

std::optional<Method> parse_method(const std::string& name);
const char* to_string(Method method);

struct EngineConfig {
  Method method = Method::Norm;
  bool alternating = false;
  double gap_tol = 1e-3;  // relative; 1e-3 is the 0.1% target
  int max_iterations = 5000;
  double time_limit_s = 3600.0;
  int stall_window = 10;
  double stall_eps = 1e-9;
  dual::BundleParams bundle;
  // masters stop at this relative gap; the reported LB is the solver bound,
  // which stays valid regardless
  double master_gap = 1e-4;
  double dual_box_bound = 1e4;
  double reg_epsilon = 1e-2;
  double reg_bound_factor = 10.0;
  bool norm_tighten = false;
  double benders_violation_tol = 1e-6;
  uint64_t seed = 0;   // recorded in logs; the loop itself is deterministic
  int threads = 1;     // backward-pass and upper-bound workers
  bool verbose = false;
  std::ostream* trace = nullptr;
};

struct IterationRow {
  int iter = 0;
  double time_s = 0.0;
  double ub = 0.0;
  double lb = 0.0;
  double gap_pct = 0.0;
  double d_iter_avg = 0.0;
  double prop_relu = 0.0;
};

inline constexpr const char* kCsvHeader = "iter,time_s,ub,lb,gap_pct,d_iter_avg,prop_relu";

enum class StopReason { Converged, IterationLimit, TimeLimit, Stalled };
const char* to_string(StopReason reason);

struct IncumbentState {
  std::map<int, std::vector<double>> state;      // node id -> own state
  std::map<int, std::vector<double>> inherited;  // node id -> ancestor state used
  std::map<int, double> theta;                   // child id -> epigraph estimate
  std::vector<double> first_stage;
};

struct RunResult {
  StopReason reason = StopReason::IterationLimit;
  double ub = 0.0;
  double lb = 0.0;
  double gap_pct = 0.0;
  std::vector<double> first_stage;  // incumbent of the best upper bound
  std::vector<IterationRow> log;
  cuts::CutPool pool;
  long cuts_added = 0;
  long relu_cuts_added = 0;
  long generations = 0;            // cut-generation attempts over all passes
  double bundle_iterations = 0;    // dual iterations summed over all passes
};

RunResult run(const stoch::Instance& instance, const EngineConfig& config,
              const milp::SolverBackend& backend = milp::default_backend());

/// Exact cost of the incumbent policy: interior nodes keep their states and
/// re-optimize locals, leaves re-solve fully at the inherited state.
double compute_upper_bound(const stoch::Instance& instance, const IncumbentState& incumbent,
                           const milp::SolverBackend& backend = milp::default_backend(),
                           int threads = 1);

struct ForwardResult {
  double root_objective = 0.0;
  IncumbentState incumbent;
};

ForwardResult forward_pass(const stoch::Instance& instance, const cuts::CutPool& pool,
                           const milp::SolverBackend& backend = milp::default_backend(),
                           double master_gap = -1.0);

struct BackwardStats {
  long cuts_added = 0;
  long relu_cuts = 0;       // added cuts from the ReLU family
  long generations = 0;     // cut generation attempts this pass
  double bundle_iterations = 0;
};

BackwardStats backward_pass(const stoch::Instance& instance, cuts::CutPool& pool,
                            const IncumbentState& incumbent, const EngineConfig& config,
                            int iteration, std::map<int, dual::DualPoint>& warm_starts,
                            const milp::SolverBackend& backend = milp::default_backend());

void write_csv(const std::vector<IterationRow>& log, const std::string& path);

}  // namespace rnc::engine
