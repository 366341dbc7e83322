// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>

#include "rnc/cuts/cut.hpp"
#include "rnc/dual/lagrangian.hpp"
#include "rnc/oracle/value_table.hpp"

namespace rnc::oracle {

struct Certificate {
  enum class Kind { Valid, Invalid, Tight, NotTight, Pareto, Dominated, Skipped };
  Kind kind = Kind::Skipped;
  std::vector<double> witness;  // violating point, or dominating-cut data
  double margin = 0.0;          // violation / tightness gap / domination LP optimum
  std::string detail;
};

const char* to_string(Certificate::Kind kind);

struct CertificateBundle {
  Certificate validity;
  Certificate tightness;
  Certificate pareto;
};

struct CheckOptions {
  double valid_tol = 1e-6;
  double tight_tol = 1e-4;
  double pareto_tol = 1e-6;
  int max_refinements = 20;  // exact-Lagrangian refinements of the domination LP
};

/// Exact L^R(pi+, pi-) together with the minimizing state.
struct LagrangianProbeResult {
  double value;
  std::vector<double> minimizer;
};
using LagrangianProbe = std::function<LagrangianProbeResult(const std::vector<double>& pi_plus,
                                                            const std::vector<double>& pi_minus)>;

/// Certifies validity (h <= table everywhere on the grid), tightness at the
/// anchor, and Pareto-optimality via the domination LP over the grid. When a
/// probe is supplied, candidate dominators whose intercept exceeds the true
/// Lagrangian value are cut off by refining the attainability rows.
CertificateBundle check_cut(const cuts::Cut& cut, const ValueTable& table,
                            const std::vector<double>& xhat, double theta_hat,
                            const CheckOptions& options = {},
                            const LagrangianProbe& probe = nullptr,
                            const milp::SolverBackend& backend = milp::default_backend());

/// LP search for a valid cut maximizing the grid sum subject to
/// h(xhat) <= table(xhat) - margin; the Example-1 witness generator.
struct CutSearchResult {
  cuts::ReluCut cut;
  double grid_sum = 0.0;
  bool found = false;
};
CutSearchResult find_capped_cut(const ValueTable& table, const std::vector<double>& xhat,
                                double cap_margin,
                                const milp::SolverBackend& backend = milp::default_backend());

class TooLarge : public std::runtime_error {
 public:
  explicit TooLarge(const std::string& what) : std::runtime_error(what) {}
};

struct ExtensiveResult {
  milp::SolveStatus status = milp::SolveStatus::Infeasible;
  double optimum = 0.0;
  std::vector<double> first_stage;
  long nodes = 0;
};

/// Deterministic-equivalent MILP over the whole tree; guardrail 2000 columns.
ExtensiveResult solve_extensive_form(const stoch::Instance& instance,
                                     const milp::SolverBackend& backend =
                                         milp::default_backend());

/// |L^R - L^O| where L^O is evaluated on an independently assembled lifted
/// model (explicit w+/w-/r columns, substituted state).
double prop1_discrepancy(const stoch::Instance& instance, int node, const cuts::CutPool& pool,
                         const std::vector<double>& xhat, const dual::DualPoint& p,
                         const milp::SolverBackend& backend = milp::default_backend());

}  // namespace rnc::oracle
