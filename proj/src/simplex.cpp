// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#include "rnc/milp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rnc::milp {

void validate_model(const LinearModel& model) {
  const int n = model.num_vars;
  if (static_cast<int>(model.lower.size()) != n || static_cast<int>(model.upper.size()) != n ||
      static_cast<int>(model.objective.size()) != n ||
      static_cast<int>(model.integral.size()) != n ||
      static_cast<int>(model.branch_priority.size()) != n) {
    throw MalformedModel("variable arrays out of sync with num_vars");
  }
  for (int j = 0; j < n; ++j) {
    if (std::isnan(model.lower[j]) || std::isnan(model.upper[j])) {
      throw MalformedModel("NaN bound on variable " + std::to_string(j));
    }
    if (model.lower[j] > model.upper[j]) {
      std::ostringstream os;
      os << "variable " << j << " has lower " << model.lower[j] << " > upper " << model.upper[j];
      throw MalformedModel(os.str());
    }
    if (!std::isfinite(model.objective[j])) {
      throw MalformedModel("non-finite objective coefficient on variable " + std::to_string(j));
    }
  }
  for (size_t i = 0; i < model.rows.size(); ++i) {
    const Row& row = model.rows[i];
    if (!std::isfinite(row.rhs)) {
      throw MalformedModel("non-finite rhs on row " + std::to_string(i));
    }
    for (const RowEntry& e : row.entries) {
      if (e.column < 0 || e.column >= n) {
        throw MalformedModel("row " + std::to_string(i) + " references unknown variable " +
                             std::to_string(e.column));
      }
      if (!std::isfinite(e.value)) {
        throw MalformedModel("non-finite coefficient in row " + std::to_string(i));
      }
    }
  }
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::Unbounded: return "Unbounded";
    case SolveStatus::LimitReached: return "LimitReached";
  }
  return "?";
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kZeroTol = 1e-11;

enum class VarState { Basic, AtLower, AtUpper, FreeZero };

// Dense working tableau over structural + slack + artificial columns.
struct Tableau {
  int m = 0;       // rows
  int n = 0;       // structural columns (model vars)
  int ns = 0;      // structural + slack
  int total = 0;   // + artificials
  std::vector<double> cols;    // column-major, m * total
  std::vector<double> lower, upper, cost;
  std::vector<double> b;
  std::vector<int> basic;              // row -> column
  std::vector<VarState> state;         // column -> state
  std::vector<double> value;           // column -> current value (nonbasic at bound)
  std::vector<double> binv;            // m*m row-major inverse of basis
  std::vector<double> xb;              // basic values, row order

  double* col(int j) { return cols.data() + static_cast<size_t>(j) * m; }
  const double* col(int j) const { return cols.data() + static_cast<size_t>(j) * m; }
};

void compute_basic_values(Tableau& t) {
  // xb = Binv * (b - sum_{nonbasic j} A_j * value_j)
  std::vector<double> rhs = t.b;
  for (int j = 0; j < t.total; ++j) {
    if (t.state[j] == VarState::Basic || t.value[j] == 0.0) continue;
    const double* a = t.col(j);
    const double v = t.value[j];
    for (int i = 0; i < t.m; ++i) rhs[i] -= a[i] * v;
  }
  for (int i = 0; i < t.m; ++i) {
    double s = 0.0;
    const double* row = t.binv.data() + static_cast<size_t>(i) * t.m;
    for (int k = 0; k < t.m; ++k) s += row[k] * rhs[k];
    t.xb[i] = s;
  }
}

// Rebuild binv from scratch by Gauss-Jordan on the basis matrix.
// Returns false if the basis is singular.
bool refactorize(Tableau& t) {
  const int m = t.m;
  std::vector<double> work(static_cast<size_t>(m) * 2 * m, 0.0);
  auto at = [&](int i, int j) -> double& { return work[static_cast<size_t>(i) * 2 * m + j]; };
  for (int i = 0; i < m; ++i) {
    const double* a = t.col(t.basic[i]);
    for (int r = 0; r < m; ++r) at(r, i) = a[r];
    at(i, m + i) = 1.0;
  }
  for (int c = 0; c < m; ++c) {
    int piv = -1;
    double best = 1e-12;
    for (int r = c; r < m; ++r) {
      if (std::fabs(at(r, c)) > best) { best = std::fabs(at(r, c)); piv = r; }
    }
    if (piv < 0) return false;
    if (piv != c) {
      for (int j = 0; j < 2 * m; ++j) std::swap(at(piv, j), at(c, j));
    }
    const double d = at(c, c);
    for (int j = 0; j < 2 * m; ++j) at(c, j) /= d;
    for (int r = 0; r < m; ++r) {
      if (r == c) continue;
      const double f = at(r, c);
      if (f == 0.0) continue;
      for (int j = 0; j < 2 * m; ++j) at(r, j) -= f * at(c, j);
    }
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) t.binv[static_cast<size_t>(i) * m + j] = at(i, m + j);
  return true;
}

struct PriceResult {
  int col = -1;
  int direction = 0;  // +1 increase, -1 decrease
  double dj = 0.0;
};

// y = c_B * Binv
void compute_duals(const Tableau& t, std::vector<double>& y) {
  y.assign(t.m, 0.0);
  for (int i = 0; i < t.m; ++i) {
    const double cb = t.cost[t.basic[i]];
    if (cb == 0.0) continue;
    const double* row = t.binv.data() + static_cast<size_t>(i) * t.m;
    for (int k = 0; k < t.m; ++k) y[k] += cb * row[k];
  }
}

double reduced_cost(const Tableau& t, const std::vector<double>& y, int j) {
  const double* a = t.col(j);
  double s = t.cost[j];
  for (int i = 0; i < t.m; ++i) s -= y[i] * a[i];
  return s;
}

PriceResult price(const Tableau& t, const std::vector<double>& y, bool bland, double dual_tol) {
  PriceResult best;
  double best_score = dual_tol;
  for (int j = 0; j < t.total; ++j) {
    if (t.state[j] == VarState::Basic) continue;
    if (t.lower[j] == t.upper[j]) continue;  // fixed
    const double dj = reduced_cost(t, y, j);
    int dir = 0;
    double score = 0.0;
    switch (t.state[j]) {
      case VarState::AtLower:
        if (dj < -dual_tol) { dir = +1; score = -dj; }
        break;
      case VarState::AtUpper:
        if (dj > dual_tol) { dir = -1; score = dj; }
        break;
      case VarState::FreeZero:
        if (std::fabs(dj) > dual_tol) { dir = dj > 0 ? -1 : +1; score = std::fabs(dj); }
        break;
      case VarState::Basic:
        break;
    }
    if (dir == 0) continue;
    if (bland) return PriceResult{j, dir, dj};
    if (score > best_score) { best_score = score; best = PriceResult{j, dir, dj}; }
  }
  return best;
}

struct RatioResult {
  double step = kInf;
  int leaving_row = -1;   // -1: bound flip or unbounded
  bool leaving_to_upper = false;
};

RatioResult ratio_test(const Tableau& t, const std::vector<double>& w, int enter, int dir,
                       bool bland) {
  RatioResult res;
  const double range = t.upper[enter] - t.lower[enter];
  if (std::isfinite(range)) res.step = range;  // bound flip
  for (int i = 0; i < t.m; ++i) {
    const double wi = dir * w[i];
    const int bj = t.basic[i];
    if (wi > kPivotTol) {
      if (t.lower[bj] == -kInf) continue;
      const double step = (t.xb[i] - t.lower[bj]) / wi;
      if (step < res.step - kZeroTol ||
          (step < res.step + kZeroTol &&
           (res.leaving_row < 0 ||
            (bland ? bj < t.basic[res.leaving_row]
                   : std::fabs(wi) > std::fabs(dir * w[res.leaving_row]))))) {
        res.step = std::max(step, 0.0);
        res.leaving_row = i;
        res.leaving_to_upper = false;
      }
    } else if (wi < -kPivotTol) {
      if (t.upper[bj] == kInf) continue;
      const double step = (t.upper[bj] - t.xb[i]) / (-wi);
      if (step < res.step - kZeroTol ||
          (step < res.step + kZeroTol &&
           (res.leaving_row < 0 ||
            (bland ? bj < t.basic[res.leaving_row]
                   : std::fabs(wi) > std::fabs(dir * w[res.leaving_row]))))) {
        res.step = std::max(step, 0.0);
        res.leaving_row = i;
        res.leaving_to_upper = true;
      }
    }
  }
  return res;
}

// Primal simplex on the current (feasible) tableau. Returns Optimal or Unbounded.
SolveStatus iterate(Tableau& t, const Tolerances& tol, int max_iters, int& iters) {
  const double dual_tol = 1e-9;
  std::vector<double> y, w(t.m);
  int degenerate_run = 0;
  bool bland = false;
  const int bland_trigger = 10 * std::max(t.m, 1);
  int since_refactor = 0;
  for (; iters < max_iters; ++iters) {
    compute_duals(t, y);
    const PriceResult pr = price(t, y, bland, dual_tol);
    if (pr.col < 0) return SolveStatus::Optimal;
    // w = Binv * A_enter
    const double* a = t.col(pr.col);
    for (int i = 0; i < t.m; ++i) {
      double s = 0.0;
      const double* row = t.binv.data() + static_cast<size_t>(i) * t.m;
      for (int k = 0; k < t.m; ++k) s += row[k] * a[k];
      w[i] = s;
    }
    const RatioResult rr = ratio_test(t, w, pr.col, pr.direction, bland);
    if (!std::isfinite(rr.step)) return SolveStatus::Unbounded;
    degenerate_run = (rr.step <= kZeroTol) ? degenerate_run + 1 : 0;
    if (degenerate_run > bland_trigger) bland = true;
    if (degenerate_run == 0 && bland) bland = false;

    const double step = rr.step;
    if (rr.leaving_row < 0) {
      // entering variable flips to its opposite bound
      t.value[pr.col] = pr.direction > 0 ? t.upper[pr.col] : t.lower[pr.col];
      t.state[pr.col] = pr.direction > 0 ? VarState::AtUpper : VarState::AtLower;
      compute_basic_values(t);
      continue;
    }
    // update basic values and swap basis
    for (int i = 0; i < t.m; ++i) t.xb[i] -= step * pr.direction * w[i];
    const int leave_col = t.basic[rr.leaving_row];
    t.state[leave_col] = rr.leaving_to_upper ? VarState::AtUpper : VarState::AtLower;
    t.value[leave_col] = rr.leaving_to_upper ? t.upper[leave_col] : t.lower[leave_col];
    if (t.value[leave_col] == -kInf || t.value[leave_col] == kInf) t.value[leave_col] = 0.0;

    double enter_val =
        (t.state[pr.col] == VarState::FreeZero ? 0.0 : t.value[pr.col]) + pr.direction * step;
    t.basic[rr.leaving_row] = pr.col;
    t.state[pr.col] = VarState::Basic;
    t.value[pr.col] = 0.0;
    t.xb[rr.leaving_row] = enter_val;

    // rank-one update of binv: pivot on row leaving_row
    const double piv = w[rr.leaving_row];
    double* prow = t.binv.data() + static_cast<size_t>(rr.leaving_row) * t.m;
    for (int k = 0; k < t.m; ++k) prow[k] /= piv;
    for (int i = 0; i < t.m; ++i) {
      if (i == rr.leaving_row) continue;
      const double f = w[i];
      if (f == 0.0) continue;
      double* row = t.binv.data() + static_cast<size_t>(i) * t.m;
      for (int k = 0; k < t.m; ++k) row[k] -= f * prow[k];
    }
    if (++since_refactor >= 120) {
      refactorize(t);
      compute_basic_values(t);
      since_refactor = 0;
    }
    (void)tol;
  }
  return SolveStatus::LimitReached;
}

}  // namespace

LpSolution solve_lp(const LinearModel& model, const Tolerances& tol) {
  validate_model(model);
  const int m = static_cast<int>(model.rows.size());
  const int n = model.num_vars;

  Tableau t;
  t.m = m;
  t.n = n;
  t.ns = n + m;
  t.total = n + 2 * m;  // slacks then artificials
  t.cols.assign(static_cast<size_t>(t.total) * m, 0.0);
  t.lower.resize(t.total);
  t.upper.resize(t.total);
  t.cost.assign(t.total, 0.0);
  t.b.resize(m);
  t.state.assign(t.total, VarState::AtLower);
  t.value.assign(t.total, 0.0);
  t.basic.resize(m);
  t.xb.assign(m, 0.0);
  t.binv.assign(static_cast<size_t>(m) * m, 0.0);

  for (int j = 0; j < n; ++j) {
    t.lower[j] = model.lower[j];
    t.upper[j] = model.upper[j];
  }
  for (int i = 0; i < m; ++i) {
    const Row& row = model.rows[i];
    for (const RowEntry& e : row.entries) t.col(e.column)[i] += e.value;
    t.b[i] = row.rhs;
    const int s = n + i;
    t.col(s)[i] = 1.0;
    switch (row.sense) {
      case RowSense::LessEqual: t.lower[s] = 0.0; t.upper[s] = kInf; break;
      case RowSense::Equal: t.lower[s] = 0.0; t.upper[s] = 0.0; break;
      case RowSense::GreaterEqual: t.lower[s] = -kInf; t.upper[s] = 0.0; break;
    }
  }

  // nonbasic start: closest finite bound, free variables at zero
  for (int j = 0; j < t.ns; ++j) {
    if (t.lower[j] > -kInf) {
      t.state[j] = VarState::AtLower;
      t.value[j] = t.lower[j];
    } else if (t.upper[j] < kInf) {
      t.state[j] = VarState::AtUpper;
      t.value[j] = t.upper[j];
    } else {
      t.state[j] = VarState::FreeZero;
      t.value[j] = 0.0;
    }
  }

  // artificial basis absorbing the residual
  std::vector<double> resid = t.b;
  for (int j = 0; j < t.ns; ++j) {
    if (t.value[j] == 0.0) continue;
    const double* a = t.col(j);
    for (int i = 0; i < m; ++i) resid[i] -= a[i] * t.value[j];
  }
  for (int i = 0; i < m; ++i) {
    const int a = t.ns + i;
    t.col(a)[i] = resid[i] >= 0 ? 1.0 : -1.0;
    t.lower[a] = 0.0;
    t.upper[a] = kInf;
    t.cost[a] = 1.0;
    t.basic[i] = a;
    t.state[a] = VarState::Basic;
    t.binv[static_cast<size_t>(i) * m + i] = t.col(a)[i];  // binv = B^-1 = diag(sign)
  }
  compute_basic_values(t);

  LpSolution sol;
  const int max_iters = 2000 + 200 * (m + n);

  // phase 1
  double phase1_obj = 0.0;
  for (int i = 0; i < m; ++i) phase1_obj += t.xb[i];
  if (phase1_obj > kZeroTol) {
    int iters = 0;
    const SolveStatus st = iterate(t, tol, max_iters, iters);
    sol.iterations += iters;
    if (st == SolveStatus::LimitReached) {
      sol.status = SolveStatus::LimitReached;
      return sol;
    }
    phase1_obj = 0.0;
    for (int i = 0; i < m; ++i) {
      const int bj = t.basic[i];
      if (bj >= t.ns) phase1_obj += t.xb[i];
    }
    const double scale = 1.0 + std::fabs(phase1_obj);
    if (phase1_obj > tol.feas * scale) {
      sol.status = SolveStatus::Infeasible;
      // Farkas-style certificate: phase-1 duals
      compute_duals(t, sol.row_duals);
      return sol;
    }
  }
  // fix artificials at zero so they never re-enter
  for (int j = t.ns; j < t.total; ++j) {
    t.cost[j] = 0.0;
    t.lower[j] = 0.0;
    t.upper[j] = 0.0;
    if (t.state[j] != VarState::Basic) {
      t.state[j] = VarState::AtLower;
      t.value[j] = 0.0;
    }
  }

  // phase 2
  for (int j = 0; j < n; ++j) t.cost[j] = model.objective[j];
  {
    int iters = 0;
    const SolveStatus st = iterate(t, tol, max_iters, iters);
    sol.iterations += iters;
    if (st == SolveStatus::Unbounded) {
      sol.status = SolveStatus::Unbounded;
      return sol;
    }
    if (st == SolveStatus::LimitReached) {
      sol.status = SolveStatus::LimitReached;
      return sol;
    }
  }

  sol.status = SolveStatus::Optimal;
  sol.x.assign(n, 0.0);
  for (int j = 0; j < n; ++j)
    if (t.state[j] != VarState::Basic) sol.x[j] = t.value[j];
  for (int i = 0; i < m; ++i)
    if (t.basic[i] < n) sol.x[t.basic[i]] = t.xb[i];
  sol.objective = 0.0;
  for (int j = 0; j < n; ++j) sol.objective += model.objective[j] * sol.x[j];
  std::vector<double> y;
  compute_duals(t, y);
  sol.row_duals = y;
  sol.reduced_costs.resize(n);
  for (int j = 0; j < n; ++j)
    sol.reduced_costs[j] = t.state[j] == VarState::Basic ? 0.0 : reduced_cost(t, y, j);
  return sol;
}

}  // namespace rnc::milp
