// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#include "rnc/instances/families.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace rnc::instances {

using stoch::Instance;
using stoch::NodeProblem;
using stoch::TreeNode;
using stoch::Triplet;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Raw-engine draws; uniform_int_distribution is not reproducible across
// standard libraries.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(uint64_t seed) : eng(seed) {}
  int uniform(int lo, int hi) { return lo + static_cast<int>(eng() % (hi - lo + 1)); }
  double half(int lo, int hi) { return uniform(lo, hi) / 2.0; }
};

double max_abs_cost(const Instance& inst) {
  double m = 0.0;
  for (const auto& [id, p] : inst.problems) {
    for (double c : p.state_cost) m = std::max(m, std::fabs(c));
    for (double c : p.locals.cost) m = std::max(m, std::fabs(c));
  }
  return m;
}

// Appends a +1/-1 pair of penalized slacks to every row of every node and
// sets the recourse flag; guarantees dom(Q) is the full box.
void add_recourse_slacks(Instance& inst) {
  const double rho = 1e3 * std::max(1.0, max_abs_cost(inst));
  for (auto& [id, p] : inst.problems) {
    for (int r = 0; r < p.num_rows; ++r) {
      for (const double sign : {+1.0, -1.0}) {
        p.locals.lb.push_back(0.0);
        p.locals.ub.push_back(kInf);
        p.locals.cost.push_back(rho);
        p.locals.integral.push_back(false);
        p.Wbar.push_back({r, p.locals.size() - 1, sign});
      }
    }
  }
  inst.recourse_penalty = rho;
}

void add_leaf_nodes(Instance& inst, int scenarios) {
  inst.tree.root_id = 0;
  inst.tree.nodes.push_back(TreeNode{0, 1, -1, 1.0, {}});
  for (int s = 1; s <= scenarios; ++s)
    inst.tree.nodes.push_back(TreeNode{s, 2, 0, 1.0 / scenarios, {}});
}

}  // namespace

Instance example1(double first_stage_cost) {
  Instance inst;
  inst.name = "example1";
  add_leaf_nodes(inst, 1);

  NodeProblem root;
  root.state_dim = 1;
  root.state_bound = {3.0};
  root.state_integral = {true};
  root.state_cost = {first_stage_cost};
  inst.problems[0] = root;

  NodeProblem leaf;
  leaf.state_dim = 1;
  leaf.state_bound = {3.0};
  leaf.state_integral = {true};
  leaf.state_cost = {1.0};
  leaf.locals.lb = {0.0};
  leaf.locals.ub = {4.5};
  leaf.locals.cost = {0.0};
  leaf.locals.integral = {false};
  // 1.5 x - s = z  <=>  1.5 x >= z
  leaf.T = {{0, 0, -1.0}};
  leaf.W = {{0, 0, 1.5}};
  leaf.Wbar = {{0, 0, -1.0}};
  leaf.rhs = {0.0};
  leaf.num_rows = 1;
  inst.problems[1] = leaf;

  inst.x0 = {0.0};
  stoch::finalize_instance(inst);
  return inst;
}

Instance gen_random_two_stage(uint64_t seed, int d, int scenarios, double frac_integer) {
  if (d < 1 || d > 3) throw ParameterOutOfRange("gen_random_two_stage: d must be in [1,3]");
  if (scenarios < 1 || scenarios > 10)
    throw ParameterOutOfRange("gen_random_two_stage: scenarios must be in [1,10]");
  if (frac_integer < 0 || frac_integer > 1)
    throw ParameterOutOfRange("gen_random_two_stage: frac_integer must be in [0,1]");

  Rng rng(seed * 2654435761u + 17);
  Instance inst;
  inst.name = "rand2s_d" + std::to_string(d) + "_n" + std::to_string(scenarios) + "_s" +
              std::to_string(seed);
  add_leaf_nodes(inst, scenarios);

  const int n_int = static_cast<int>(std::ceil(frac_integer * d - 1e-12));
  NodeProblem root;
  root.state_dim = d;
  for (int k = 0; k < d; ++k) {
    root.state_bound.push_back(rng.uniform(2, 4));
    root.state_integral.push_back(k < n_int);
    root.state_cost.push_back(rng.half(-4, 4));
  }
  // cap total first-stage activity so the box is not the whole story
  {
    double cap = 0;
    for (double b : root.state_bound) cap += b;
    root.locals.lb = {0.0};
    root.locals.ub = {kInf};
    root.locals.cost = {0.0};
    root.locals.integral = {false};
    for (int k = 0; k < d; ++k) root.W.push_back({0, k, 1.0});
    root.Wbar.push_back({0, 0, 1.0});
    root.rhs = {0.75 * cap};
    root.num_rows = 1;
  }
  inst.problems[0] = root;

  for (int s = 1; s <= scenarios; ++s) {
    NodeProblem leaf;
    leaf.state_dim = 1;
    leaf.state_bound = {static_cast<double>(rng.uniform(2, 4))};
    leaf.state_integral = {rng.uniform(0, 1) == 1};
    leaf.state_cost = {rng.half(1, 4)};
    const int nloc = rng.uniform(1, 2);
    for (int j = 0; j < nloc; ++j) {
      leaf.locals.lb.push_back(0.0);
      leaf.locals.ub.push_back(rng.uniform(2, 3));
      leaf.locals.cost.push_back(rng.half(-2, 4));
      leaf.locals.integral.push_back(rng.uniform(0, 1) == 1);
    }
    const int nrows = rng.uniform(1, 2);
    for (int r = 0; r < nrows; ++r) {
      for (int k = 0; k < d; ++k) {
        const int c = rng.uniform(-2, 2);
        if (c != 0) leaf.T.push_back({r, k, static_cast<double>(c)});
      }
      const int cw = rng.uniform(1, 3);
      leaf.W.push_back({r, 0, static_cast<double>(cw)});
      for (int j = 0; j < nloc; ++j) {
        const int c = rng.uniform(-2, 2);
        if (c != 0) leaf.Wbar.push_back({r, j, static_cast<double>(c)});
      }
      leaf.rhs.push_back(rng.uniform(-2, 6));
    }
    leaf.num_rows = nrows;
    inst.problems[s] = leaf;
  }

  add_recourse_slacks(inst);
  inst.x0.assign(static_cast<size_t>(d), 0.0);
  stoch::finalize_instance(inst);
  return inst;
}

Instance gen_dcap_like(int I, int J, int N, int S, uint64_t seed) {
  if (I < 2 || I > 4) throw ParameterOutOfRange("gen_dcap_like: I must be in [2,4]");
  if (J < 2 || J > 5) throw ParameterOutOfRange("gen_dcap_like: J must be in [2,5]");
  if (N < 2 || N > 100) throw ParameterOutOfRange("gen_dcap_like: N must be in [2,100]");
  if (S < 2 || S > 6) throw ParameterOutOfRange("gen_dcap_like: S must be in [2,6]");

  Rng rng(seed * 0x9e3779b97f4a7c15ull + 3);
  Instance inst;
  inst.name = "dcap_" + std::to_string(I) + "_" + std::to_string(J) + "_" + std::to_string(N) +
              "_" + std::to_string(S) + "_s" + std::to_string(seed);
  add_leaf_nodes(inst, N);

  const int periods = S - 1;
  // first stage: bounded capacity per resource, linear expansion cost
  NodeProblem root;
  root.state_dim = I;
  for (int i = 0; i < I; ++i) {
    root.state_bound.push_back(rng.uniform(3, 5));
    root.state_integral.push_back(false);
    root.state_cost.push_back(rng.uniform(1, 3));
  }
  root.num_rows = 0;
  inst.problems[0] = root;

  const int unmet_penalty = 4 + 2 * periods;
  for (int s = 1; s <= N; ++s) {
    NodeProblem leaf;
    // own state: total unmet-task count, integer
    leaf.state_dim = 1;
    leaf.state_bound = {static_cast<double>(J * periods)};
    leaf.state_integral = {true};
    leaf.state_cost = {static_cast<double>(unmet_penalty)};

    const int tasks = J * periods;
    auto assign_col = [&](int i, int jt) { return i * tasks + jt; };
    const int n_assign = I * tasks;
    for (int v = 0; v < n_assign; ++v) {
      leaf.locals.lb.push_back(0.0);
      leaf.locals.ub.push_back(1.0);
      leaf.locals.cost.push_back(rng.uniform(1, 4));
      leaf.locals.integral.push_back(true);
    }
    const int first_unmet = n_assign;
    for (int jt = 0; jt < tasks; ++jt) {
      leaf.locals.lb.push_back(0.0);
      leaf.locals.ub.push_back(1.0);
      leaf.locals.cost.push_back(0.0);
      leaf.locals.integral.push_back(true);
    }
    const int first_use_slack = first_unmet + tasks;
    for (int i = 0; i < I; ++i) {
      leaf.locals.lb.push_back(0.0);
      leaf.locals.ub.push_back(kInf);
      leaf.locals.cost.push_back(0.0);
      leaf.locals.integral.push_back(false);
    }
    int row = 0;
    // every task assigned or declared unmet
    for (int jt = 0; jt < tasks; ++jt) {
      for (int i = 0; i < I; ++i) leaf.Wbar.push_back({row, assign_col(i, jt), 1.0});
      leaf.Wbar.push_back({row, first_unmet + jt, 1.0});
      leaf.rhs.push_back(1.0);
      ++row;
    }
    // resource usage bounded by inherited capacity
    for (int i = 0; i < I; ++i) {
      for (int jt = 0; jt < tasks; ++jt)
        leaf.Wbar.push_back({row, assign_col(i, jt), static_cast<double>(rng.uniform(1, 3))});
      leaf.Wbar.push_back({row, first_use_slack + i, 1.0});
      leaf.T.push_back({row, i, -1.0});
      leaf.rhs.push_back(0.0);
      ++row;
    }
    // own state counts unmet tasks
    for (int jt = 0; jt < tasks; ++jt) leaf.Wbar.push_back({row, first_unmet + jt, 1.0});
    leaf.W.push_back({row, 0, -1.0});
    leaf.rhs.push_back(0.0);
    ++row;
    leaf.num_rows = row;
    inst.problems[s] = leaf;
  }

  add_recourse_slacks(inst);
  inst.x0.assign(static_cast<size_t>(I), 0.0);
  stoch::finalize_instance(inst);
  return inst;
}

Instance gen_clsp_like(int P, int N, uint64_t seed) {
  if (P < 3 || P > 20) throw ParameterOutOfRange("gen_clsp_like: P must be in [3,20]");
  if (N < 2 || N > 100) throw ParameterOutOfRange("gen_clsp_like: N must be in [2,100]");

  Rng rng(seed * 0xd1342543de82ef95ull + 11);
  Instance inst;
  inst.name = "clsp_" + std::to_string(P) + "_" + std::to_string(N) + "_s" + std::to_string(seed);
  add_leaf_nodes(inst, N);

  const double prod_cap = 4.0;
  const double capacity = 2.0 * P;
  // first stage: produce into inventory under setups and shared capacity
  NodeProblem root;
  root.state_dim = P;
  for (int p = 0; p < P; ++p) {
    root.state_bound.push_back(5.0);
    root.state_integral.push_back(false);
    root.state_cost.push_back(rng.half(1, 2));  // holding
  }
  // locals: setup binaries then production
  for (int p = 0; p < P; ++p) {
    root.locals.lb.push_back(0.0);
    root.locals.ub.push_back(1.0);
    root.locals.cost.push_back(rng.uniform(2, 5));
    root.locals.integral.push_back(true);
  }
  for (int p = 0; p < P; ++p) {
    root.locals.lb.push_back(0.0);
    root.locals.ub.push_back(prod_cap);
    root.locals.cost.push_back(rng.uniform(1, 2));
    root.locals.integral.push_back(false);
  }
  int row = 0;
  for (int p = 0; p < P; ++p) {  // inventory = production
    root.W.push_back({row, p, 1.0});
    root.Wbar.push_back({row, P + p, -1.0});
    root.rhs.push_back(0.0);
    ++row;
  }
  for (int p = 0; p < P; ++p) {  // production needs its setup
    root.Wbar.push_back({row, P + p, 1.0});
    root.Wbar.push_back({row, p, -prod_cap});
    root.locals.lb.push_back(0.0);
    root.locals.ub.push_back(kInf);
    root.locals.cost.push_back(0.0);
    root.locals.integral.push_back(false);
    root.Wbar.push_back({row, 2 * P + p, 1.0});
    root.rhs.push_back(0.0);
    ++row;
  }
  {  // shared capacity
    for (int p = 0; p < P; ++p) root.Wbar.push_back({row, P + p, 1.0});
    root.locals.lb.push_back(0.0);
    root.locals.ub.push_back(kInf);
    root.locals.cost.push_back(0.0);
    root.locals.integral.push_back(false);
    root.Wbar.push_back({row, 3 * P, 1.0});
    root.rhs.push_back(capacity);
    ++row;
  }
  root.num_rows = row;
  inst.problems[0] = root;

  for (int s = 1; s <= N; ++s) {
    NodeProblem leaf;
    leaf.state_dim = P;  // leftover inventory
    for (int p = 0; p < P; ++p) {
      leaf.state_bound.push_back(8.0);
      leaf.state_integral.push_back(false);
      leaf.state_cost.push_back(0.0);
    }
    // locals per product: sale, unmet, setup, production
    auto sale = [&](int p) { return 4 * p; };
    auto unmet = [&](int p) { return 4 * p + 1; };
    auto setup = [&](int p) { return 4 * p + 2; };
    auto prod = [&](int p) { return 4 * p + 3; };
    std::vector<double> demand(P);
    for (int p = 0; p < P; ++p) demand[p] = rng.uniform(1, 4);
    for (int p = 0; p < P; ++p) {
      leaf.locals.lb.insert(leaf.locals.lb.end(), {0.0, 0.0, 0.0, 0.0});
      leaf.locals.ub.insert(leaf.locals.ub.end(), {demand[p], demand[p], 1.0, prod_cap});
      leaf.locals.cost.insert(leaf.locals.cost.end(),
                              {static_cast<double>(-rng.uniform(4, 6)),
                               static_cast<double>(rng.uniform(3, 6)),
                               static_cast<double>(rng.uniform(2, 5)),
                               static_cast<double>(rng.uniform(1, 2))});
      leaf.locals.integral.insert(leaf.locals.integral.end(), {false, false, true, false});
    }
    int lrow = 0;
    for (int p = 0; p < P; ++p) {  // sale + unmet = demand
      leaf.Wbar.push_back({lrow, sale(p), 1.0});
      leaf.Wbar.push_back({lrow, unmet(p), 1.0});
      leaf.rhs.push_back(demand[p]);
      ++lrow;
    }
    for (int p = 0; p < P; ++p) {  // leftover = inherited + production - sale
      leaf.W.push_back({lrow, p, 1.0});
      leaf.T.push_back({lrow, p, -1.0});
      leaf.Wbar.push_back({lrow, prod(p), -1.0});
      leaf.Wbar.push_back({lrow, sale(p), 1.0});
      leaf.rhs.push_back(0.0);
      ++lrow;
    }
    for (int p = 0; p < P; ++p) {  // production needs its setup
      leaf.Wbar.push_back({lrow, prod(p), 1.0});
      leaf.Wbar.push_back({lrow, setup(p), -prod_cap});
      leaf.locals.lb.push_back(0.0);
      leaf.locals.ub.push_back(kInf);
      leaf.locals.cost.push_back(0.0);
      leaf.locals.integral.push_back(false);
      leaf.Wbar.push_back({lrow, 4 * P + p, 1.0});
      leaf.rhs.push_back(0.0);
      ++lrow;
    }
    {  // shared capacity
      for (int p = 0; p < P; ++p) leaf.Wbar.push_back({lrow, prod(p), 1.0});
      leaf.locals.lb.push_back(0.0);
      leaf.locals.ub.push_back(kInf);
      leaf.locals.cost.push_back(0.0);
      leaf.locals.integral.push_back(false);
      leaf.Wbar.push_back({lrow, 5 * P, 1.0});
      leaf.rhs.push_back(capacity);
      ++lrow;
    }
    leaf.num_rows = lrow;
    inst.problems[s] = leaf;
  }

  add_recourse_slacks(inst);
  inst.x0.assign(static_cast<size_t>(P), 0.0);
  stoch::finalize_instance(inst);
  return inst;
}

}  // namespace instances
