// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rnc/dual/core_point.hpp"
#include "rnc/dual/generators.hpp"
#include "rnc/instances/families.hpp"

using namespace rnc;
using dual::DualPoint;

namespace {
const stoch::Instance& ex1() {
  static const stoch::Instance inst = instances::example1();
  return inst;
}
const cuts::CutPool kEmptyPool;

DualPoint make_point(double pip, double pim, double pi0 = 1.0) {
  DualPoint p;
  p.pi_plus = {pip};
  p.pi_minus = {pim};
  p.pi0 = pi0;
  return p;
}

dual::BundleParams tight_bundle() {
  dual::BundleParams b;
  b.tol = 1e-9;
  b.max_iters = 600;
  return b;
}
}  // namespace

TEST_CASE("Lagrangian values on the scalar leaf") {
  CHECK(dual::eval_lagrangian(ex1(), 1, kEmptyPool, {1.0}, make_point(0, 0)).value ==
        doctest::Approx(0.0));
  CHECK(dual::eval_lagrangian(ex1(), 1, kEmptyPool, {1.0}, make_point(1, 1)).value ==
        doctest::Approx(1.0));
  CHECK(dual::eval_lagrangian(ex1(), 1, kEmptyPool, {1.0}, make_point(0, 0, 0.0)).value ==
        doctest::Approx(0.0));
}

TEST_CASE("Lagrangian eval is internally consistent and lifted") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const double pip = (rng() % 2000) / 200.0 - 5.0;
    const double pim = (rng() % 2000) / 200.0 - 5.0;
    const double pi0 = (rng() % 4 == 0) ? 0.0 : (rng() % 1000) / 500.0;
    const double xhat = (rng() % 3001) / 1000.0;
    const dual::LagrangianEval ev =
        dual::eval_lagrangian(ex1(), 1, kEmptyPool, {xhat}, make_point(pip, pim, pi0));
    REQUIRE(ev.status == milp::SolveStatus::Optimal);
    const double recombined =
        pip * ev.w_plus[0] + pim * ev.w_minus[0] + pi0 * ev.recourse_value;
    CHECK(std::fabs(ev.value - recombined) <= 1e-7 * std::max(1.0, std::fabs(ev.value)));
    CHECK(ev.w_plus[0] * ev.w_minus[0] <= 1e-6 * 3.0);  // complementary lift
  }
}

TEST_CASE("weak duality against the exact leaf value") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 15; ++trial) {
    const double xhat = (rng() % 3001) / 1000.0;
    const double q = dual::eval_recourse(ex1(), 1, kEmptyPool, {xhat});
    const double pip = (rng() % 2000) / 200.0 - 5.0;
    const double pim = (rng() % 2000) / 200.0 - 5.0;
    const double val =
        dual::eval_lagrangian(ex1(), 1, kEmptyPool, {xhat}, make_point(pip, pim)).value;
    CHECK(val <= q + 1e-8);
  }
}

TEST_CASE("core point recipe") {
  const dual::CorePoint a = dual::core_point({1.0}, {3.0}, 1.0, 0.1);
  CHECK(a.u_plus[0] == doctest::Approx(1.0 / 3.0));
  CHECK(a.u_minus[0] == doctest::Approx(1.0 / 3.0));
  CHECK(a.u0 == doctest::Approx(0.900001));
  CHECK(dual::relint_margin(a, {1.0}, {3.0}, 0) == doctest::Approx(0.5));

  const dual::CorePoint b = dual::core_point({0.0}, {3.0}, 0.0, 0.0);
  CHECK(b.u_plus[0] == doctest::Approx(1e-3));
  CHECK(b.u_minus[0] == 0.0);
  const dual::CorePoint c = dual::core_point({3.0}, {3.0}, 2.0, 0.0);
  CHECK(c.u_plus[0] == 0.0);
  CHECK(c.u_minus[0] == doctest::Approx(1e-3));

  const dual::CorePoint d = dual::core_point({1.0}, {2.0}, 0.0, 0.0);
  CHECK(d.u_plus[0] == doctest::Approx(0.25));
}

TEST_CASE("level bundle maximizes a concave vee") {
  const dual::DualOracle vee = [](const std::vector<double>& p) {
    dual::OracleEval ev;
    ev.value = -std::fabs(p[0] - 2.0);
    ev.supergradient = {p[0] < 2.0 ? 1.0 : -1.0};
    return ev;
  };
  dual::FeasibleRegion region;
  region.dim = 1;
  region.lower = {0.0};
  region.upper = {5.0};
  const dual::BundleResult res = dual::level_bundle_max(vee, region, {0.0});
  CHECK(res.best_point[0] == doctest::Approx(2.0).epsilon(1e-2));
  CHECK(res.best_value == doctest::Approx(0.0).epsilon(1e-2));

  dual::FeasibleRegion capped = region;
  capped.lower = {-5.0};
  capped.rows.push_back({{{0, 1.0}}, milp::RowSense::LessEqual, -1.0});
  dual::BundleParams fine;
  fine.tol = 1e-9;
  const dual::BundleResult at_corner = dual::level_bundle_max(vee, capped, {-5.0}, fine);
  CHECK(at_corner.best_point[0] == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(at_corner.best_value == doctest::Approx(-3.0).epsilon(1e-6));
}

TEST_CASE("bundle majorants over-estimate the true function") {
  const dual::DualOracle oracle = [](const std::vector<double>& p) {
    dual::OracleEval ev;  // concave piecewise-linear with three pieces
    ev.value = std::min({2.0 - 0.5 * p[0], p[0] + 1.0, 4.0 - p[0]});
    ev.supergradient = {ev.value == 2.0 - 0.5 * p[0] ? -0.5
                        : ev.value == p[0] + 1.0     ? 1.0
                                                     : -1.0};
    return ev;
  };
  dual::FeasibleRegion region;
  region.dim = 1;
  region.lower = {-3.0};
  region.upper = {6.0};
  const dual::BundleResult res = dual::level_bundle_max(oracle, region, {-3.0});
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const double q = -3.0 + 9.0 * (rng() % 10000) / 9999.0;
    const double truth = std::min({2.0 - 0.5 * q, q + 1.0, 4.0 - q});
    for (const dual::Support& s : res.supports) {
      const double model = s.value + s.grad[0] * (q - s.point[0]);
      CHECK(model >= truth - 1e-7);
    }
  }
}

TEST_CASE("ReLU dual attains the leaf value by strong duality") {
  dual::DualSolveOptions opts;
  const dual::ReluDualResult res = dual::solve_relu_dual(ex1(), 1, kEmptyPool, {1.0}, false, opts);
  CHECK(res.value == doctest::Approx(1.0).epsilon(1e-2));
  CHECK(res.value <= 1.0 + 1e-8);

  const dual::ReluDualResult lam = dual::solve_relu_dual(ex1(), 1, kEmptyPool, {1.0}, true, opts);
  CHECK(lam.value == doctest::Approx(1.0).epsilon(1e-2));
  CHECK(lam.point.pi_plus[0] == doctest::Approx(lam.point.pi_minus[0]));

  // at the global minimizer of Q the zero multipliers are already optimal
  const dual::ReluDualResult zero = dual::solve_relu_dual(ex1(), 1, kEmptyPool, {0.0}, false, opts);
  CHECK(zero.value == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("normalized dual separates exactly when theta is low") {
  const double q1 = dual::eval_recourse(ex1(), 1, kEmptyPool, {1.0});
  REQUIRE(q1 == doctest::Approx(1.0));

  dual::NormalizedOptions opts;
  SUBCASE("theta below Q gives a violated cut") {
    const dual::CorePoint core = dual::core_point({1.0}, {3.0}, q1, 0.1);
    const dual::NormalizedResult res =
        dual::solve_normalized_dual(ex1(), 1, kEmptyPool, {1.0}, 0.1, core, opts);
    CHECK(res.value > 0.0);
    CHECK(res.point.pi0 > 0.0);
    CHECK(cuts::violation(res.cut, std::vector{1.0}, 0.1) > 0.0);
    // normalization feasibility
    const double g = core.u_plus[0] * res.point.pi_plus[0] +
                     core.u_minus[0] * res.point.pi_minus[0] + res.core.u0 * res.point.pi0;
    CHECK(g <= 1.0 + 1e-9);
  }
  SUBCASE("theta at Q gives value zero") {
    const dual::CorePoint core = dual::core_point({1.0}, {3.0}, q1, 1.0);
    const dual::NormalizedResult res =
        dual::solve_normalized_dual(ex1(), 1, kEmptyPool, {1.0}, 1.0, core, opts);
    CHECK(std::fabs(res.value) <= 1e-6);
  }
}

TEST_CASE("u0 doubling reaches a tight normalized cut") {
  dual::NormalizedOptions opts;
  opts.solve.bundle = tight_bundle();
  opts.tighten = true;
  const double q1 = dual::eval_recourse(ex1(), 1, kEmptyPool, {1.0});
  const dual::CorePoint core = dual::core_point({1.0}, {3.0}, q1, 0.1);
  const dual::NormalizedResult res =
      dual::solve_normalized_dual(ex1(), 1, kEmptyPool, {1.0}, 0.1, core, opts);
  REQUIRE(res.point.pi0 > 0.0);
  CHECK(res.tight);
  CHECK(std::fabs(res.cut.value / res.cut.pi0 - q1) <= 1e-4);
  // tight-cut identity: dual objective equals pi0 (Q - theta)
  CHECK(std::fabs(res.value - res.point.pi0 * (q1 - 0.1)) <= 1e-6);
}

TEST_CASE("regularized dual returns a cut tight up to epsilon") {
  dual::RegularizedOptions opts;
  const double q1 = dual::eval_recourse(ex1(), 1, kEmptyPool, {1.0});
  const dual::CorePoint core = dual::core_point({1.0}, {3.0}, q1, 0.1);
  const dual::RegularizedResult res =
      dual::solve_regularized_dual(ex1(), 1, kEmptyPool, {1.0}, core, opts);
  REQUIRE(res.feasible_found);
  CHECK(res.cut.value >= q1 - opts.epsilon - 1e-9);  // optimal-set constraint
  CHECK(res.cut.value <= q1 + 1e-8);                 // weak duality
  CHECK(res.cut.pi0 == 1.0);
}

TEST_CASE("benders cut on the leaf reproduces the LP slope") {
  const cuts::LinearCut cut = dual::benders_cut(ex1(), 1, kEmptyPool, {1.0});
  CHECK(cut.slope[0] == doctest::Approx(2.0 / 3.0));
  CHECK(cut.intercept == doctest::Approx(0.0));
  CHECK(cuts::violation(cut, std::vector{1.0}, 0.1) == doctest::Approx(0.5667).epsilon(1e-3));
}
