// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <random>

#include "rnc/cuts/pool.hpp"

using namespace rnc::cuts;

namespace {
ReluCut make_cut(double anchor, double pip, double pim, double pi0, double value) {
  ReluCut c;
  c.anchor = {anchor};
  c.pi_plus = {pip};
  c.pi_minus = {pim};
  c.pi0 = pi0;
  c.value = value;
  return c;
}
}  // namespace

TEST_CASE("h evaluation on the two vee forms") {
  const ReluCut up = make_cut(1.0, -1.0, -1.0, 1.0, 1.0);  // 1 + (x-1)+ + (x-1)-
  CHECK(evaluate_h(up, std::vector{3.0}) == doctest::Approx(3.0));
  CHECK(evaluate_h(up, std::vector{1.0}) == doctest::Approx(1.0));

  const ReluCut down = make_cut(1.0, 1.0, 1.0, 1.0, 3.0);  // 3 - (x-1)+ - (x-1)-
  CHECK(evaluate_h(down, std::vector{0.0}) == doctest::Approx(2.0));
}

TEST_CASE("anchor identity h(anchor) = value / pi0") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const double pi0 = 0.25 + (rng() % 1000) / 500.0;
    const ReluCut c = make_cut(1.5, (rng() % 9) - 4.0, (rng() % 9) - 4.0, pi0,
                               (rng() % 100) / 10.0 - 5.0);
    CHECK(evaluate_h(c, std::vector{1.5}) == doctest::Approx(c.value / c.pi0));
  }
}

TEST_CASE("positive scaling invariance") {
  const ReluCut base = make_cut(1.0, -0.5, 2.0, 0.75, 1.25);
  std::mt19937_64 rng(13);
  for (const double scale : {2.0, 4.0, 0.5, 0.25, 3.0}) {
    ReluCut scaled = base;
    scaled.pi_plus[0] *= scale;
    scaled.pi_minus[0] *= scale;
    scaled.pi0 *= scale;
    scaled.value *= scale;
    for (int i = 0; i < 20; ++i) {
      const double x = (rng() % 3000) / 1000.0;
      CHECK(evaluate_h(scaled, std::vector{x}) ==
            doctest::Approx(evaluate_h(base, std::vector{x})).epsilon(1e-12));
    }
  }
}

TEST_CASE("zero scale raises and is flagged") {
  const ReluCut c = make_cut(1.0, 1.0, 1.0, 0.0, 1.0);
  CHECK(c.feasibility_type());
  CHECK_THROWS_AS(evaluate_h(c, std::vector{1.0}), ZeroScale);
  CHECK_THROWS_AS(violation(c, std::vector{1.0}, 0.0), ZeroScale);
}

TEST_CASE("violation of the Benders cut from the leaf LP") {
  LinearCut benders;
  benders.intercept = 0.0;
  benders.slope = {2.0 / 3.0};
  CHECK(violation(benders, std::vector{1.0}, 0.1) == doctest::Approx(0.5667).epsilon(1e-3));
  const ReluCut tight = make_cut(1.0, 0.0, 1.0, 1.0, 1.0);
  CHECK(violation(tight, std::vector{1.0}, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("pool appends are deduplicated on exact equality") {
  CutPool pool;
  CHECK(pool.append(1, make_cut(1, 2, 3, 1, 4)));
  CHECK_FALSE(pool.append(1, make_cut(1, 2, 3, 1, 4)));
  CHECK(pool.append(1, make_cut(1, 2, 3, 1, 4 + 1e-6)));
  CHECK(pool.append(2, make_cut(1, 2, 3, 1, 4)));
  CHECK(pool.size() == 3);
  CHECK(pool.for_child(1).size() == 2);
  CHECK(pool.for_child(99).empty());
}

TEST_CASE("pool export round-trips through JSON") {
  CutPool pool;
  ReluCut c = make_cut(1.0, -0.5, 0.25, 2.0, 1.5);
  c.meta.generator = "norm";
  c.meta.iteration = 3;
  pool.append(4, c);
  LinearCut lc;
  lc.intercept = 0.5;
  lc.slope = {1.0, -2.0};
  lc.meta.generator = "benders";
  pool.append(5, lc);

  const CutPool back = CutPool::from_json(pool.to_json());
  CHECK(back.size() == 2);
  const auto& relu = std::get<ReluCut>(back.for_child(4)[0]);
  CHECK(relu.pi0 == doctest::Approx(2.0));
  CHECK(relu.meta.generator == "norm");
  CHECK(relu.meta.iteration == 3);
  const auto& lin = std::get<LinearCut>(back.for_child(5)[0]);
  CHECK(lin.slope[1] == doctest::Approx(-2.0));
}
