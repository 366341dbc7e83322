// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rnc/engine/engine.hpp"
#include "rnc/instances/families.hpp"
#include "rnc/oracle/value_table.hpp"

using namespace rnc;

// The OpenMP paths must reproduce the serial reference bit for bit: each grid
// point / child solve is independent and the merges are ordered.

TEST_CASE("value-table enumeration: OpenMP equals serial") {
  const stoch::Instance inst = instances::gen_random_two_stage(51, 2, 3, 0.5);
  const oracle::ValueTable serial = oracle::enum_value_function(inst, 1, {}, 0.5, {},
                                                                milp::default_backend(), 1);
  const oracle::ValueTable parallel = oracle::enum_value_function(inst, 1, {}, 0.5, {},
                                                                  milp::default_backend(), 4);
  REQUIRE(serial.values.size() == parallel.values.size());
  for (size_t i = 0; i < serial.values.size(); ++i)
    CHECK(serial.values[i] == parallel.values[i]);
}

TEST_CASE("upper bound evaluation: OpenMP equals serial") {
  const stoch::Instance inst = instances::gen_random_two_stage(52, 2, 6, 0.5);
  const engine::ForwardResult fwd = engine::forward_pass(inst, {});
  const double serial = engine::compute_upper_bound(inst, fwd.incumbent,
                                                    milp::default_backend(), 1);
  const double parallel = engine::compute_upper_bound(inst, fwd.incumbent,
                                                      milp::default_backend(), 4);
  CHECK(serial == parallel);
}

TEST_CASE("backward pass: OpenMP merge preserves the serial pool") {
  const stoch::Instance inst = instances::gen_random_two_stage(53, 1, 5, 1.0);
  engine::EngineConfig serial_cfg;
  serial_cfg.method = engine::Method::Norm;
  engine::EngineConfig parallel_cfg = serial_cfg;
  parallel_cfg.threads = 4;

  const engine::RunResult a = engine::run(inst, serial_cfg);
  const engine::RunResult b = engine::run(inst, parallel_cfg);
  REQUIRE(a.log.size() == b.log.size());
  for (size_t i = 0; i < a.log.size(); ++i) {
    CHECK(a.log[i].ub == b.log[i].ub);
    CHECK(a.log[i].lb == b.log[i].lb);
    CHECK(a.log[i].prop_relu == b.log[i].prop_relu);
  }
  CHECK(a.pool.to_json() == b.pool.to_json());
}
