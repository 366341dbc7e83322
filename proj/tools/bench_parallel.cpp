// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
//
// Times the OpenMP kernels against the serial reference on the same inputs:
// value-table enumeration, policy upper bounds, and full decomposition runs.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "rnc/engine/engine.hpp"
#include "rnc/instances/families.hpp"
#include "rnc/oracle/value_table.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace rnc;

namespace {

double time_once(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double best_of(int reps, const std::function<void()>& fn) {
  double best = 1e18;
  for (int i = 0; i < reps; ++i) best = std::min(best, time_once(fn));
  return best;
}

void report(const char* name, double serial, double parallel, int threads) {
  std::printf("%-28s serial %8.3f ms   omp(%d) %8.3f ms   speedup %.2fx\n", name,
              serial * 1e3, threads, parallel * 1e3, serial / std::max(parallel, 1e-12));
}

}  // namespace

int main(int argc, char** argv) {
  int threads = 4;
  if (argc > 1) threads = std::max(1, std::atoi(argv[1]));
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d, benchmarking with %d\n", omp_get_max_threads(),
              threads);
#else
  std::printf("built without OpenMP; both columns run the serial path\n");
#endif

  {
    const stoch::Instance inst = instances::gen_random_two_stage(4, 2, 4, 0.5);
    const double serial = best_of(
        3, [&] { oracle::enum_value_function(inst, 1, {}, 0.1, {}, milp::default_backend(), 1); });
    const double parallel = best_of(3, [&] {
      oracle::enum_value_function(inst, 1, {}, 0.1, {}, milp::default_backend(), threads);
    });
    report("value-table enumeration", serial, parallel, threads);
  }
  {
    const stoch::Instance inst = instances::gen_dcap_like(3, 3, 24, 3, 7);
    const engine::ForwardResult fwd = engine::forward_pass(inst, {});
    const double serial = best_of(
        3, [&] { engine::compute_upper_bound(inst, fwd.incumbent, milp::default_backend(), 1); });
    const double parallel = best_of(3, [&] {
      engine::compute_upper_bound(inst, fwd.incumbent, milp::default_backend(), threads);
    });
    report("policy upper bound", serial, parallel, threads);
  }
  {
    const stoch::Instance inst = instances::gen_dcap_like(2, 3, 16, 3, 9);
    engine::EngineConfig serial_cfg;
    serial_cfg.method = engine::Method::Norm;
    serial_cfg.alternating = true;
    engine::EngineConfig parallel_cfg = serial_cfg;
    parallel_cfg.threads = threads;
    double ub_serial = 0, ub_parallel = 0;
    const double serial = best_of(1, [&] { ub_serial = engine::run(inst, serial_cfg).ub; });
    const double parallel =
        best_of(1, [&] { ub_parallel = engine::run(inst, parallel_cfg).ub; });
    report("decomposition (norm, alt)", serial, parallel, threads);
    if (ub_serial != ub_parallel)
      std::printf("WARNING: serial and parallel runs disagree: %.12f vs %.12f\n", ub_serial,
                  ub_parallel);
  }
  return 0;
}
