// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "rnc/stoch/instance.hpp"

namespace rnc::instances {

class ParameterOutOfRange : public std::invalid_argument {
 public:
  explicit ParameterOutOfRange(const std::string& what) : std::invalid_argument(what) {}
};

/// Two-stage instance with a scalar integer state x in {0..3}, first-stage
/// cost coef * x, and one leaf  min { x_n : 1.5 x_n >= z, x_n in {0,1,2,3} }.
stoch::Instance example1(double first_stage_cost = -0.2);

/// Random bounded two-stage instances with mixed-integer states and penalty
/// recourse slacks. Deterministic per seed. Oracle-checkable sizes only:
/// d <= 3, scenarios <= 10.
stoch::Instance gen_random_two_stage(uint64_t seed, int d, int scenarios, double frac_integer);

/// Capacity-expansion first stage plus scenario assignment subproblems,
/// parameterized like the (I, J, N, S) table grid. Fresh coefficients; no
/// claim of fidelity to any external data set.
stoch::Instance gen_dcap_like(int I, int J, int N, int S, uint64_t seed);

/// Setup/production/inventory structure with scenario demands over (P, N).
stoch::Instance gen_clsp_like(int P, int N, uint64_t seed);

}  // namespace rnc::instances
