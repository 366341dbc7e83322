// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rnc/milp/model.hpp"

namespace rnc::milp {

/// Best-bound-first branch and bound over the simplex kernel. Branches on the
/// most fractional integer variable, ties broken by lowest index.
MilpSolution solve_milp(const LinearModel& model, const MilpLimits& limits = {},
                        const Tolerances& tol = {});

}  // namespace rnc::milp
