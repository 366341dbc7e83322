// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rnc/milp/model.hpp"

namespace rnc::milp {

/// Dense bounded-variable two-phase simplex. Degenerate bases fall back to
/// Bland's rule after 10*m non-improving pivots.
LpSolution solve_lp(const LinearModel& model, const Tolerances& tol = {});

}  // namespace rnc::milp
