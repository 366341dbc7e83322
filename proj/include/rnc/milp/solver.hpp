// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "rnc/milp/branch_and_bound.hpp"
#include "rnc/milp/model.hpp"
#include "rnc/milp/simplex.hpp"

namespace rnc::milp {

/// Backend seam: an external solver can replace the built-in kernel without
/// touching callers. A backend instance may be shared across threads; every
/// solve call is stateless.
class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual LpSolution solve_lp(const LinearModel& model) const = 0;
  virtual MilpSolution solve_milp(const LinearModel& model, const MilpLimits& limits) const = 0;
};

class KernelBackend final : public SolverBackend {
 public:
  explicit KernelBackend(Tolerances tol = {}) : tol_(tol) {}
  LpSolution solve_lp(const LinearModel& model) const override {
    return ::rnc::milp::solve_lp(model, tol_);
  }
  MilpSolution solve_milp(const LinearModel& model, const MilpLimits& limits) const override {
    return ::rnc::milp::solve_milp(model, limits, tol_);
  }
  const Tolerances& tolerances() const { return tol_; }

 private:
  Tolerances tol_;
};

const SolverBackend& default_backend();

/// Fixed-format text dump of a model (MPS-like) for external cross-checking.
/// Layout: NAME / VARS (index lower upper cost kind) / ROWS (sense rhs
/// entries as col:val) / ENDATA.
std::string dump_model(const LinearModel& model);
void dump_model_to_file(const LinearModel& model, const std::string& path);

}  // namespace rnc::milp
