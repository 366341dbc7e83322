// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace rnc::cuts {

struct CutMeta {
  int node = -1;       // child node the cut bounds
  int iteration = -1;  // decomposition iteration that produced it
  std::string generator;
};

/// Nonlinear cut  pi0 * theta >= value - sum pi+ (x-anchor)+ - sum pi- (x-anchor)-.
/// pi0 == 0 marks a feasibility-type cut.
struct ReluCut {
  std::vector<double> anchor;
  std::vector<double> pi_plus;
  std::vector<double> pi_minus;
  double pi0 = 1.0;
  double value = 0.0;  // Lagrangian value at (pi_plus, pi_minus, pi0)
  CutMeta meta;

  bool feasibility_type() const { return pi0 == 0.0; }
  size_t dim() const { return anchor.size(); }
};

/// Affine cut  theta >= intercept + slope . x.
struct LinearCut {
  double intercept = 0.0;
  std::vector<double> slope;
  CutMeta meta;
};

using Cut = std::variant<ReluCut, LinearCut>;

class ZeroScale : public std::domain_error {
 public:
  ZeroScale() : std::domain_error("ReLU cut has pi0 = 0; feasibility handling required") {}
};

/// h(x) = (value - sum pi+ (x-anchor)+ - sum pi- (x-anchor)-) / pi0.
/// Throws ZeroScale when pi0 == 0.
double evaluate_h(const ReluCut& cut, std::span<const double> x);

/// Positive means (x, theta) is cut off.
double violation(const ReluCut& cut, std::span<const double> x, double theta);
double violation(const LinearCut& cut, std::span<const double> x, double theta);
double violation(const Cut& cut, std::span<const double> x, double theta);

}  // namespace rnc::cuts
