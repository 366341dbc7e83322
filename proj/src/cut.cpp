// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#include "rnc/cuts/cut.hpp"

#include <cassert>

namespace rnc::cuts {

double evaluate_h(const ReluCut& cut, std::span<const double> x) {
  if (cut.pi0 == 0.0) throw ZeroScale();
  assert(x.size() == cut.dim());
  double s = cut.value;
  for (size_t k = 0; k < cut.dim(); ++k) {
    const double d = x[k] - cut.anchor[k];
    if (d > 0)
      s -= cut.pi_plus[k] * d;
    else
      s -= cut.pi_minus[k] * (-d);
  }
  return s / cut.pi0;
}

double violation(const ReluCut& cut, std::span<const double> x, double theta) {
  return evaluate_h(cut, x) - theta;
}

double violation(const LinearCut& cut, std::span<const double> x, double theta) {
  double s = cut.intercept;
  for (size_t k = 0; k < cut.slope.size(); ++k) s += cut.slope[k] * x[k];
  return s - theta;
}

double violation(const Cut& cut, std::span<const double> x, double theta) {
  return std::visit([&](const auto& c) { return violation(c, x, theta); }, cut);
}

}  // namespace rnc::cuts
