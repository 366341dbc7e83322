// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#include "rnc/milp/solver.hpp"

#include <fstream>
#include <sstream>

namespace rnc::milp {

const SolverBackend& default_backend() {
  static const KernelBackend backend;
  return backend;
}

namespace {
std::string num(double v) {
  if (v == kInf) return "+inf";
  if (v == -kInf) return "-inf";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}
}  // namespace

std::string dump_model(const LinearModel& model) {
  std::ostringstream os;
  os << "NAME " << (model.name.empty() ? "model" : model.name) << "\n";
  os << "VARS " << model.num_vars << "\n";
  for (int j = 0; j < model.num_vars; ++j) {
    os << j << " " << num(model.lower[j]) << " " << num(model.upper[j]) << " "
       << num(model.objective[j]) << " " << (model.integral[j] ? "INT" : "CONT") << "\n";
  }
  os << "ROWS " << model.rows.size() << "\n";
  for (const Row& row : model.rows) {
    const char* sense = row.sense == RowSense::LessEqual  ? "LE"
                        : row.sense == RowSense::Equal    ? "EQ"
                                                          : "GE";
    os << sense << " " << num(row.rhs);
    for (const RowEntry& e : row.entries) os << " " << e.column << ":" << num(e.value);
    os << "\n";
  }
  os << "ENDATA\n";
  return os.str();
}

void dump_model_to_file(const LinearModel& model, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << dump_model(model);
}

}  // namespace rnc::milp
