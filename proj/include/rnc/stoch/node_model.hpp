// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>

#include "rnc/cuts/pool.hpp"
#include "rnc/milp/model.hpp"
#include "rnc/stoch/instance.hpp"

namespace rnc::stoch {

/// FixedState pins z = xhat (evaluates Q at xhat). ReluCopy relaxes z over the
/// box and adds the ReLU linearization (w+, w-, r) of the copy constraints.
/// LpRelaxed keeps explicit copy rows z = xhat and drops every integrality
/// flag, exposing the copy-row duals for Benders cuts.
enum class BuildMode { FixedState, ReluCopy, LpRelaxed };

struct BuildOptions {
  BuildMode mode = BuildMode::FixedState;
  std::vector<double> xhat;
  bool include_children = true;                    // theta columns + cuts
  const std::vector<double>* pin_state = nullptr;  // fix x_n (upper-bound eval)
  // Adds the separable convex envelope of each embedded ReLU cut as linear
  // rows (one aux column per dimension). Valid for the MILP and much tighter
  // LP bounds; off by default so the bare linearization counts stay exact.
  bool strengthen_cut_relaxations = false;
};

struct NodeModelHandles {
  std::vector<int> z;
  std::vector<int> state;
  std::vector<int> locals;
  std::vector<int> w_plus, w_minus, relu_binary;  // ReluCopy only
  std::vector<int> copy_rows;                     // LpRelaxed only
  std::map<int, int> theta;                       // child id -> column
};

class DimensionMismatch : public std::runtime_error {
 public:
  explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

class CutAnchorMismatch : public std::runtime_error {
 public:
  explicit CutAnchorMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct NodeModel {
  milp::LinearModel model;
  NodeModelHandles handles;
};

NodeModel build_node_model(const Instance& instance, int node_id, const cuts::CutPool& pool,
                           const BuildOptions& options);

}  // namespace rnc::stoch
