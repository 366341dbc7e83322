// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <mutex>
#include <string>

#include "rnc/cuts/cut.hpp"

namespace rnc::cuts {

/// Append-only cut store keyed by child node. Appends are serialized; readers
/// take snapshots. Cuts are never deleted; duplicates are dropped only on
/// exact coefficient equality within 1e-12.
class CutPool {
 public:
  CutPool() = default;
  CutPool(const CutPool& other);
  CutPool& operator=(const CutPool& other);

  /// Returns false for an exact duplicate.
  bool append(int child, Cut cut);

  const std::vector<Cut>& for_child(int child) const;
  std::vector<int> children() const;
  long generation() const { return generation_; }
  long size() const;

  std::string to_json() const;
  static CutPool from_json(const std::string& text);
  void save(const std::string& path) const;
  static CutPool load(const std::string& path);

 private:
  std::map<int, std::vector<Cut>> cuts_;
  long generation_ = 0;
  mutable std::mutex mutex_;
  static const std::vector<Cut> empty_;
};

}  // namespace rnc::cuts
