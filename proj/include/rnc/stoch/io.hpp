// SPDX-FileCopyrightText: 2026 RNC project contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "rnc/stoch/instance.hpp"

namespace rnc::stoch {

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

class SchemaVersionError : public std::runtime_error {
 public:
  explicit SchemaVersionError(const std::string& what) : std::runtime_error(what) {}
};

/// Loads and validates an instance file (schema v1, documented in the README).
/// Unknown fields are rejected. Throws ParseError, SchemaVersionError or
/// ValidationError.
Instance load_instance(const std::string& path);
Instance instance_from_json(const std::string& text);

/// Canonical serialization; save-then-load then save again is byte-identical.
std::string instance_to_json(const Instance& instance);
void save_instance(const Instance& instance, const std::string& path);

}  // namespace rnc::stoch
