// Copyright 2026 The qforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qforge/circuit.hpp"

namespace qforge {

/// One instantiation of a macro template. Qubits [0, operand count) of
/// `body` bind to the MACRO gate's operands in order; the next `ancillas`
/// qubits are fresh workspace appended to the host circuit.
struct MacroBody {
  Circuit body;
  std::size_t ancillas = 0;
};

using MacroGenerator = std::function<MacroBody(std::span<const double> params)>;

/// Registry of named circuit templates that MACRO gates resolve against.
class MacroLibrary {
 public:
  /// Throws Error(NameCollision) if `name` is already registered.
  void add(const std::string& name, MacroGenerator generator);

  bool contains(const std::string& name) const { return generators_.count(name) != 0; }
  std::vector<std::string> names() const;

  /// Throws Error(UnknownMacro) for unregistered names.
  MacroBody instantiate(const std::string& name, std::span<const double> params) const;

 private:
  std::map<std::string, MacroGenerator> generators_;
};

/// Replaces every MACRO gate by its template, recursively. `limit` bounds the
/// nesting depth; hitting it raises Error(RecursionLimitExceeded), which is
/// how a self-referencing template surfaces. Ancillas requested by templates
/// are appended above the current register, so num_qubits may grow.
Circuit expand_macros(const Circuit& c, const MacroLibrary& lib, std::size_t limit = 64);

}  // namespace qforge
