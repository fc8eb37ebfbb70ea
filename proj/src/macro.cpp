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

#include "qforge/macro.hpp"

#include "qforge/error.hpp"

namespace qforge {

void MacroLibrary::add(const std::string& name, MacroGenerator generator) {
  if (name.empty()) throw Error(ErrorCode::InvalidArgument, "macro name must not be empty");
  if (!generators_.emplace(name, std::move(generator)).second) {
    throw Error(ErrorCode::NameCollision, "macro '" + name + "' is already registered");
  }
}

std::vector<std::string> MacroLibrary::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : generators_) out.push_back(name);
  return out;
}

MacroBody MacroLibrary::instantiate(const std::string& name, std::span<const double> params) const {
  auto it = generators_.find(name);
  if (it == generators_.end()) {
    throw Error(ErrorCode::UnknownMacro, "unknown macro '" + name + "'");
  }
  return it->second(params);
}

namespace {

// Expands `c` in place into `out`, with c's qubit i living at out qubit
// qubit_map[i]. Returns nothing; grows `out` for ancillas.
void expand_into(const Circuit& c, const std::vector<Qubit>& qubit_map, Circuit& out,
                 const MacroLibrary& lib, std::size_t level, std::size_t limit) {
  for (const auto& g : c) {
    if (g.type != GateType::MACRO) {
      Gate mapped = g;
      for (auto& q : mapped.qubits) q = qubit_map[q];
      out.append(std::move(mapped));
      continue;
    }
    if (level >= limit) {
      throw Error(ErrorCode::RecursionLimitExceeded,
                  "macro expansion of '" + g.macro_name + "' exceeded nesting limit " +
                      std::to_string(limit));
    }
    MacroBody inst = lib.instantiate(g.macro_name, g.params);
    const std::size_t declared = inst.body.num_qubits();
    if (declared != g.qubits.size() + inst.ancillas) {
      throw Error(ErrorCode::InvalidArgument,
                  "macro '" + g.macro_name + "' spans " + std::to_string(declared) +
                      " qubits but was given " + std::to_string(g.qubits.size()) +
                      " operands and declares " + std::to_string(inst.ancillas) + " ancillas");
    }
    if (inst.body.num_cbits() != 0) {
      throw Error(ErrorCode::InvalidArgument,
                  "macro '" + g.macro_name + "' template must not use classical bits");
    }
    std::vector<Qubit> inner(declared);
    for (std::size_t i = 0; i < g.qubits.size(); ++i) inner[i] = qubit_map[g.qubits[i]];
    if (inst.ancillas > 0) {
      const Qubit first = out.add_qubits(inst.ancillas);
      for (std::size_t a = 0; a < inst.ancillas; ++a) inner[g.qubits.size() + a] = first + a;
    }
    expand_into(inst.body, inner, out, lib, level + 1, limit);
  }
}

}  // namespace

Circuit expand_macros(const Circuit& c, const MacroLibrary& lib, std::size_t limit) {
  if (limit == 0) throw Error(ErrorCode::InvalidArgument, "expansion limit must be at least 1");
  Circuit out(c.num_qubits(), c.num_cbits());
  std::vector<Qubit> identity(c.num_qubits());
  for (Qubit q = 0; q < identity.size(); ++q) identity[q] = q;
  expand_into(c, identity, out, lib, 0, limit);
  return out;
}

}  // namespace qforge
