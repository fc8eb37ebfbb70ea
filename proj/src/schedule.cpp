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

#include "qforge/schedule.hpp"

#include <algorithm>

namespace qforge {

Circuit LeveledCircuit::flatten() const {
  Circuit out(num_qubits, num_cbits);
  for (const auto& level : levels) {
    for (const auto& g : level) out.append(g);
  }
  return out;
}

LeveledCircuit schedule_asap(const Circuit& c) {
  LeveledCircuit out;
  out.num_qubits = c.num_qubits();
  out.num_cbits = c.num_cbits();
  // next_free[q]: first level index at which qubit q is idle
  std::vector<std::size_t> next_free(c.num_qubits(), 0);
  for (const auto& g : c) {
    std::size_t level = 0;
    for (Qubit q : g.qubits) level = std::max(level, next_free[q]);
    if (level == out.levels.size()) out.levels.emplace_back();
    out.levels[level].push_back(g);
    for (Qubit q : g.qubits) next_free[q] = level + 1;
  }
  return out;
}

std::size_t depth(const Circuit& c) { return schedule_asap(c).depth(); }

LeveledCircuit compact_levels(const LeveledCircuit& layout) { return schedule_asap(layout.flatten()); }

}  // namespace qforge
