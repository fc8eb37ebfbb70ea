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

#include <vector>

#include "qforge/circuit.hpp"

namespace qforge {

/// A circuit partitioned into parallel levels. Gates inside one level act on
/// pairwise disjoint qubit sets.
struct LeveledCircuit {
  std::size_t num_qubits = 0;
  std::size_t num_cbits = 0;
  std::vector<std::vector<Gate>> levels;

  std::size_t depth() const noexcept { return levels.size(); }

  /// Concatenates the levels in order.
  Circuit flatten() const;
};

/// Moves every gate to the leftmost level allowed by the gates before it that
/// share a qubit, then drops empty levels. The result has minimal depth among
/// schedules that keep each qubit's gate order.
LeveledCircuit schedule_asap(const Circuit& c);

/// Level count of schedule_asap(c). MEASURE and BARRIER count like any gate.
std::size_t depth(const Circuit& c);

/// Applies ASAP leveling to an explicitly leveled layout (e.g. a drawn figure
/// with one gate list per column).
LeveledCircuit compact_levels(const LeveledCircuit& layout);

}  // namespace qforge
