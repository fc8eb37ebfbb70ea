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


/**
 * @file qec.hpp
 * @brief Three-qubit bit-flip code: encoding, coherent syndrome recovery and
 * protection of a single qubit inside a larger circuit.
 */

#pragma once

#include <array>

#include "qforge/circuit.hpp"

namespace qforge {

struct LogicalQubitLayout {
  std::array<Qubit, 3> data{0, 1, 2};
  std::array<Qubit, 2> ancilla{3, 4};

  /// Throws Error(InvalidArgument) unless the five indices are distinct.
  void validate() const;
  Qubit max_index() const;
};

/// CNOT(d0,d1) CNOT(d0,d2): a|0>+b|1> on d0 becomes a|000>+b|111>.
/// `num_qubits` 0 means max_index() + 1.
Circuit encode3_circuit(const LogicalQubitLayout& layout, std::size_t num_qubits = 0);

/// a0 <- d0 xor d1, a1 <- d1 xor d2, then Toffolis flip the data qubit the
/// syndrome points at (10 -> d0, 11 -> d1, 01 -> d2). Ancillas must start in
/// |0> and keep the syndrome afterwards.
Circuit syndrome_recover_circuit(const LogicalQubitLayout& layout, std::size_t num_qubits = 0);

/// Encodes qubit q into a logical qubit right before gate `from_gate`.
/// Later gates on q become transversal (X and Z on all three data qubits,
/// CNOT with q as control fans out to three CNOTs), each followed by a
/// syndrome/recovery block on a fresh ancilla pair. A final MEASURE on q
/// reads the first data qubit. New qubits are appended after c's register.
/// Errors: UnsupportedLogicalGate for other gates on q, InvalidArgument for
/// out-of-range q or from_gate.
Circuit protect_qubit(const Circuit& c, Qubit q, std::size_t from_gate);

}  // namespace qforge
