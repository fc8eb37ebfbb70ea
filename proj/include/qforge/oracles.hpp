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
 * @file oracles.hpp
 * @brief Expandable oracle circuits: QFT, inverse QFT and the Draper adder.
 */

#pragma once

#include <cstddef>

#include "qforge/circuit.hpp"
#include "qforge/macro.hpp"

namespace qforge {

/// Textbook QFT on n qubits (qubit 0 = MSB). With `with_swaps` the final
/// reversal layer is included and the unitary equals the DFT matrix.
/// Error: SizeOutOfRange unless 1 <= n <= 10.
Circuit qft_circuit(std::size_t n, bool with_swaps = true);

/// Gate-wise inverse of qft_circuit(n, with_swaps).
Circuit iqft_circuit(std::size_t n, bool with_swaps = true);

/// Draper adder on 2n qubits, x register first: |x>|y> -> |x>|(x+y) mod 2^n>.
/// Error: SizeOutOfRange unless 1 <= n <= 5.
Circuit draper_adder(std::size_t n);

/// Registers "qft", "iqft" (n qubits) and "add" (2n qubits), each taking the
/// size n as its single parameter, then expands each once at n = 2.
/// Error: NameCollision.
MacroLibrary& register_builtin_oracles(MacroLibrary& lib);

}  // namespace qforge
