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

#include <set>

#include "qforge/circuit.hpp"
#include "qforge/macro.hpp"
#include "qforge/mapper.hpp"
#include "qforge/simulator.hpp"

namespace qforge {

/// U = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta), gamma in [0, pi].
struct ZYDecomposition {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;

  Matrix2 matrix() const;
};

/// Errors: NotUnitary. When gamma is 0 or pi the free angle is folded into
/// beta and delta is 0.
ZYDecomposition zy_decompose(const Matrix2& u);

/// Rz(delta), Ry(gamma), Rz(beta) on qubit q (global phase dropped). Zero
/// angles are skipped.
Circuit zy_circuit(const ZYDecomposition& zy, std::size_t num_qubits, Qubit q);

class NativeBasis {
 public:
  /// {U1, U2, U3, CNOT}
  NativeBasis();
  /// Errors: InvalidArgument unless CNOT and either U3 or the {RZ, RY} pair
  /// are present.
  explicit NativeBasis(std::set<GateType> kinds);

  bool allows(GateType t) const { return kinds_.count(t) != 0; }
  const std::set<GateType>& kinds() const noexcept { return kinds_; }

 private:
  std::set<GateType> kinds_;
};

/// Single gate for a 2x2 unitary in the basis, global phase dropped:
/// U1 when diagonal, U2 when theta = pi/2, else U3 (angle patterns matched
/// within 1e-9). With an {RZ, RY} basis the Z-Y sequence is emitted.
Circuit single_qubit_gate_for(const Matrix2& u, const NativeBasis& basis, std::size_t num_qubits,
                              Qubit q);

/// Replaces each maximal run of >= 2 consecutive single-qubit gates on one
/// qubit by one gate (U1, U2 or U3, see single_qubit_gate_for). Runs whose
/// product is the identity up to phase vanish. Single gates stay untouched.
Circuit fuse_1q_runs(const Circuit& c);

/// Rewrites TOFFOLI into CNOTs and single-qubit gates so that every gate
/// acts on at most two qubits.
Circuit decompose_multiqubit(const Circuit& c);

/// Expresses every gate in the basis (plus MEASURE/BARRIER). Errors:
/// UnloweredGate for kinds without a rule (e.g. MACRO).
Circuit to_native_basis(const Circuit& c, const NativeBasis& basis = {});

struct PipelineOptions {
  std::size_t macro_limit = 64;
  SwapCost swap_cost = SwapCost::EdgeRate;
};

struct PipelineResult {
  RoutedCircuit routed;  // routed.circuit is the final native, leveled circuit
  std::size_t depth_before = 0;
  std::size_t depth_after = 0;
  std::size_t width_before = 0;
  std::size_t width_after = 0;
  std::size_t swaps_inserted = 0;
  double allocation_weight = 1.0;
  double success_estimate = 1.0;
};

/// expand_macros -> decompose_multiqubit -> initial_allocation -> route ->
/// lower_swaps -> to_native_basis -> fuse_1q_runs -> schedule_asap.
/// success_estimate is taken on the routed circuit before SWAP lowering.
PipelineResult rewrite_pipeline(const Circuit& c, const CouplingGraph& g,
                                const NativeBasis& basis = {}, const MacroLibrary& lib = {},
                                const PipelineOptions& options = {});

}  // namespace qforge
