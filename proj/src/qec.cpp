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

#include "qforge/qec.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "qforge/error.hpp"

namespace qforge {

void LogicalQubitLayout::validate() const {
  std::set<Qubit> all(data.begin(), data.end());
  all.insert(ancilla.begin(), ancilla.end());
  if (all.size() != 5) throw Error(ErrorCode::InvalidArgument, "logical qubit layout indices must be distinct");
}

Qubit LogicalQubitLayout::max_index() const {
  return std::max(*std::max_element(data.begin(), data.end()),
                  *std::max_element(ancilla.begin(), ancilla.end()));
}

namespace {

std::size_t register_size(const LogicalQubitLayout& layout, std::size_t num_qubits) {
  layout.validate();
  const std::size_t needed = layout.max_index() + 1;
  if (num_qubits == 0) return needed;
  if (num_qubits < needed) throw Error(ErrorCode::InvalidArgument, "register too small for layout");
  return num_qubits;
}

void append_recovery(Circuit& c, const LogicalQubitLayout& l) {
  const auto [d0, d1, d2] = l.data;
  const auto [a0, a1] = l.ancilla;
  c.cx(d0, a0).cx(d1, a0).cx(d1, a1).cx(d2, a1);
  c.x(a1).ccx(a0, a1, d0).x(a1);  // 10
  c.ccx(a0, a1, d1);              // 11
  c.x(a0).ccx(a0, a1, d2).x(a0);  // 01
}

}  // namespace

Circuit encode3_circuit(const LogicalQubitLayout& layout, std::size_t num_qubits) {
  Circuit c(register_size(layout, num_qubits));
  c.cx(layout.data[0], layout.data[1]).cx(layout.data[0], layout.data[2]);
  return c;
}

Circuit syndrome_recover_circuit(const LogicalQubitLayout& layout, std::size_t num_qubits) {
  Circuit c(register_size(layout, num_qubits));
  append_recovery(c, layout);
  return c;
}

Circuit protect_qubit(const Circuit& c, Qubit q, std::size_t from_gate) {
  if (q >= c.num_qubits()) {
    throw Error(ErrorCode::InvalidArgument, "qubit " + std::to_string(q) + " out of range");
  }
  if (from_gate > c.size()) {
    throw Error(ErrorCode::InvalidArgument, "from-gate index " + std::to_string(from_gate) +
                                                " beyond the circuit's " + std::to_string(c.size()) +
                                                " gates");
  }
  Circuit out(c.num_qubits(), c.num_cbits());
  const auto& gs = c.gates();
  for (std::size_t i = 0; i < from_gate; ++i) out.append(gs[i]);

  LogicalQubitLayout layout;
  layout.data = {q, out.add_qubits(2), 0};
  layout.data[2] = layout.data[1] + 1;
  out.cx(layout.data[0], layout.data[1]).cx(layout.data[0], layout.data[2]);

  bool measured = false;
  for (std::size_t i = from_gate; i < gs.size(); ++i) {
    const Gate& g = gs[i];
    const bool touches = std::find(g.qubits.begin(), g.qubits.end(), q) != g.qubits.end();
    if (!touches) {
      out.append(g);
      continue;
    }
    if (measured) {
      throw Error(ErrorCode::UnsupportedLogicalGate,
                  std::string(gate_name(g.type)) + " after the logical measurement");
    }
    switch (g.type) {
      case GateType::X:
        for (Qubit d : layout.data) out.x(d);
        break;
      case GateType::Z:
        for (Qubit d : layout.data) out.z(d);
        break;
      case GateType::CNOT:
        if (g.qubits[0] != q) {
          throw Error(ErrorCode::UnsupportedLogicalGate, "CNOT targeting the protected qubit");
        }
        for (Qubit d : layout.data) out.cx(d, g.qubits[1]);
        break;
      case GateType::MEASURE:
        out.measure(layout.data[0], g.cbits[0]);
        measured = true;
        continue;
      case GateType::BARRIER: {
        std::vector<Qubit> qs = g.qubits;
        qs.push_back(layout.data[1]);
        qs.push_back(layout.data[2]);
        out.barrier(std::move(qs));
        continue;
      }
      default:
        throw Error(ErrorCode::UnsupportedLogicalGate,
                    std::string(gate_name(g.type)) + " has no transversal form in the bit-flip code");
    }
    const Qubit first = out.add_qubits(2);
    layout.ancilla = {first, first + 1};
    append_recovery(out, layout);
  }
  return out;
}

}  // namespace qforge
