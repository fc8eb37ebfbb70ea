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
 * @file circuit.hpp
 * @brief Gate-level circuit intermediate representation.
 *
 * A Circuit is an ordered gate list over `num_qubits` qubits and `num_cbits`
 * classical bits. Gate order defines data flow: two gates only need to keep
 * their relative order when they share a qubit.
 *
 * Bit convention used throughout qforge: qubit 0 is the leftmost character
 * of a bitstring and the most significant bit of a basis-state index.
 */

#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qforge {

using Qubit = std::size_t;
using Cbit = std::size_t;

enum class GateType {
  // fixed
  X,
  Y,
  Z,
  H,
  S,
  T,
  CNOT,
  SWAP,
  TOFFOLI,
  MEASURE,
  BARRIER,
  // parameterized
  RX,
  RY,
  RZ,
  U1,
  U2,
  U3,
  CRK,
  CPHASE,
  // black box, resolved against a MacroLibrary
  MACRO,
};

/// Canonical upper-case name ("CNOT", "U3", ...).
std::string_view gate_name(GateType type);
std::optional<GateType> gate_type_from_name(std::string_view name);

/// Number of real parameters the kind carries (CRK carries k as one
/// parameter). MACRO is variadic and returns std::nullopt.
std::optional<std::size_t> param_count(GateType type);

/// Fixed qubit arity; std::nullopt for BARRIER and MACRO.
std::optional<std::size_t> qubit_arity(GateType type);

/// True for kinds with a 2x2 unitary (everything 1-qubit except MEASURE).
bool is_single_qubit_unitary(GateType type);

struct Gate {
  GateType type = GateType::X;
  std::vector<double> params;
  std::vector<Qubit> qubits;
  std::vector<Cbit> cbits;
  std::string macro_name;  // MACRO only

  /// CRK's k; throws unless type == CRK.
  unsigned crk_order() const;

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Gate factories. They check arity and operand distinctness, not ranges.
namespace gates {
Gate x(Qubit q);
Gate y(Qubit q);
Gate z(Qubit q);
Gate h(Qubit q);
Gate s(Qubit q);
Gate t(Qubit q);
Gate rx(double theta, Qubit q);
Gate ry(double theta, Qubit q);
Gate rz(double theta, Qubit q);
Gate u1(double lambda, Qubit q);
Gate u2(double phi, double lambda, Qubit q);
Gate u3(double theta, double phi, double lambda, Qubit q);
Gate cnot(Qubit control, Qubit target);
Gate swap(Qubit a, Qubit b);
Gate toffoli(Qubit c0, Qubit c1, Qubit target);
Gate crk(unsigned k, Qubit control, Qubit target);
Gate cphase(double lambda, Qubit control, Qubit target);
Gate measure(Qubit q, Cbit c);
Gate barrier(std::vector<Qubit> qubits);
Gate macro(std::string name, std::vector<double> params, std::vector<Qubit> qubits);
}  // namespace gates

/// Throws Error(InvalidArgument) if the gate's shape is malformed.
void validate_gate(const Gate& gate);

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::size_t num_qubits, std::size_t num_cbits = 0)
      : num_qubits_(num_qubits), num_cbits_(num_cbits) {}

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t num_cbits() const noexcept { return num_cbits_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  std::size_t size() const noexcept { return gates_.size(); }
  bool empty() const noexcept { return gates_.empty(); }

  auto begin() const noexcept { return gates_.begin(); }
  auto end() const noexcept { return gates_.end(); }

  /// Validates shape and operand ranges, then appends.
  Circuit& append(Gate gate);
  Circuit& append(const Circuit& other);

  /// Appends every gate of `other`, renumbering its qubit i to `qubit_map[i]`
  /// and classical bit j to `cbit_map[j]`.
  Circuit& append_mapped(const Circuit& other, const std::vector<Qubit>& qubit_map,
                         const std::vector<Cbit>& cbit_map = {});

  Qubit add_qubits(std::size_t count);
  void set_num_cbits(std::size_t count);

  Circuit& x(Qubit q) { return append(gates::x(q)); }
  Circuit& y(Qubit q) { return append(gates::y(q)); }
  Circuit& z(Qubit q) { return append(gates::z(q)); }
  Circuit& h(Qubit q) { return append(gates::h(q)); }
  Circuit& s(Qubit q) { return append(gates::s(q)); }
  Circuit& t(Qubit q) { return append(gates::t(q)); }
  Circuit& rx(double a, Qubit q) { return append(gates::rx(a, q)); }
  Circuit& ry(double a, Qubit q) { return append(gates::ry(a, q)); }
  Circuit& rz(double a, Qubit q) { return append(gates::rz(a, q)); }
  Circuit& u1(double l, Qubit q) { return append(gates::u1(l, q)); }
  Circuit& u2(double p, double l, Qubit q) { return append(gates::u2(p, l, q)); }
  Circuit& u3(double t, double p, double l, Qubit q) { return append(gates::u3(t, p, l, q)); }
  Circuit& cx(Qubit c, Qubit t) { return append(gates::cnot(c, t)); }
  Circuit& swap(Qubit a, Qubit b) { return append(gates::swap(a, b)); }
  Circuit& ccx(Qubit a, Qubit b, Qubit t) { return append(gates::toffoli(a, b, t)); }
  Circuit& crk(unsigned k, Qubit c, Qubit t) { return append(gates::crk(k, c, t)); }
  Circuit& cphase(double l, Qubit c, Qubit t) { return append(gates::cphase(l, c, t)); }
  Circuit& measure(Qubit q, Cbit c) { return append(gates::measure(q, c)); }
  Circuit& barrier(std::vector<Qubit> qs) { return append(gates::barrier(std::move(qs))); }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::size_t num_qubits_ = 0;
  std::size_t num_cbits_ = 0;
  std::vector<Gate> gates_;
};

/// Number of distinct qubits touched by at least one gate.
std::size_t width(const Circuit& c);

/// Sorted list of the qubits touched by at least one gate.
std::vector<Qubit> used_qubits(const Circuit& c);

bool has_measurement(const Circuit& c);
bool has_macros(const Circuit& c);

/// The adjoint circuit: reversed order, each gate replaced by its inverse.
/// Throws Error(InvalidArgument) on MEASURE or MACRO.
Circuit inverse(const Circuit& c);

/// Copy with BARRIER gates removed.
Circuit without_barriers(const Circuit& c);

}  // namespace qforge
