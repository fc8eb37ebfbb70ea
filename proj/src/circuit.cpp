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

#include "qforge/circuit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <set>
#include <utility>

#include "qforge/error.hpp"

namespace qforge {

namespace {

struct KindInfo {
  GateType type;
  std::string_view name;
  int params;  // -1: variadic
  int arity;   // -1: variadic
};

constexpr std::array<KindInfo, 20> kKinds{{
    {GateType::X, "X", 0, 1},
    {GateType::Y, "Y", 0, 1},
    {GateType::Z, "Z", 0, 1},
    {GateType::H, "H", 0, 1},
    {GateType::S, "S", 0, 1},
    {GateType::T, "T", 0, 1},
    {GateType::CNOT, "CNOT", 0, 2},
    {GateType::SWAP, "SWAP", 0, 2},
    {GateType::TOFFOLI, "TOFFOLI", 0, 3},
    {GateType::MEASURE, "MEASURE", 0, 1},
    {GateType::BARRIER, "BARRIER", 0, -1},
    {GateType::RX, "RX", 1, 1},
    {GateType::RY, "RY", 1, 1},
    {GateType::RZ, "RZ", 1, 1},
    {GateType::U1, "U1", 1, 1},
    {GateType::U2, "U2", 2, 1},
    {GateType::U3, "U3", 3, 1},
    {GateType::CRK, "CRK", 1, 2},
    {GateType::CPHASE, "CPHASE", 1, 2},
    {GateType::MACRO, "MACRO", -1, -1},
}};

const KindInfo& info(GateType type) {
  for (const auto& k : kKinds) {
    if (k.type == type) return k;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown gate type");
}

Gate make(GateType type, std::vector<double> params, std::vector<Qubit> qubits) {
  Gate g;
  g.type = type;
  g.params = std::move(params);
  g.qubits = std::move(qubits);
  validate_gate(g);
  return g;
}

}  // namespace

std::string_view gate_name(GateType type) { return info(type).name; }

std::optional<GateType> gate_type_from_name(std::string_view name) {
  for (const auto& k : kKinds) {
    if (k.name == name) return k.type;
  }
  return std::nullopt;
}

std::optional<std::size_t> param_count(GateType type) {
  const int p = info(type).params;
  if (p < 0) return std::nullopt;
  return static_cast<std::size_t>(p);
}

std::optional<std::size_t> qubit_arity(GateType type) {
  const int a = info(type).arity;
  if (a < 0) return std::nullopt;
  return static_cast<std::size_t>(a);
}

bool is_single_qubit_unitary(GateType type) {
  return type != GateType::MEASURE && info(type).arity == 1;
}

unsigned Gate::crk_order() const {
  if (type != GateType::CRK) throw Error(ErrorCode::InvalidArgument, "crk_order on non-CRK gate");
  return static_cast<unsigned>(params.at(0));
}

void validate_gate(const Gate& gate) {
  const auto name = std::string(gate_name(gate.type));
  if (auto arity = qubit_arity(gate.type); arity && gate.qubits.size() != *arity) {
    throw Error(ErrorCode::InvalidArgument, name + " expects " + std::to_string(*arity) +
                                                " qubit operand(s), got " +
                                                std::to_string(gate.qubits.size()));
  }
  if (auto np = param_count(gate.type); np && gate.params.size() != *np) {
    throw Error(ErrorCode::InvalidArgument, name + " expects " + std::to_string(*np) +
                                                " parameter(s), got " +
                                                std::to_string(gate.params.size()));
  }
  if (gate.type == GateType::BARRIER && gate.qubits.empty()) {
    throw Error(ErrorCode::InvalidArgument, "BARRIER needs at least one qubit");
  }
  if (gate.type == GateType::MACRO && gate.macro_name.empty()) {
    throw Error(ErrorCode::InvalidArgument, "MACRO gate without a name");
  }
  if (gate.type == GateType::CRK) {
    const double k = gate.params[0];
    if (!(k >= 1.0) || k != static_cast<double>(static_cast<unsigned>(k))) {
      throw Error(ErrorCode::InvalidArgument, "CRK order must be a positive integer");
    }
  }
  const std::size_t want_cbits = gate.type == GateType::MEASURE ? 1 : 0;
  if (gate.cbits.size() != want_cbits) {
    throw Error(ErrorCode::InvalidArgument, name + " has a wrong number of classical operands");
  }
  std::set<Qubit> seen(gate.qubits.begin(), gate.qubits.end());
  if (seen.size() != gate.qubits.size()) {
    throw Error(ErrorCode::InvalidArgument, name + " operands must be distinct qubits");
  }
}

namespace gates {
Gate x(Qubit q) { return make(GateType::X, {}, {q}); }
Gate y(Qubit q) { return make(GateType::Y, {}, {q}); }
Gate z(Qubit q) { return make(GateType::Z, {}, {q}); }
Gate h(Qubit q) { return make(GateType::H, {}, {q}); }
Gate s(Qubit q) { return make(GateType::S, {}, {q}); }
Gate t(Qubit q) { return make(GateType::T, {}, {q}); }
Gate rx(double theta, Qubit q) { return make(GateType::RX, {theta}, {q}); }
Gate ry(double theta, Qubit q) { return make(GateType::RY, {theta}, {q}); }
Gate rz(double theta, Qubit q) { return make(GateType::RZ, {theta}, {q}); }
Gate u1(double lambda, Qubit q) { return make(GateType::U1, {lambda}, {q}); }
Gate u2(double phi, double lambda, Qubit q) { return make(GateType::U2, {phi, lambda}, {q}); }
Gate u3(double theta, double phi, double lambda, Qubit q) {
  return make(GateType::U3, {theta, phi, lambda}, {q});
}
Gate cnot(Qubit control, Qubit target) { return make(GateType::CNOT, {}, {control, target}); }
Gate swap(Qubit a, Qubit b) { return make(GateType::SWAP, {}, {a, b}); }
Gate toffoli(Qubit c0, Qubit c1, Qubit target) {
  return make(GateType::TOFFOLI, {}, {c0, c1, target});
}
Gate crk(unsigned k, Qubit control, Qubit target) {
  return make(GateType::CRK, {static_cast<double>(k)}, {control, target});
}
Gate cphase(double lambda, Qubit control, Qubit target) {
  return make(GateType::CPHASE, {lambda}, {control, target});
}
Gate measure(Qubit q, Cbit c) {
  Gate g;
  g.type = GateType::MEASURE;
  g.qubits = {q};
  g.cbits = {c};
  validate_gate(g);
  return g;
}
Gate barrier(std::vector<Qubit> qubits) { return make(GateType::BARRIER, {}, std::move(qubits)); }
Gate macro(std::string name, std::vector<double> params, std::vector<Qubit> qubits) {
  Gate g;
  g.type = GateType::MACRO;
  g.macro_name = std::move(name);
  g.params = std::move(params);
  g.qubits = std::move(qubits);
  validate_gate(g);
  return g;
}
}  // namespace gates

Circuit& Circuit::append(Gate gate) {
  validate_gate(gate);
  for (Qubit q : gate.qubits) {
    if (q >= num_qubits_) {
      throw Error(ErrorCode::InvalidArgument,
                  "qubit index " + std::to_string(q) + " out of range for " +
                      std::to_string(num_qubits_) + "-qubit circuit");
    }
  }
  for (Cbit c : gate.cbits) {
    if (c >= num_cbits_) {
      throw Error(ErrorCode::InvalidArgument,
                  "classical bit index " + std::to_string(c) + " out of range");
    }
  }
  gates_.push_back(std::move(gate));
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.num_qubits_ > num_qubits_ || other.num_cbits_ > num_cbits_) {
    throw Error(ErrorCode::InvalidArgument, "appended circuit is wider than the target");
  }
  for (const auto& g : other.gates_) append(g);
  return *this;
}

Circuit& Circuit::append_mapped(const Circuit& other, const std::vector<Qubit>& qubit_map,
                                const std::vector<Cbit>& cbit_map) {
  if (qubit_map.size() < other.num_qubits_) {
    throw Error(ErrorCode::InvalidArgument, "qubit map shorter than source register");
  }
  for (Gate g : other.gates_) {
    for (auto& q : g.qubits) q = qubit_map[q];
    for (auto& c : g.cbits) {
      if (c >= cbit_map.size()) {
        throw Error(ErrorCode::InvalidArgument, "classical bit map shorter than source register");
      }
      c = cbit_map[c];
    }
    append(std::move(g));
  }
  return *this;
}

Qubit Circuit::add_qubits(std::size_t count) {
  const Qubit first = num_qubits_;
  num_qubits_ += count;
  return first;
}

void Circuit::set_num_cbits(std::size_t count) {
  for (const auto& g : gates_) {
    for (Cbit c : g.cbits) {
      if (c >= count) throw Error(ErrorCode::InvalidArgument, "shrinking classical register below use");
    }
  }
  num_cbits_ = count;
}

std::vector<Qubit> used_qubits(const Circuit& c) {
  std::set<Qubit> seen;
  for (const auto& g : c) seen.insert(g.qubits.begin(), g.qubits.end());
  return {seen.begin(), seen.end()};
}

std::size_t width(const Circuit& c) { return used_qubits(c).size(); }

bool has_measurement(const Circuit& c) {
  return std::any_of(c.begin(), c.end(), [](const Gate& g) { return g.type == GateType::MEASURE; });
}

bool has_macros(const Circuit& c) {
  return std::any_of(c.begin(), c.end(), [](const Gate& g) { return g.type == GateType::MACRO; });
}

Circuit inverse(const Circuit& c) {
  using std::numbers::pi;
  Circuit out(c.num_qubits(), c.num_cbits());
  for (auto it = c.gates().rbegin(); it != c.gates().rend(); ++it) {
    const Gate& g = *it;
    const auto& q = g.qubits;
    switch (g.type) {
      case GateType::X:
      case GateType::Y:
      case GateType::Z:
      case GateType::H:
      case GateType::CNOT:
      case GateType::SWAP:
      case GateType::TOFFOLI:
      case GateType::BARRIER:
        out.append(g);
        break;
      case GateType::S: out.u1(-pi / 2, q[0]); break;
      case GateType::T: out.u1(-pi / 4, q[0]); break;
      case GateType::RX: out.rx(-g.params[0], q[0]); break;
      case GateType::RY: out.ry(-g.params[0], q[0]); break;
      case GateType::RZ: out.rz(-g.params[0], q[0]); break;
      case GateType::U1: out.u1(-g.params[0], q[0]); break;
      // U2(phi, lambda) = U3(pi/2, phi, lambda); U3(t,p,l)^dag = U3(-t,-l,-p)
      case GateType::U2: out.u3(-pi / 2, -g.params[1], -g.params[0], q[0]); break;
      case GateType::U3: out.u3(-g.params[0], -g.params[2], -g.params[1], q[0]); break;
      case GateType::CRK:
        out.cphase(-2.0 * pi / std::ldexp(1.0, static_cast<int>(g.crk_order())), q[0], q[1]);
        break;
      case GateType::CPHASE: out.cphase(-g.params[0], q[0], q[1]); break;
      case GateType::MEASURE:
        throw Error(ErrorCode::InvalidArgument, "cannot invert a circuit containing MEASURE");
      case GateType::MACRO:
        throw Error(ErrorCode::InvalidArgument,
                    "cannot invert unexpanded macro '" + g.macro_name + "'");
    }
  }
  return out;
}

Circuit without_barriers(const Circuit& c) {
  Circuit out(c.num_qubits(), c.num_cbits());
  for (const auto& g : c) {
    if (g.type != GateType::BARRIER) out.append(g);
  }
  return out;
}

}  // namespace qforge
