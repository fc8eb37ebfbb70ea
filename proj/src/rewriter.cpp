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

#include "qforge/rewriter.hpp"

#include <cmath>
#include <numbers>

#include "qforge/error.hpp"
#include "qforge/schedule.hpp"

namespace qforge {

namespace {

using std::numbers::pi;
constexpr Complex kI{0.0, 1.0};
constexpr double kPatternTol = 1e-9;

// Wraps into (-pi, pi] and snaps values within kPatternTol of a multiple of
// pi/4 onto it, so nominal angles come out exact.
double canonical_angle(double a) {
  a = std::remainder(a, 2.0 * pi);
  const double quarters = std::round(a / (pi / 4));
  if (std::abs(a - quarters * (pi / 4)) < kPatternTol) {
    switch (static_cast<int>(quarters)) {
      case 0: return 0.0;
      case 1: return pi / 4;
      case 2: return pi / 2;
      case 3: return 3 * pi / 4;
      case 4:
      case -4: return pi;
      case -1: return -pi / 4;
      case -2: return -pi / 2;
      case -3: return -3 * pi / 4;
      default: break;
    }
  }
  if (a <= -pi) a += 2.0 * pi;
  return a;
}

Matrix2 rz(double a) {
  Matrix2 m;
  m << std::exp(-kI * (a / 2)), 0, 0, std::exp(kI * (a / 2));
  return m;
}

Matrix2 ry(double a) {
  Matrix2 m;
  m << std::cos(a / 2), -std::sin(a / 2), std::sin(a / 2), std::cos(a / 2);
  return m;
}

}  // namespace

Matrix2 ZYDecomposition::matrix() const {
  return std::exp(kI * alpha) * rz(beta) * ry(gamma) * rz(delta);
}

ZYDecomposition zy_decompose(const Matrix2& u) {
  if ((u.adjoint() * u - Matrix2::Identity()).cwiseAbs().maxCoeff() > 1e-9) {
    throw Error(ErrorCode::NotUnitary, "matrix is not unitary within 1e-9");
  }
  ZYDecomposition out;
  const Complex det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
  out.alpha = std::arg(det) / 2;
  const Matrix2 v = std::exp(-kI * out.alpha) * u;  // in SU(2)
  const double cos_part = std::abs(v(0, 0));
  const double sin_part = std::abs(v(1, 0));
  out.gamma = 2.0 * std::atan2(sin_part, cos_part);
  constexpr double kGimbal = 1e-12;
  if (sin_part < kGimbal) {
    out.gamma = 0.0;
    out.beta = 2.0 * std::arg(v(1, 1));
  } else if (cos_part < kGimbal) {
    out.gamma = pi;
    out.beta = 2.0 * std::arg(v(1, 0));
  } else {
    out.beta = std::arg(v(1, 1)) + std::arg(v(1, 0));
    out.delta = std::arg(v(1, 1)) - std::arg(v(1, 0));
  }
  return out;
}

Circuit zy_circuit(const ZYDecomposition& zy, std::size_t num_qubits, Qubit q) {
  Circuit c(num_qubits);
  if (zy.delta != 0.0) c.rz(zy.delta, q);
  if (zy.gamma != 0.0) c.ry(zy.gamma, q);
  if (zy.beta != 0.0) c.rz(zy.beta, q);
  return c;
}

NativeBasis::NativeBasis() : kinds_{GateType::U1, GateType::U2, GateType::U3, GateType::CNOT} {}

NativeBasis::NativeBasis(std::set<GateType> kinds) : kinds_(std::move(kinds)) {
  if (!allows(GateType::CNOT)) throw Error(ErrorCode::InvalidArgument, "native basis needs CNOT");
  if (!allows(GateType::U3) && !(allows(GateType::RZ) && allows(GateType::RY))) {
    throw Error(ErrorCode::InvalidArgument, "native basis needs U3 or the RZ/RY pair");
  }
}

namespace {

// U3(theta, phi, lambda) with the cheapest allowed kind. Exact-angle tests
// only, so table-driven inputs come out bit-exact.
void emit_u(Circuit& out, const NativeBasis& basis, double theta, double phi, double lambda, Qubit q) {
  if (basis.allows(GateType::U3) || basis.allows(GateType::U1) || basis.allows(GateType::U2)) {
    if (theta == 0.0 && basis.allows(GateType::U1)) {
      out.u1(phi + lambda, q);
      return;
    }
    if (theta == pi / 2 && basis.allows(GateType::U2)) {
      out.u2(phi, lambda, q);
      return;
    }
    if (basis.allows(GateType::U3)) {
      out.u3(theta, phi, lambda, q);
      return;
    }
  }
  // U3(t,p,l) = e^{i(p+l)/2} Rz(p) Ry(t) Rz(l)
  if (lambda != 0.0) out.rz(lambda, q);
  if (theta != 0.0) out.ry(theta, q);
  if (phi != 0.0) out.rz(phi, q);
}

void lower_1q(Circuit& out, const Gate& g, const NativeBasis& basis) {
  const Qubit q = g.qubits[0];
  const auto& p = g.params;
  switch (g.type) {
    case GateType::H: emit_u(out, basis, pi / 2, 0.0, pi, q); return;
    case GateType::X: emit_u(out, basis, pi, 0.0, pi, q); return;
    case GateType::Y: emit_u(out, basis, pi, pi / 2, pi / 2, q); return;
    case GateType::Z: emit_u(out, basis, 0.0, 0.0, pi, q); return;
    case GateType::S: emit_u(out, basis, 0.0, 0.0, pi / 2, q); return;
    case GateType::T: emit_u(out, basis, 0.0, 0.0, pi / 4, q); return;
    case GateType::RX: emit_u(out, basis, p[0], -pi / 2, pi / 2, q); return;
    case GateType::RY: emit_u(out, basis, p[0], 0.0, 0.0, q); return;
    case GateType::RZ: emit_u(out, basis, 0.0, 0.0, p[0], q); return;
    case GateType::U1: emit_u(out, basis, 0.0, 0.0, p[0], q); return;
    case GateType::U2: emit_u(out, basis, pi / 2, p[0], p[1], q); return;
    case GateType::U3: emit_u(out, basis, p[0], p[1], p[2], q); return;
    default: break;
  }
  throw Error(ErrorCode::UnloweredGate, std::string(gate_name(g.type)));
}

void append_toffoli(Circuit& out, Qubit a, Qubit b, Qubit c) {
  const double tdg = -pi / 4;
  out.h(c).cx(b, c).u1(tdg, c).cx(a, c).t(c).cx(b, c).u1(tdg, c).cx(a, c);
  out.t(b).t(c).h(c).cx(a, b).t(a).u1(tdg, b).cx(a, b);
}

}  // namespace

Circuit single_qubit_gate_for(const Matrix2& u, const NativeBasis& basis, std::size_t num_qubits,
                              Qubit q) {
  Circuit out(num_qubits);
  if (std::abs(u(0, 1)) < kPatternTol && std::abs(u(1, 0)) < kPatternTol) {
    const double lambda = canonical_angle(std::arg(u(1, 1)) - std::arg(u(0, 0)));
    emit_u(out, basis, 0.0, 0.0, lambda, q);
    return out;
  }
  const ZYDecomposition zy = zy_decompose(u);
  double theta = zy.gamma;
  if (std::abs(theta - pi / 2) < kPatternTol) theta = pi / 2;
  if (std::abs(theta - pi) < kPatternTol) theta = pi;
  emit_u(out, basis, theta, canonical_angle(zy.beta), canonical_angle(zy.delta), q);
  return out;
}

Circuit fuse_1q_runs(const Circuit& c) {
  Circuit out(c.num_qubits(), c.num_cbits());
  std::vector<std::vector<Gate>> pending(c.num_qubits());
  const NativeBasis basis;

  auto flush = [&](Qubit q) {
    auto& run = pending[q];
    if (run.size() == 1) {
      out.append(run.front());
    } else if (run.size() > 1) {
      Matrix2 product = Matrix2::Identity();
      for (const auto& g : run) product = gate_matrix(g) * product;
      const bool diagonal = std::abs(product(0, 1)) < kPatternTol && std::abs(product(1, 0)) < kPatternTol;
      const bool identity =
          diagonal && canonical_angle(std::arg(product(1, 1)) - std::arg(product(0, 0))) == 0.0;
      if (!identity) out.append(single_qubit_gate_for(product, basis, c.num_qubits(), q));
    }
    run.clear();
  };

  for (const auto& g : c) {
    if (is_single_qubit_unitary(g.type)) {
      pending[g.qubits[0]].push_back(g);
      continue;
    }
    for (Qubit q : g.qubits) flush(q);
    out.append(g);
  }
  for (Qubit q = 0; q < c.num_qubits(); ++q) flush(q);
  return out;
}

Circuit decompose_multiqubit(const Circuit& c) {
  Circuit out(c.num_qubits(), c.num_cbits());
  for (const auto& g : c) {
    if (g.type == GateType::TOFFOLI) {
      append_toffoli(out, g.qubits[0], g.qubits[1], g.qubits[2]);
    } else if (g.type == GateType::MACRO && g.qubits.size() > 2) {
      throw Error(ErrorCode::UnloweredGate, "macro '" + g.macro_name + "' must be expanded first");
    } else {
      out.append(g);
    }
  }
  return out;
}

Circuit to_native_basis(const Circuit& c, const NativeBasis& basis) {
  Circuit out(c.num_qubits(), c.num_cbits());
  for (const auto& g : c) {
    if (g.type == GateType::MEASURE || g.type == GateType::BARRIER || basis.allows(g.type)) {
      out.append(g);
      continue;
    }
    if (is_single_qubit_unitary(g.type)) {
      lower_1q(out, g, basis);
      continue;
    }
    switch (g.type) {
      case GateType::SWAP: {
        const Qubit a = g.qubits[0], b = g.qubits[1];
        out.cx(a, b).cx(b, a).cx(a, b);
        break;
      }
      case GateType::CRK:
      case GateType::CPHASE: {
        const double lambda = g.type == GateType::CRK
                                  ? 2.0 * pi / std::ldexp(1.0, static_cast<int>(g.crk_order()))
                                  : g.params[0];
        const Qubit ctl = g.qubits[0], tgt = g.qubits[1];
        emit_u(out, basis, 0.0, 0.0, lambda / 2, ctl);
        out.cx(ctl, tgt);
        emit_u(out, basis, 0.0, 0.0, -lambda / 2, tgt);
        out.cx(ctl, tgt);
        emit_u(out, basis, 0.0, 0.0, lambda / 2, tgt);
        break;
      }
      case GateType::TOFFOLI: {
        Circuit tmp(c.num_qubits());
        append_toffoli(tmp, g.qubits[0], g.qubits[1], g.qubits[2]);
        out.append(to_native_basis(tmp, basis));
        break;
      }
      default:
        throw Error(ErrorCode::UnloweredGate,
                    "no lowering rule for " +
                        (g.type == GateType::MACRO ? "macro '" + g.macro_name + "'"
                                                   : std::string(gate_name(g.type))));
    }
  }
  return out;
}

PipelineResult rewrite_pipeline(const Circuit& c, const CouplingGraph& g, const NativeBasis& basis,
                                const MacroLibrary& lib, const PipelineOptions& options) {
  PipelineResult res;
  res.depth_before = depth(c);
  res.width_before = width(c);

  const Circuit expanded = has_macros(c) ? expand_macros(c, lib, options.macro_limit) : c;
  const Circuit two_qubit = decompose_multiqubit(expanded);
  const AllocationResult alloc = initial_allocation(two_qubit, g);
  RoutedCircuit routed = route(two_qubit, g, alloc.allocation);
  res.swaps_inserted = routed.swaps_inserted;
  res.allocation_weight = alloc.weight;
  res.success_estimate =
      success_estimate(routed.circuit, g, identity_allocation(g.num_qubits()), options.swap_cost);

  Circuit lowered = to_native_basis(lower_swaps(routed.circuit), basis);
  lowered = to_native_basis(fuse_1q_runs(lowered), basis);
  routed.circuit = schedule_asap(lowered).flatten();

  res.depth_after = depth(routed.circuit);
  res.width_after = width(routed.circuit);
  res.routed = std::move(routed);
  return res;
}

}  // namespace qforge
