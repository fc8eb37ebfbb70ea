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


// Test-only reference implementations. Nothing here calls into the
// simulator, so library results can be checked against it independently.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "qforge/circuit.hpp"

namespace qforge::testing {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;
inline constexpr double kPi = std::numbers::pi;

inline Eigen::Matrix2cd u3_matrix(double t, double p, double l) {
  const C i(0, 1);
  Eigen::Matrix2cd m;
  m << std::cos(t / 2), -std::exp(i * l) * std::sin(t / 2), std::exp(i * p) * std::sin(t / 2),
      std::exp(i * (l + p)) * std::cos(t / 2);
  return m;
}

inline Eigen::Matrix2cd phase_matrix(double lambda) {
  Eigen::Matrix2cd m;
  m << 1, 0, 0, std::exp(C(0, lambda));
  return m;
}

/// Textbook 2x2 matrices written out independently of the simulator.
inline Eigen::Matrix2cd reference_1q(const Gate& g) {
  const C i(0, 1);
  const double r = 1 / std::sqrt(2.0);
  Eigen::Matrix2cd m;
  switch (g.type) {
    case GateType::X: m << 0, 1, 1, 0; break;
    case GateType::Y: m << 0, -i, i, 0; break;
    case GateType::Z: m << 1, 0, 0, -1; break;
    case GateType::H: m << r, r, r, -r; break;
    case GateType::S: m << 1, 0, 0, i; break;
    case GateType::T: m << 1, 0, 0, std::exp(i * kPi / 4.0); break;
    case GateType::RX: {
      const double t = g.params[0];
      m << std::cos(t / 2), -i * std::sin(t / 2), -i * std::sin(t / 2), std::cos(t / 2);
      break;
    }
    case GateType::RY: {
      const double t = g.params[0];
      m << std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2);
      break;
    }
    case GateType::RZ: {
      const double t = g.params[0];
      m << std::exp(-i * t / 2.0), 0, 0, std::exp(i * t / 2.0);
      break;
    }
    case GateType::U1: m = phase_matrix(g.params[0]); break;
    case GateType::U2: m = u3_matrix(kPi / 2, g.params[0], g.params[1]); break;
    case GateType::U3: m = u3_matrix(g.params[0], g.params[1], g.params[2]); break;
    default: throw std::logic_error("not a 1-qubit gate");
  }
  return m;
}

inline std::size_t bit(std::size_t index, std::size_t n, Qubit q) { return (index >> (n - 1 - q)) & 1U; }

/// Full 2^n matrix of one gate built by explicit basis enumeration.
inline Mat reference_gate(const Gate& g, std::size_t n) {
  const std::size_t dim = std::size_t{1} << n;
  Mat u = Mat::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  auto set = [&](std::size_t row, std::size_t col, C v) {
    u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += v;
  };
  const auto& q = g.qubits;
  for (std::size_t col = 0; col < dim; ++col) {
    switch (g.type) {
      case GateType::BARRIER: set(col, col, 1); break;
      case GateType::CNOT:
        set(bit(col, n, q[0]) ? col ^ (std::size_t{1} << (n - 1 - q[1])) : col, col, 1);
        break;
      case GateType::TOFFOLI:
        set(bit(col, n, q[0]) && bit(col, n, q[1]) ? col ^ (std::size_t{1} << (n - 1 - q[2])) : col,
            col, 1);
        break;
      case GateType::SWAP: {
        std::size_t row = col;
        if (bit(col, n, q[0]) != bit(col, n, q[1])) {
          row ^= (std::size_t{1} << (n - 1 - q[0])) | (std::size_t{1} << (n - 1 - q[1]));
        }
        set(row, col, 1);
        break;
      }
      case GateType::CRK:
      case GateType::CPHASE: {
        const double lambda =
            g.type == GateType::CRK ? 2 * kPi / std::ldexp(1.0, static_cast<int>(g.params[0])) : g.params[0];
        set(col, col, bit(col, n, q[0]) && bit(col, n, q[1]) ? std::exp(C(0, lambda)) : C(1));
        break;
      }
      default: {
        const Eigen::Matrix2cd m = reference_1q(g);
        const std::size_t b = bit(col, n, q[0]);
        const std::size_t mask = std::size_t{1} << (n - 1 - q[0]);
        for (std::size_t out = 0; out < 2; ++out) {
          const std::size_t row = out ? (col | mask) : (col & ~mask);
          set(row, col, m(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(b)));
        }
      }
    }
  }
  return u;
}

inline Mat reference_unitary(const Circuit& c) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << c.num_qubits());
  Mat u = Mat::Identity(dim, dim);
  for (const Gate& g : c) u = reference_gate(g, c.num_qubits()) * u;
  return u;
}

/// min over global phase of the max entry difference.
inline double phase_distance(const Mat& a, const Mat& b) {
  Eigen::Index r = 0, col = 0;
  b.cwiseAbs().maxCoeff(&r, &col);
  const C phase = a(r, col) / b(r, col);
  const C unit = phase / std::abs(phase);
  return (a - unit * b).cwiseAbs().maxCoeff();
}

/// Random circuit over the unitary gate set (no MEASURE/BARRIER/MACRO).
inline Circuit random_circuit(std::mt19937_64& rng, std::size_t n, std::size_t gates,
                              bool allow_three = true) {
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_int_distribution<std::size_t> pick_q(0, n - 1);
  Circuit c(n);
  std::vector<GateType> kinds = {GateType::X,  GateType::Y,  GateType::Z,  GateType::H,
                                 GateType::S,  GateType::T,  GateType::RX, GateType::RY,
                                 GateType::RZ, GateType::U1, GateType::U2, GateType::U3};
  if (n >= 2) {
    kinds.insert(kinds.end(), {GateType::CNOT, GateType::CNOT, GateType::SWAP, GateType::CRK,
                               GateType::CPHASE});
  }
  if (n >= 3 && allow_three) kinds.push_back(GateType::TOFFOLI);
  std::uniform_int_distribution<std::size_t> pick_k(0, kinds.size() - 1);
  auto distinct = [&](std::size_t count) {
    std::vector<Qubit> qs;
    while (qs.size() < count) {
      const Qubit q = pick_q(rng);
      if (std::find(qs.begin(), qs.end(), q) == qs.end()) qs.push_back(q);
    }
    return qs;
  };
  for (std::size_t i = 0; i < gates; ++i) {
    const GateType t = kinds[pick_k(rng)];
    switch (t) {
      case GateType::CNOT: { auto q = distinct(2); c.cx(q[0], q[1]); break; }
      case GateType::SWAP: { auto q = distinct(2); c.swap(q[0], q[1]); break; }
      case GateType::CRK: {
        auto q = distinct(2);
        c.crk(static_cast<unsigned>(1 + rng() % 4), q[0], q[1]);
        break;
      }
      case GateType::CPHASE: { auto q = distinct(2); c.cphase(angle(rng), q[0], q[1]); break; }
      case GateType::TOFFOLI: { auto q = distinct(3); c.ccx(q[0], q[1], q[2]); break; }
      case GateType::RX: c.rx(angle(rng), pick_q(rng)); break;
      case GateType::RY: c.ry(angle(rng), pick_q(rng)); break;
      case GateType::RZ: c.rz(angle(rng), pick_q(rng)); break;
      case GateType::U1: c.u1(angle(rng), pick_q(rng)); break;
      case GateType::U2: c.u2(angle(rng), angle(rng), pick_q(rng)); break;
      case GateType::U3: c.u3(angle(rng), angle(rng), angle(rng), pick_q(rng)); break;
      default: {
        Gate g;
        g.type = t;
        g.qubits = {pick_q(rng)};
        c.append(g);
      }
    }
  }
  return c;
}

/// Reference DAG depth: longest chain of gates linked by shared qubits.
inline std::size_t reference_depth(const Circuit& c) {
  std::vector<std::size_t> finish(c.num_qubits(), 0);
  std::size_t best = 0;
  for (const Gate& g : c) {
    std::size_t start = 0;
    for (Qubit q : g.qubits) start = std::max(start, finish[q]);
    for (Qubit q : g.qubits) finish[q] = start + 1;
    best = std::max(best, start + 1);
  }
  return best;
}

}  // namespace qforge::testing
