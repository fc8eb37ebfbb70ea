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

#include "qforge/encoders.hpp"

#include <bit>
#include <cmath>
#include <set>

#include "qforge/error.hpp"
#include "qforge/rewriter.hpp"

namespace qforge {

BasisEncoding encode_basis(double x, const FixedPointFormat& fmt) {
  if (fmt.integer_bits < 0 || fmt.fraction_bits < 0) {
    throw Error(ErrorCode::InvalidArgument, "fixed-point bit counts must be non-negative");
  }
  const std::size_t magnitude_bits = fmt.width() - 1;
  if (magnitude_bits > 62) throw Error(ErrorCode::InvalidArgument, "fixed-point format too wide");
  if (!std::isfinite(x)) throw Error(ErrorCode::Overflow, "non-finite value");

  const double scaled = std::ldexp(std::abs(x), fmt.fraction_bits);
  const double rounded =
      fmt.rounding == Rounding::HalfUp ? std::floor(scaled + 0.5) : std::floor(scaled);
  const double limit = std::ldexp(1.0, static_cast<int>(magnitude_bits));
  if (rounded >= limit) {
    throw Error(ErrorCode::Overflow, std::to_string(x) + " needs more than " +
                                         std::to_string(fmt.integer_bits + 1) + " integer bits");
  }
  const auto magnitude = static_cast<std::uint64_t>(rounded);

  BasisEncoding out;
  out.bits.reserve(fmt.width());
  out.bits.push_back(x < 0 ? '1' : '0');
  for (std::size_t i = 0; i < magnitude_bits; ++i) {
    out.bits.push_back(((magnitude >> (magnitude_bits - 1 - i)) & 1U) ? '1' : '0');
  }
  out.circuit = Circuit(out.bits.size());
  for (std::size_t i = 0; i < out.bits.size(); ++i) {
    if (out.bits[i] == '1') out.circuit.x(i);
  }
  return out;
}

BasisEncoding encode_basis_vector(std::span<const double> xs, const FixedPointFormat& fmt) {
  BasisEncoding out;
  for (double x : xs) out.bits += encode_basis(x, fmt).bits;
  out.circuit = Circuit(out.bits.size());
  for (std::size_t i = 0; i < out.bits.size(); ++i) {
    if (out.bits[i] == '1') out.circuit.x(i);
  }
  return out;
}

StateVector dataset_superposition(std::span<const std::string> dataset) {
  if (dataset.empty()) throw Error(ErrorCode::InvalidArgument, "dataset must not be empty");
  const std::size_t n = dataset.front().size();
  std::set<std::string> seen;
  for (const auto& item : dataset) {
    if (item.size() != n) throw Error(ErrorCode::LengthMismatch, "dataset bitstrings differ in length");
    if (item.find_first_not_of("01") != std::string::npos) {
      throw Error(ErrorCode::InvalidArgument, "'" + item + "' is not a bitstring");
    }
    if (!seen.insert(item).second) throw Error(ErrorCode::DuplicateElement, "duplicate '" + item + "'");
  }
  std::vector<Complex> amps(std::size_t{1} << n, 0.0);
  const double a = 1.0 / std::sqrt(static_cast<double>(dataset.size()));
  for (const auto& item : dataset) amps[bitstring_to_index(item)] = a;
  return StateVector::from_amplitudes(std::move(amps));
}

Circuit encode_angle(std::span<const double> xs) {
  Circuit c(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) c.ry(2.0 * xs[i], i);
  return c;
}

std::vector<double> amplitude_target(std::span<const double> xs) {
  double norm2 = 0;
  for (double x : xs) norm2 += x * x;
  if (xs.empty() || norm2 == 0.0) throw Error(ErrorCode::ZeroVector, "cannot amplitude-encode a zero vector");
  std::size_t qubits = 1;
  while ((std::size_t{1} << qubits) < xs.size()) ++qubits;
  std::vector<double> out(std::size_t{1} << qubits, 0.0);
  const double norm = std::sqrt(norm2);
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = xs[i] / norm;
  return out;
}

namespace {

// RY on `target` whose angle is alphas[p] when controls (qubit 0 = MSB of p)
// hold p. Gray-code construction: RY(theta_i) then CNOT from the control
// whose bit flips between gray(i) and gray(i+1), cyclically.
void uniformly_controlled_ry(Circuit& c, const std::vector<Qubit>& controls, Qubit target,
                             const std::vector<double>& alphas) {
  const std::size_t k = controls.size();
  const std::size_t count = std::size_t{1} << k;
  bool any = false;
  for (double a : alphas) any = any || a != 0.0;
  if (!any) return;
  if (k == 0) {
    c.ry(alphas[0], target);
    return;
  }
  auto gray = [](std::size_t i) { return i ^ (i >> 1); };
  for (std::size_t i = 0; i < count; ++i) {
    double theta = 0;
    for (std::size_t p = 0; p < count; ++p) {
      const bool odd = std::popcount(p & gray(i)) & 1;
      theta += odd ? -alphas[p] : alphas[p];
    }
    theta /= static_cast<double>(count);
    if (theta != 0.0) c.ry(theta, target);
    const std::size_t flipped = gray(i) ^ gray((i + 1) % count);
    const auto bit = static_cast<std::size_t>(std::countr_zero(flipped));
    c.cx(controls[k - 1 - bit], target);
  }
}

double subtree_norm(const std::vector<double>& a, std::size_t begin, std::size_t end) {
  double s = 0;
  for (std::size_t i = begin; i < end; ++i) s += a[i] * a[i];
  return std::sqrt(s);
}

}  // namespace

Circuit encode_amplitude(std::span<const double> xs) {
  const std::vector<double> a = amplitude_target(xs);
  std::size_t m = 0;
  while ((std::size_t{1} << m) < a.size()) ++m;
  Circuit c(m);
  std::vector<Qubit> controls;
  for (std::size_t level = 0; level < m; ++level) {
    const std::size_t nodes = std::size_t{1} << level;
    const std::size_t span = a.size() >> level;  // amplitudes under one node
    std::vector<double> alphas(nodes, 0.0);
    for (std::size_t p = 0; p < nodes; ++p) {
      const std::size_t begin = p * span;
      if (level + 1 == m) {
        alphas[p] = 2.0 * std::atan2(a[begin + 1], a[begin]);
      } else {
        const double left = subtree_norm(a, begin, begin + span / 2);
        const double right = subtree_norm(a, begin + span / 2, begin + span);
        alphas[p] = 2.0 * std::atan2(right, left);
      }
    }
    uniformly_controlled_ry(c, controls, level, alphas);
    controls.push_back(level);
  }
  return c;
}

std::vector<Complex> SchmidtDecomposition::reconstruct() const {
  if (u.empty()) return {};
  const std::size_t m1 = u.front().size(), m2 = v.front().size();
  std::vector<Complex> out(m1 * m2, 0.0);
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    for (std::size_t i = 0; i < m1; ++i) {
      for (std::size_t j = 0; j < m2; ++j) out[i * m2 + j] += alphas[k] * u[k][i] * v[k][j];
    }
  }
  return out;
}

SchmidtDecomposition schmidt_decompose(std::span<const Complex> x, std::size_t dim_v,
                                       std::size_t dim_w) {
  if (dim_v == 0 || dim_w == 0 || x.size() != dim_v * dim_w) {
    throw Error(ErrorCode::ShapeMismatch, "vector length " + std::to_string(x.size()) +
                                              " is not " + std::to_string(dim_v) + " x " +
                                              std::to_string(dim_w));
  }
  double norm2 = 0;
  for (const auto& c : x) norm2 += std::norm(c);
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-9) {
    throw Error(ErrorCode::NotNormalized, "Schmidt decomposition expects a unit vector");
  }
  Matrix m(static_cast<Eigen::Index>(dim_v), static_cast<Eigen::Index>(dim_w));
  for (std::size_t i = 0; i < dim_v; ++i) {
    for (std::size_t j = 0; j < dim_w; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = x[i * dim_w + j];
    }
  }
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const Matrix& U = svd.matrixU();
  const Matrix& V = svd.matrixV();

  SchmidtDecomposition out;
  const double tol = 1e-10 * (sigma.size() > 0 ? sigma(0) : 0.0);
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    const bool kept = sigma(k) > tol;
    out.alphas.push_back(kept ? sigma(k) : 0.0);
    if (kept) ++out.rank;
    std::vector<Complex> uk(dim_v), vk(dim_w);
    for (std::size_t i = 0; i < dim_v; ++i) uk[i] = U(static_cast<Eigen::Index>(i), k);
    for (std::size_t j = 0; j < dim_w; ++j) vk[j] = std::conj(V(static_cast<Eigen::Index>(j), k));
    out.u.push_back(std::move(uk));
    out.v.push_back(std::move(vk));
  }
  return out;
}

Circuit schmidt_prepare_circuit(std::span<const Complex> x) {
  if (x.size() != 4) {
    throw Error(ErrorCode::UnsupportedSize,
                "Schmidt preparation circuits are built for 2-qubit states only");
  }
  const SchmidtDecomposition sd = schmidt_decompose(x, 2, 2);

  const double a1 = sd.alphas[0], a2 = sd.alphas[1];
  const double r = std::hypot(a1, a2);
  Matrix2 prep;
  prep << a1 / r, -a2 / r, a2 / r, a1 / r;
  Matrix2 u_block, v_block;
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 2; ++k) {
      u_block(i, k) = sd.u[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
      v_block(i, k) = sd.v[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
    }
  }

  Circuit c(2);
  c.append(zy_circuit(zy_decompose(prep), 2, 0));
  c.cx(0, 1);
  c.append(zy_circuit(zy_decompose(u_block), 2, 0));
  c.append(zy_circuit(zy_decompose(v_block), 2, 1));
  return c;
}

}  // namespace qforge
