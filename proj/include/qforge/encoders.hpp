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
 * @file encoders.hpp
 * @brief Classical data -> state-preparation circuits: basis (fixed point),
 * angle, amplitude and Schmidt-decomposition encodings, plus dataset
 * superposition targets.
 */

#pragma once

#include <span>
#include <string>
#include <vector>

#include "qforge/circuit.hpp"
#include "qforge/simulator.hpp"

namespace qforge {

enum class Rounding { TowardZero, HalfUp };

/// Fixed-point layout of one real: sign bit, n+1 integer bits, k fraction
/// bits, i.e. n + k + 2 bits.
struct FixedPointFormat {
  int integer_bits = 0;   // n
  int fraction_bits = 0;  // k
  Rounding rounding = Rounding::TowardZero;

  std::size_t width() const {
    return static_cast<std::size_t>(integer_bits) + static_cast<std::size_t>(fraction_bits) + 2;
  }
};

struct BasisEncoding {
  std::string bits;  // one character per qubit, qubit 0 first
  Circuit circuit;   // X on qubit i iff bits[i] == '1'
};

/// Layout: sign ('1' for negative), integer bits b_n..b_0, fraction bits
/// b_-1..b_-k. Magnitudes are truncated toward zero unless HalfUp is set.
/// Errors: Overflow when |x| needs more than n+1 integer bits.
BasisEncoding encode_basis(double x, const FixedPointFormat& fmt);

/// Concatenation of encode_basis over the components.
BasisEncoding encode_basis_vector(std::span<const double> xs, const FixedPointFormat& fmt);

/// (1/sqrt m) sum over the m bitstrings. Errors: DuplicateElement,
/// LengthMismatch, InvalidArgument (empty set or non-binary characters).
StateVector dataset_superposition(std::span<const std::string> dataset);

/// RY(2 x_i) on qubit i: prepares (cos x_1, sin x_1) (x) ... (x) (cos x_n, sin x_n).
Circuit encode_angle(std::span<const double> xs);

/// Real amplitude encoding over max(1, ceil(log2 n)) qubits (zero padded).
/// Built as a binary tree of uniformly controlled RY rotations (Gray-code
/// multiplexers of RY + CNOT); the last tree level uses signed angles so
/// negative amplitudes need no extra phase gates. Error: ZeroVector.
Circuit encode_amplitude(std::span<const double> xs);

/// Amplitude vector the encoder targets (x / |x|, zero padded).
std::vector<double> amplitude_target(std::span<const double> xs);

struct SchmidtDecomposition {
  std::vector<double> alphas;                // nonincreasing, min(m1, m2) entries
  std::vector<std::vector<Complex>> u;       // u[i] in V (length m1)
  std::vector<std::vector<Complex>> v;       // v[i] in W (length m2)
  std::size_t rank = 0;                      // alphas above 1e-10 * alphas[0]

  bool entangled() const { return rank > 1; }
  /// sum_i alpha_i u_i (x) v_i
  std::vector<Complex> reconstruct() const;
};

/// Reshapes x into the m1 x m2 coefficient matrix (V index major) and takes
/// its SVD. Coefficients below the rank tolerance are reported as 0.
/// Errors: ShapeMismatch, NotNormalized.
SchmidtDecomposition schmidt_decompose(std::span<const Complex> x, std::size_t dim_v,
                                       std::size_t dim_w);

/// Two-qubit preparation: A on qubit 0, CNOT(0,1), U on qubit 0, conj(V)
/// on qubit 1, each single-qubit block as its Z-Y rotation sequence.
/// Matches x up to global phase. Errors: UnsupportedSize, NotNormalized.
Circuit schmidt_prepare_circuit(std::span<const Complex> x);

}  // namespace qforge
