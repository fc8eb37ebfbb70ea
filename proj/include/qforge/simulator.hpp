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
 * @file simulator.hpp
 * @brief Dense statevector simulation, unitary extraction and shot sampling
 * with a bit-flip gate channel and per-qubit readout confusion.
 *
 * Basis-state index convention: qubit 0 is the most significant bit.
 */

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qforge/circuit.hpp"

namespace qforge {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Matrix = Eigen::MatrixXcd;

inline constexpr std::size_t kMaxStatevectorQubits = 24;
inline constexpr std::size_t kMaxUnitaryQubits = 10;

/// 2x2 matrix of a single-qubit unitary gate kind.
Matrix2 gate_matrix(const Gate& gate);

class StateVector {
 public:
  /// |0...0> on n qubits.
  explicit StateVector(std::size_t num_qubits);
  /// Computational basis state |index>.
  static StateVector basis(std::size_t num_qubits, std::size_t index);
  /// Adopts raw amplitudes; size must be a power of two.
  static StateVector from_amplitudes(std::vector<Complex> amplitudes);

  std::size_t num_qubits() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  const std::vector<Complex>& amplitudes() const noexcept { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;
  std::vector<double> probabilities() const;

  /// Applies one unitary gate. MEASURE, BARRIER and MACRO are rejected.
  void apply(const Gate& gate);
  void apply_x(Qubit q);

  /// Probability that qubit q reads 1.
  double probability_one(Qubit q) const;
  /// Projects qubit q onto `outcome` and renormalizes.
  void collapse(Qubit q, bool outcome);

 private:
  void apply_1q(const Matrix2& m, Qubit target);
  void apply_controlled_1q(std::span<const Qubit> controls, const Matrix2& m, Qubit target);
  void apply_swap(Qubit a, Qubit b);
  std::size_t mask(Qubit q) const { return std::size_t{1} << (n_ - 1 - q); }

  std::size_t n_;
  std::vector<Complex> amps_;
};

/// U_c |0...0>, noiseless. Errors: TooManyQubits, MeasurementPresent.
StateVector statevector(const Circuit& c);
/// U_c |initial>.
StateVector statevector(const Circuit& c, StateVector initial);

/// Column j is U_c |j>. Barriers are ignored. Errors: TooManyQubits,
/// MeasurementPresent.
Matrix unitary_of(const Circuit& c);

/// |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

/// max |A - e^{i phi} B| over entries, phi chosen from the largest entry of B.
double distance_up_to_global_phase(const Matrix& a, const Matrix& b);

/// Unitary that moves logical qubit l to physical position to_physical[l]
/// (both registers have to_physical.size() qubits).
Matrix permutation_unitary(const std::vector<Qubit>& to_physical);

/// P(measured | true) for one qubit: entry [measured][true].
struct ReadoutConfusion {
  double p[2][2] = {{1.0, 0.0}, {0.0, 1.0}};

  static ReadoutConfusion symmetric(double flip);
  static ReadoutConfusion asymmetric(double p_meas1_given0, double p_meas0_given1);
  /// Throws Error(InvalidArgument) unless both columns are stochastic.
  void validate() const;
};

struct NoiseModel {
  /// Indexed by circuit qubit; missing entries mean perfect readout.
  std::vector<ReadoutConfusion> readout;
  /// Probability of an X on each operand qubit after every gate.
  double gate_flip = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Measurement histogram keyed by classical-register bitstring (cbit 0 is
/// leftmost; unmeasured bits read 0).
struct Counts {
  std::size_t shots = 0;
  std::map<std::string, std::size_t> histogram;

  std::size_t count(const std::string& bits) const;
  double frequency(const std::string& bits) const;
  /// Total of all histogram entries.
  std::size_t total() const;

  friend bool operator==(const Counts&, const Counts&) = default;
};

/// Samples `shots` executions. Deterministic for a given seed (the RNG is
/// std::mt19937_64 seeded with NoiseModel::seed). Only qubits touched by the
/// circuit are simulated, so wide device registers stay cheap.
/// Errors: NoMeasurement, TooManyQubits.
Counts run(const Circuit& c, std::size_t shots, const NoiseModel& noise = {});

/// {"shots": n, "counts": {"0101": 123, ...}}
std::string counts_to_json(const Counts& counts);
/// Also accepts a bare {"0101": 123, ...} object. Throws
/// Error(CorruptProfile) on schema violations.
Counts counts_from_json(std::string_view text);

/// Bitstring -> basis index under the global convention (leftmost = MSB).
std::size_t bitstring_to_index(std::string_view bits);
std::string index_to_bitstring(std::size_t index, std::size_t num_bits);

}  // namespace qforge
