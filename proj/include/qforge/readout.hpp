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
 * @file readout.hpp
 * @brief Readout-error mitigation by calibration-matrix unfolding.
 *
 * C(i, j) = P(measure i | true j); column j comes from the calibration run
 * that prepares basis state j. A measured distribution m relates to the
 * true one t by m = C t.
 */

#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qforge/circuit.hpp"
#include "qforge/simulator.hpp"
#include "qforge/timestamp.hpp"

namespace qforge {

/// Circuit s prepares |s> with X gates and measures every qubit into the
/// matching classical bit. Error: SizeOutOfRange unless 1 <= n <= 12.
std::vector<Circuit> calibration_circuits(std::size_t n);

struct CalibrationMatrix {
  std::size_t n = 0;
  Eigen::MatrixXd C;
  Timestamp timestamp;

  /// Throws Error(InvalidArgument) unless C is 2^n square, entries lie in
  /// [0,1] and every column sums to 1 within 1e-9.
  void validate() const;
};

/// Column s is the normalized histogram of the run of circuit s.
/// Error: MissingState(s) when some basis state has no run or zero shots.
CalibrationMatrix build_calibration_matrix(std::size_t n,
                                           std::span<const std::pair<std::size_t, Counts>> runs,
                                           Timestamp timestamp = {});

/// Runs every calibration circuit through the simulator. Circuit s uses
/// seed noise.seed + s.
CalibrationMatrix calibrate(std::size_t n, std::size_t shots, const NoiseModel& noise,
                            Timestamp timestamp = {});

/// Histogram as a dense vector indexed by basis state. Error:
/// LengthMismatch when a key is not n bits long.
std::vector<double> counts_to_vector(const Counts& counts, std::size_t n);

enum class UnfoldMode { Raw, ClipRenormalize };

/// Solves C t = m. LU is used when cond(C) <= 1e8, least squares otherwise.
/// ClipRenormalize zeroes negative entries and rescales to sum(m). Raw
/// output may contain small negative entries.
/// Errors: ShapeMismatch, SingularMatrix (rank-deficient C).
std::vector<double> unfold(std::span<const double> m, const CalibrationMatrix& cal,
                           UnfoldMode mode = UnfoldMode::Raw);

/// 1 - (p01 + p10) / 2.
double assignment_fidelity(double p01, double p10);

/// Half the L1 distance between two vectors normalized to sum 1.
double total_variation(std::span<const double> a, std::span<const double> b);

/// The record with the newest timestamp not after `at`. Error: NotFound.
const CalibrationMatrix& select_calibration(std::span<const CalibrationMatrix> history,
                                            Timestamp at);

/// {"n": k, "timestamp": iso8601, "columns": [[...], ...]}
std::string calibration_to_json(const CalibrationMatrix& cal);
/// Error: CorruptProfile on schema violations.
CalibrationMatrix calibration_from_json(std::string_view text);

}  // namespace qforge
