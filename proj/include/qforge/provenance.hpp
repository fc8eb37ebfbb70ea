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
 * @file provenance.hpp
 * @brief Device profiles, the on-disk device registry with calibration
 * history, circuit summaries and the depth x width feasibility rule.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qforge/circuit.hpp"
#include "qforge/mapper.hpp"
#include "qforge/readout.hpp"
#include "qforge/rewriter.hpp"
#include "qforge/simulator.hpp"
#include "qforge/timestamp.hpp"

namespace qforge {

struct DeviceProfile {
  std::string name;
  std::size_t num_qubits = 0;
  CouplingGraph coupling;                  // edge rates; node rates are oneq_success
  std::vector<ReadoutConfusion> readout;   // one per qubit
  std::vector<double> oneq_success;        // one per qubit
  NativeBasis basis;
  Timestamp timestamp;
  double epsilon = 0.0;                    // aggregate error rate in (0,1)

  /// Throws Error(CorruptProfile) on invariant violations (disconnected
  /// graph, rates outside (0,1], per-qubit vectors of the wrong length).
  void validate() const;
  /// Readout channel for the simulator, gate_flip left at 0.
  NoiseModel noise_model(std::uint64_t seed = 0) const;
};

/// {"name","num_qubits","edges":[[i,j,s],...],"node_success":[...],
///  "readout":[[[p00,p01],[p10,p11]],...],"basis":[...],"epsilon":e,
///  "timestamp":iso8601}. readout[q][m][t] = P(measure m | true t).
std::string device_to_json(const DeviceProfile& d);
/// Error: CorruptProfile.
DeviceProfile device_from_json(std::string_view text);
bool same_profile(const DeviceProfile& a, const DeviceProfile& b);

enum class Topology { Line, Ring, Star, Grid, Complete };
Topology topology_from_name(std::string_view name);
std::string_view topology_name(Topology t);

/// Seeded synthetic device. Edge rates are drawn from [0.85, 0.99], node
/// rates from [0.97, 0.999] and symmetric readout flips from [0.01, 0.08].
/// epsilon = 1 - geometric mean of the edge rates (node rates when there
/// are no edges). Grid places qubit i at row i / cols, column i % cols with
/// cols = ceil(sqrt(n)). Error: InvalidArgument (n = 0, ring with n < 3).
DeviceProfile synth_device(std::size_t num_qubits, Topology topology, std::uint64_t seed);

/// JSON files under a root directory: devices/<name>.json and
/// calibrations/<name>.json. Writes go to a temporary file that is then
/// renamed over the target.
class DeviceRegistry {
 public:
  explicit DeviceRegistry(std::filesystem::path root);

  const std::filesystem::path& root() const noexcept { return root_; }

  void store_device(const DeviceProfile& d);
  /// Errors: NotFound, CorruptProfile.
  DeviceProfile load_device(const std::string& name) const;
  std::vector<std::string> list_devices() const;

  /// Error: OutOfOrder unless cal.timestamp is newer than every stored one.
  void append_calibration(const std::string& device, const CalibrationMatrix& cal);
  std::vector<CalibrationMatrix> calibrations(const std::string& device) const;
  /// Newest record with timestamp <= before. Error: NotFound.
  CalibrationMatrix latest_calibration(const std::string& device, Timestamp before) const;

 private:
  std::filesystem::path root_;
};

struct CircuitSummary {
  std::size_t num_qubits = 0;
  std::size_t num_cbits = 0;
  std::size_t depth = 0;
  std::size_t width = 0;
  std::size_t gate_count = 0;
  std::map<std::string, std::size_t> histogram;  // by gate name
  std::set<std::string> macros;
};

CircuitSummary analyze(const Circuit& c);
std::string summary_to_json(const CircuitSummary& s);

enum class Verdict { Feasible, Marginal, Infeasible };
std::string_view verdict_name(Verdict v);

struct Feasibility {
  Verdict verdict = Verdict::Feasible;
  double ratio = 0.0;  // d * w * epsilon
};

/// Infeasible when r >= 1, Marginal when margin <= r < 1, else Feasible.
/// Error: InvalidArgument unless d, w, epsilon > 0 and margin in (0,1).
Feasibility feasibility(double depth, double width, double epsilon, double margin = 0.1);

/// Smallest integer depth judged Infeasible for the width and epsilon.
std::size_t boundary_depth(double width, double epsilon);

}  // namespace qforge
