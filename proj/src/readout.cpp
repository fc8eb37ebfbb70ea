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

#include "qforge/readout.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "qforge/error.hpp"

namespace qforge {

namespace {

constexpr double kConditionLimit = 1e8;

Eigen::Index dimension_of(std::size_t n) { return Eigen::Index{1} << n; }

}  // namespace

std::vector<Circuit> calibration_circuits(std::size_t n) {
  if (n < 1 || n > 12) {
    throw Error(ErrorCode::SizeOutOfRange,
                "calibration needs 1..12 qubits, got " + std::to_string(n));
  }
  std::vector<Circuit> out;
  const std::size_t states = std::size_t{1} << n;
  out.reserve(states);
  for (std::size_t s = 0; s < states; ++s) {
    Circuit c(n, n);
    for (Qubit q = 0; q < n; ++q) {
      if ((s >> (n - 1 - q)) & 1U) c.x(q);
    }
    for (Qubit q = 0; q < n; ++q) c.measure(q, q);
    out.push_back(std::move(c));
  }
  return out;
}

void CalibrationMatrix::validate() const {
  const Eigen::Index dim = dimension_of(n);
  if (C.rows() != dim || C.cols() != dim) {
    throw Error(ErrorCode::InvalidArgument, "calibration matrix must be 2^n x 2^n");
  }
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (!(C(i, j) >= 0.0 && C(i, j) <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "calibration entries must lie in [0,1]");
      }
    }
    if (std::abs(C.col(j).sum() - 1.0) > 1e-9) {
      throw Error(ErrorCode::InvalidArgument,
                  "calibration column " + std::to_string(j) + " does not sum to 1");
    }
  }
}

std::vector<double> counts_to_vector(const Counts& counts, std::size_t n) {
  std::vector<double> out(std::size_t{1} << n, 0.0);
  for (const auto& [bits, count] : counts.histogram) {
    if (bits.size() != n) {
      throw Error(ErrorCode::LengthMismatch,
                  "outcome '" + bits + "' is not " + std::to_string(n) + " bits long");
    }
    out[bitstring_to_index(bits)] += static_cast<double>(count);
  }
  return out;
}

CalibrationMatrix build_calibration_matrix(std::size_t n,
                                           std::span<const std::pair<std::size_t, Counts>> runs,
                                           Timestamp timestamp) {
  if (n < 1 || n > 12) throw Error(ErrorCode::SizeOutOfRange, "calibration needs 1..12 qubits");
  const Eigen::Index dim = dimension_of(n);
  CalibrationMatrix cal{n, Eigen::MatrixXd::Zero(dim, dim), timestamp};
  std::vector<bool> seen(static_cast<std::size_t>(dim), false);
  for (const auto& [s, counts] : runs) {
    if (s >= static_cast<std::size_t>(dim)) {
      throw Error(ErrorCode::InvalidArgument, "basis state " + std::to_string(s) + " out of range");
    }
    const std::vector<double> column = counts_to_vector(counts, n);
    double total = 0;
    for (double v : column) total += v;
    if (total <= 0) continue;
    for (Eigen::Index i = 0; i < dim; ++i) {
      cal.C(i, static_cast<Eigen::Index>(s)) = column[static_cast<std::size_t>(i)] / total;
    }
    seen[s] = true;
  }
  for (std::size_t s = 0; s < seen.size(); ++s) {
    if (!seen[s]) {
      throw Error(ErrorCode::MissingState,
                  "no calibration shots for state " + index_to_bitstring(s, n));
    }
  }
  return cal;
}

CalibrationMatrix calibrate(std::size_t n, std::size_t shots, const NoiseModel& noise,
                            Timestamp timestamp) {
  const std::vector<Circuit> circuits = calibration_circuits(n);
  std::vector<std::pair<std::size_t, Counts>> runs;
  runs.reserve(circuits.size());
  for (std::size_t s = 0; s < circuits.size(); ++s) {
    NoiseModel model = noise;
    model.seed = noise.seed + s;
    runs.emplace_back(s, run(circuits[s], shots, model));
  }
  return build_calibration_matrix(n, runs, timestamp);
}

std::vector<double> unfold(std::span<const double> m, const CalibrationMatrix& cal,
                           UnfoldMode mode) {
  const Eigen::Index dim = cal.C.rows();
  if (cal.C.cols() != dim || static_cast<Eigen::Index>(m.size()) != dim) {
    throw Error(ErrorCode::ShapeMismatch, "distribution length " + std::to_string(m.size()) +
                                              " does not match the calibration matrix");
  }
  Eigen::VectorXd rhs(dim);
  for (Eigen::Index i = 0; i < dim; ++i) rhs(i) = m[static_cast<std::size_t>(i)];

  Eigen::BDCSVD<Eigen::MatrixXd> svd(cal.C, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  if (dim == 0 || svd.rank() < dim) {
    throw Error(ErrorCode::SingularMatrix, "calibration matrix is rank deficient");
  }
  const double condition = sigma(0) / sigma(dim - 1);
  Eigen::VectorXd t = condition <= kConditionLimit ? Eigen::VectorXd(cal.C.partialPivLu().solve(rhs))
                                                   : Eigen::VectorXd(svd.solve(rhs));

  std::vector<double> out(t.data(), t.data() + dim);
  if (mode == UnfoldMode::ClipRenormalize) {
    double kept = 0;
    for (double& v : out) {
      v = std::max(v, 0.0);
      kept += v;
    }
    const double target = rhs.sum();
    if (kept > 0) {
      for (double& v : out) v *= target / kept;
    }
  }
  return out;
}

double assignment_fidelity(double p01, double p10) {
  if (!(p01 >= 0 && p01 <= 1 && p10 >= 0 && p10 <= 1)) {
    throw Error(ErrorCode::InvalidArgument, "error probabilities must lie in [0,1]");
  }
  return 1.0 - (p01 + p10) / 2.0;
}

double total_variation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::ShapeMismatch, "distribution lengths differ");
  double sa = 0, sb = 0;
  for (double v : a) sa += v;
  for (double v : b) sb += v;
  if (sa == 0 || sb == 0) throw Error(ErrorCode::ZeroVector, "empty distribution");
  double l1 = 0;
  for (std::size_t i = 0; i < a.size(); ++i) l1 += std::abs(a[i] / sa - b[i] / sb);
  return l1 / 2.0;
}

const CalibrationMatrix& select_calibration(std::span<const CalibrationMatrix> history,
                                            Timestamp at) {
  const CalibrationMatrix* best = nullptr;
  for (const auto& cal : history) {
    if (cal.timestamp <= at && (best == nullptr || cal.timestamp > best->timestamp)) best = &cal;
  }
  if (best == nullptr) {
    throw Error(ErrorCode::NotFound, "no calibration at or before " + at.to_string());
  }
  return *best;
}

std::string calibration_to_json(const CalibrationMatrix& cal) {
  nlohmann::json columns = nlohmann::json::array();
  for (Eigen::Index j = 0; j < cal.C.cols(); ++j) {
    std::vector<double> col(static_cast<std::size_t>(cal.C.rows()));
    for (Eigen::Index i = 0; i < cal.C.rows(); ++i) col[static_cast<std::size_t>(i)] = cal.C(i, j);
    columns.push_back(col);
  }
  nlohmann::json j{{"n", cal.n}, {"timestamp", cal.timestamp.to_string()}, {"columns", columns}};
  return j.dump(2);
}

CalibrationMatrix calibration_from_json(std::string_view text) {
  CalibrationMatrix cal;
  try {
    const auto j = nlohmann::json::parse(text);
    cal.n = j.at("n").get<std::size_t>();
    if (cal.n < 1 || cal.n > 12) throw Error(ErrorCode::CorruptProfile, "calibration n out of range");
    cal.timestamp = Timestamp::parse(j.at("timestamp").get<std::string>());
    const auto& columns = j.at("columns");
    const Eigen::Index dim = dimension_of(cal.n);
    if (!columns.is_array() || static_cast<Eigen::Index>(columns.size()) != dim) {
      throw Error(ErrorCode::CorruptProfile, "calibration needs 2^n columns");
    }
    cal.C.resize(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
      const auto col = columns[static_cast<std::size_t>(c)].get<std::vector<double>>();
      if (static_cast<Eigen::Index>(col.size()) != dim) {
        throw Error(ErrorCode::CorruptProfile, "calibration column has the wrong length");
      }
      for (Eigen::Index r = 0; r < dim; ++r) cal.C(r, c) = col[static_cast<std::size_t>(r)];
    }
    cal.validate();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::CorruptProfile) throw;
    throw Error(ErrorCode::CorruptProfile, std::string("invalid calibration: ") + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::CorruptProfile, std::string("malformed calibration JSON: ") + e.what());
  }
  return cal;
}

}  // namespace qforge
