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

#include "qforge/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <json.hpp>

#include "qforge/error.hpp"

namespace qforge {

namespace {

using std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

Matrix2 mat(Complex a, Complex b, Complex c, Complex d) {
  Matrix2 m;
  m << a, b, c, d;
  return m;
}

Matrix2 u3_matrix(double theta, double phi, double lambda) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  return mat(c, -std::exp(kI * lambda) * s, std::exp(kI * phi) * s,
             std::exp(kI * (lambda + phi)) * c);
}

Complex crk_phase(const Gate& g) {
  const double lambda = g.type == GateType::CRK
                            ? 2.0 * pi / std::ldexp(1.0, static_cast<int>(g.crk_order()))
                            : g.params[0];
  return std::exp(kI * lambda);
}

}  // namespace

Matrix2 gate_matrix(const Gate& gate) {
  const auto& p = gate.params;
  const double r = 1.0 / std::sqrt(2.0);
  switch (gate.type) {
    case GateType::X: return mat(0, 1, 1, 0);
    case GateType::Y: return mat(0, -kI, kI, 0);
    case GateType::Z: return mat(1, 0, 0, -1);
    case GateType::H: return mat(r, r, r, -r);
    case GateType::S: return mat(1, 0, 0, kI);
    case GateType::T: return mat(1, 0, 0, std::exp(kI * (pi / 4)));
    case GateType::RX: {
      const double c = std::cos(p[0] / 2), s = std::sin(p[0] / 2);
      return mat(c, -kI * s, -kI * s, c);
    }
    case GateType::RY: {
      const double c = std::cos(p[0] / 2), s = std::sin(p[0] / 2);
      return mat(c, -s, s, c);
    }
    case GateType::RZ: return mat(std::exp(-kI * (p[0] / 2)), 0, 0, std::exp(kI * (p[0] / 2)));
    case GateType::U1: return mat(1, 0, 0, std::exp(kI * p[0]));
    case GateType::U2: return u3_matrix(pi / 2, p[0], p[1]);
    case GateType::U3: return u3_matrix(p[0], p[1], p[2]);
    default:
      throw Error(ErrorCode::InvalidArgument,
                  std::string(gate_name(gate.type)) + " has no single-qubit matrix");
  }
}

StateVector::StateVector(std::size_t num_qubits) : n_(num_qubits) {
  if (num_qubits > kMaxStatevectorQubits) {
    throw Error(ErrorCode::TooManyQubits, std::to_string(num_qubits) + " qubits exceed the " +
                                              std::to_string(kMaxStatevectorQubits) +
                                              "-qubit statevector limit");
  }
  amps_.assign(std::size_t{1} << n_, Complex{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector StateVector::basis(std::size_t num_qubits, std::size_t index) {
  StateVector sv(num_qubits);
  if (index >= sv.amps_.size()) throw Error(ErrorCode::InvalidArgument, "basis index out of range");
  sv.amps_[0] = 0.0;
  sv.amps_[index] = 1.0;
  return sv;
}

StateVector StateVector::from_amplitudes(std::vector<Complex> amplitudes) {
  const std::size_t size = amplitudes.size();
  if (size == 0 || (size & (size - 1)) != 0) {
    throw Error(ErrorCode::InvalidArgument, "amplitude count must be a power of two");
  }
  std::size_t n = 0;
  while ((std::size_t{1} << n) < size) ++n;
  StateVector sv(n);
  sv.amps_ = std::move(amplitudes);
  return sv;
}

double StateVector::norm() const {
  double total = 0;
  for (const auto& a : amps_) total += std::norm(a);
  return std::sqrt(total);
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> out(amps_.size());
  std::transform(amps_.begin(), amps_.end(), out.begin(), [](Complex a) { return std::norm(a); });
  return out;
}

void StateVector::apply_1q(const Matrix2& m, Qubit target) {
  const std::size_t bit = mask(target);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) continue;
    const Complex a0 = amps_[i];
    const Complex a1 = amps_[i | bit];
    amps_[i] = m(0, 0) * a0 + m(0, 1) * a1;
    amps_[i | bit] = m(1, 0) * a0 + m(1, 1) * a1;
  }
}

void StateVector::apply_controlled_1q(std::span<const Qubit> controls, const Matrix2& m,
                                      Qubit target) {
  std::size_t cmask = 0;
  for (Qubit c : controls) cmask |= mask(c);
  const std::size_t bit = mask(target);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & bit) || (i & cmask) != cmask) continue;
    const Complex a0 = amps_[i];
    const Complex a1 = amps_[i | bit];
    amps_[i] = m(0, 0) * a0 + m(0, 1) * a1;
    amps_[i | bit] = m(1, 0) * a0 + m(1, 1) * a1;
  }
}

void StateVector::apply_swap(Qubit a, Qubit b) {
  const std::size_t ma = mask(a), mb = mask(b);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & ma) && !(i & mb)) std::swap(amps_[i], amps_[(i & ~ma) | mb]);
  }
}

void StateVector::apply_x(Qubit q) {
  const std::size_t bit = mask(q);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (!(i & bit)) std::swap(amps_[i], amps_[i | bit]);
  }
}

void StateVector::apply(const Gate& gate) {
  for (Qubit q : gate.qubits) {
    if (q >= n_) throw Error(ErrorCode::InvalidArgument, "gate operand outside the register");
  }
  const auto& q = gate.qubits;
  switch (gate.type) {
    case GateType::X: apply_x(q[0]); return;
    case GateType::CNOT: apply_controlled_1q(std::span(q).first(1), mat(0, 1, 1, 0), q[1]); return;
    case GateType::TOFFOLI:
      apply_controlled_1q(std::span(q).first(2), mat(0, 1, 1, 0), q[2]);
      return;
    case GateType::SWAP: apply_swap(q[0], q[1]); return;
    case GateType::CRK:
    case GateType::CPHASE:
      apply_controlled_1q(std::span(q).first(1), mat(1, 0, 0, crk_phase(gate)), q[1]);
      return;
    case GateType::MEASURE:
      throw Error(ErrorCode::MeasurementPresent, "MEASURE is not a unitary operation");
    case GateType::BARRIER:
      return;
    case GateType::MACRO:
      throw Error(ErrorCode::InvalidArgument,
                  "macro '" + gate.macro_name + "' must be expanded before simulation");
    default:
      apply_1q(gate_matrix(gate), q[0]);
  }
}

double StateVector::probability_one(Qubit q) const {
  const std::size_t bit = mask(q);
  double p = 0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & bit) p += std::norm(amps_[i]);
  }
  return p;
}

void StateVector::collapse(Qubit q, bool outcome) {
  const std::size_t bit = mask(q);
  double kept = 0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (static_cast<bool>(i & bit) != outcome) {
      amps_[i] = 0;
    } else {
      kept += std::norm(amps_[i]);
    }
  }
  if (kept <= 0) throw Error(ErrorCode::InvalidArgument, "collapse onto a zero-probability outcome");
  const double scale = 1.0 / std::sqrt(kept);
  for (auto& a : amps_) a *= scale;
}

StateVector statevector(const Circuit& c) { return statevector(c, StateVector(c.num_qubits())); }

StateVector statevector(const Circuit& c, StateVector initial) {
  if (c.num_qubits() > kMaxStatevectorQubits) {
    throw Error(ErrorCode::TooManyQubits, "circuit too wide for statevector simulation");
  }
  if (initial.num_qubits() != c.num_qubits()) {
    throw Error(ErrorCode::InvalidArgument, "initial state does not match circuit width");
  }
  if (has_measurement(c)) {
    throw Error(ErrorCode::MeasurementPresent, "statevector() requires a measurement-free circuit");
  }
  for (const auto& g : c) initial.apply(g);
  return initial;
}

Matrix unitary_of(const Circuit& c) {
  const std::size_t n = c.num_qubits();
  if (n > kMaxUnitaryQubits) {
    throw Error(ErrorCode::TooManyQubits, "unitary_of supports at most " +
                                              std::to_string(kMaxUnitaryQubits) + " qubits");
  }
  if (has_measurement(c)) {
    throw Error(ErrorCode::MeasurementPresent, "unitary_of() requires a measurement-free circuit");
  }
  const Circuit body = without_barriers(c);
  const std::size_t dim = std::size_t{1} << n;
  Matrix u(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    const StateVector col = statevector(body, StateVector::basis(n, j));
    for (std::size_t i = 0; i < dim; ++i) u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
  }
  return u;
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.dimension() != b.dimension()) throw Error(ErrorCode::ShapeMismatch, "state sizes differ");
  Complex overlap = 0;
  for (std::size_t i = 0; i < a.dimension(); ++i) overlap += std::conj(a[i]) * b[i];
  return std::norm(overlap);
}

double distance_up_to_global_phase(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "matrix shapes differ");
  }
  Eigen::Index r = 0, col = 0;
  b.cwiseAbs().maxCoeff(&r, &col);
  Complex phase = 1.0;
  if (std::abs(b(r, col)) > 0) {
    const Complex ratio = a(r, col) / b(r, col);
    if (std::abs(ratio) > 0) phase = ratio / std::abs(ratio);
  }
  return (a - phase * b).cwiseAbs().maxCoeff();
}

Matrix permutation_unitary(const std::vector<Qubit>& to_physical) {
  const std::size_t n = to_physical.size();
  if (n > kMaxUnitaryQubits) throw Error(ErrorCode::TooManyQubits, "permutation too wide");
  std::vector<bool> hit(n, false);
  for (Qubit p : to_physical) {
    if (p >= n || hit[p]) throw Error(ErrorCode::InvalidArgument, "not a permutation");
    hit[p] = true;
  }
  const std::size_t dim = std::size_t{1} << n;
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t j = 0; j < dim; ++j) {
    std::size_t i = 0;
    for (std::size_t l = 0; l < n; ++l) {
      if (j & (std::size_t{1} << (n - 1 - l))) i |= std::size_t{1} << (n - 1 - to_physical[l]);
    }
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
  }
  return m;
}

ReadoutConfusion ReadoutConfusion::symmetric(double flip) { return asymmetric(flip, flip); }

ReadoutConfusion ReadoutConfusion::asymmetric(double p_meas1_given0, double p_meas0_given1) {
  ReadoutConfusion r;
  r.p[0][0] = 1.0 - p_meas1_given0;
  r.p[1][0] = p_meas1_given0;
  r.p[0][1] = p_meas0_given1;
  r.p[1][1] = 1.0 - p_meas0_given1;
  r.validate();
  return r;
}

void ReadoutConfusion::validate() const {
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < 2; ++i) {
      if (!(p[i][j] >= 0.0 && p[i][j] <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "readout probabilities must lie in [0,1]");
      }
    }
    if (std::abs(p[0][j] + p[1][j] - 1.0) > 1e-9) {
      throw Error(ErrorCode::InvalidArgument, "readout confusion columns must sum to 1");
    }
  }
}

void NoiseModel::validate() const {
  for (const auto& r : readout) r.validate();
  if (!(gate_flip >= 0.0 && gate_flip <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "gate flip probability must lie in [0,1]");
  }
}

std::size_t Counts::count(const std::string& bits) const {
  auto it = histogram.find(bits);
  return it == histogram.end() ? 0 : it->second;
}

double Counts::frequency(const std::string& bits) const {
  return shots == 0 ? 0.0 : static_cast<double>(count(bits)) / static_cast<double>(shots);
}

std::size_t Counts::total() const {
  std::size_t t = 0;
  for (const auto& [_, n] : histogram) t += n;
  return t;
}

namespace {

struct Measurement {
  Qubit local;     // compacted qubit index
  Qubit original;  // circuit qubit index (selects readout confusion)
  Cbit cbit;
};

bool read_bit(bool truth, Qubit original, const NoiseModel& noise, std::mt19937_64& rng,
              std::uniform_real_distribution<double>& unit) {
  if (original >= noise.readout.size()) return truth;
  const auto& conf = noise.readout[original];
  const double p_one = conf.p[1][truth ? 1 : 0];
  return unit(rng) < p_one;
}

}  // namespace

Counts run(const Circuit& c, std::size_t shots, const NoiseModel& noise) {
  if (shots == 0) throw Error(ErrorCode::InvalidArgument, "shots must be positive");
  if (!has_measurement(c)) throw Error(ErrorCode::NoMeasurement, "circuit has no MEASURE");
  if (has_macros(c)) throw Error(ErrorCode::InvalidArgument, "expand macros before running");
  noise.validate();

  // Simulate only the touched qubits.
  const std::vector<Qubit> used = used_qubits(c);
  if (used.size() > kMaxStatevectorQubits) {
    throw Error(ErrorCode::TooManyQubits, "circuit touches too many qubits to simulate");
  }
  std::vector<Qubit> local(c.num_qubits(), 0);
  for (std::size_t i = 0; i < used.size(); ++i) local[used[i]] = i;
  std::vector<Gate> body;
  body.reserve(c.size());
  for (Gate g : c) {
    for (auto& q : g.qubits) q = local[q];
    body.push_back(std::move(g));
  }

  // Terminal measurements: nothing touches a qubit after it is measured.
  bool terminal = true;
  {
    std::vector<bool> measured(used.size(), false);
    for (const auto& g : body) {
      for (Qubit q : g.qubits) {
        if (measured[q] && g.type != GateType::BARRIER) terminal = false;
      }
      if (g.type == GateType::MEASURE) measured[g.qubits[0]] = true;
    }
  }

  std::mt19937_64 rng(noise.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Counts counts;
  counts.shots = shots;
  std::string bits(c.num_cbits(), '0');

  if (terminal && noise.gate_flip == 0.0) {
    StateVector sv(used.size());
    std::vector<Measurement> meas;
    for (const auto& g : body) {
      if (g.type == GateType::MEASURE) {
        meas.push_back({g.qubits[0], used[g.qubits[0]], g.cbits[0]});
      } else {
        sv.apply(g);
      }
    }
    // inverse-CDF sampling
    std::vector<double> cdf = sv.probabilities();
    for (std::size_t i = 1; i < cdf.size(); ++i) cdf[i] += cdf[i - 1];
    const double total = cdf.back();
    const std::size_t n = used.size();
    for (std::size_t shot = 0; shot < shots; ++shot) {
      const double u = unit(rng) * total;
      auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      const std::size_t index =
          std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
      std::fill(bits.begin(), bits.end(), '0');
      for (const auto& m : meas) {
        const bool truth = (index >> (n - 1 - m.local)) & 1U;
        bits[m.cbit] = read_bit(truth, m.original, noise, rng, unit) ? '1' : '0';
      }
      ++counts.histogram[bits];
    }
    return counts;
  }

  for (std::size_t shot = 0; shot < shots; ++shot) {
    StateVector sv(used.size());
    std::fill(bits.begin(), bits.end(), '0');
    for (const auto& g : body) {
      if (g.type == GateType::BARRIER) continue;
      if (g.type == GateType::MEASURE) {
        const Qubit q = g.qubits[0];
        const bool outcome = unit(rng) < sv.probability_one(q);
        sv.collapse(q, outcome);
        bits[g.cbits[0]] = read_bit(outcome, used[q], noise, rng, unit) ? '1' : '0';
        continue;
      }
      sv.apply(g);
      if (noise.gate_flip > 0.0) {
        for (Qubit q : g.qubits) {
          if (unit(rng) < noise.gate_flip) sv.apply_x(q);
        }
      }
    }
    ++counts.histogram[bits];
  }
  return counts;
}

std::string counts_to_json(const Counts& counts) {
  nlohmann::ordered_json j;
  j["shots"] = counts.shots;
  j["counts"] = nlohmann::ordered_json::object();
  for (const auto& [bits, n] : counts.histogram) j["counts"][bits] = n;
  return j.dump();
}

Counts counts_from_json(std::string_view text) {
  Counts out;
  try {
    const auto j = nlohmann::json::parse(text);
    // A bare {"bits": n} object is accepted too; shots is then the total.
    const bool wrapped = j.is_object() && j.contains("counts");
    const auto& hist = wrapped ? j.at("counts") : j;
    if (!hist.is_object()) throw Error(ErrorCode::CorruptProfile, "counts must be a JSON object");
    std::size_t len = std::string::npos;
    for (const auto& [bits, n] : hist.items()) {
      if (bits.find_first_not_of("01") != std::string::npos) {
        throw Error(ErrorCode::CorruptProfile, "counts key '" + bits + "' is not a bitstring");
      }
      if (len != std::string::npos && bits.size() != len) {
        throw Error(ErrorCode::CorruptProfile, "counts keys differ in length");
      }
      len = bits.size();
      out.histogram[bits] = n.get<std::size_t>();
    }
    out.shots = wrapped ? j.at("shots").get<std::size_t>() : out.total();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::CorruptProfile, std::string("malformed counts JSON: ") + e.what());
  }
  if (out.total() != out.shots) {
    throw Error(ErrorCode::CorruptProfile, "counts do not sum to shots");
  }
  return out;
}

std::size_t bitstring_to_index(std::string_view bits) {
  if (bits.size() >= 64) throw Error(ErrorCode::InvalidArgument, "bitstring too long");
  std::size_t index = 0;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw Error(ErrorCode::InvalidArgument, "not a bitstring");
    index = (index << 1) | static_cast<std::size_t>(ch == '1');
  }
  return index;
}

std::string index_to_bitstring(std::size_t index, std::size_t num_bits) {
  std::string out(num_bits, '0');
  for (std::size_t i = 0; i < num_bits; ++i) {
    if (index & (std::size_t{1} << (num_bits - 1 - i))) out[i] = '1';
  }
  return out;
}

}  // namespace qforge
