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

#include "qforge/provenance.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>

#include <json.hpp>

#include "qforge/error.hpp"
#include "qforge/schedule.hpp"

namespace qforge {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------- profiles

void DeviceProfile::validate() const {
  auto fail = [this](const std::string& why) {
    throw Error(ErrorCode::CorruptProfile, "device '" + name + "': " + why);
  };
  if (num_qubits == 0) fail("no qubits");
  if (coupling.num_qubits() != num_qubits) fail("coupling graph size differs from num_qubits");
  if (readout.size() != num_qubits) fail("need one readout entry per qubit");
  if (oneq_success.size() != num_qubits) fail("need one node success rate per qubit");
  if (!coupling.connected()) fail("coupling graph is disconnected");
  for (double r : oneq_success) {
    if (!(r > 0 && r <= 1)) fail("node success rates must lie in (0,1]");
  }
  for (const auto& [a, b, s] : coupling.edges()) {
    if (!(s > 0 && s <= 1)) fail("edge success rates must lie in (0,1]");
  }
  for (const auto& r : readout) {
    try {
      r.validate();
    } catch (const Error& e) {
      fail(e.what());
    }
  }
  if (!(epsilon > 0 && epsilon < 1)) fail("epsilon must lie in (0,1)");
}

NoiseModel DeviceProfile::noise_model(std::uint64_t seed) const {
  NoiseModel m;
  m.readout = readout;
  m.seed = seed;
  return m;
}

std::string device_to_json(const DeviceProfile& d) {
  json edges = json::array();
  for (const auto& [a, b, s] : d.coupling.edges()) edges.push_back(json::array({a, b, s}));
  json readout = json::array();
  for (const auto& r : d.readout) {
    readout.push_back(json::array({json::array({r.p[0][0], r.p[0][1]}), json::array({r.p[1][0], r.p[1][1]})}));
  }
  json basis = json::array();
  for (GateType t : d.basis.kinds()) basis.push_back(std::string(gate_name(t)));
  json j{{"name", d.name},
         {"num_qubits", d.num_qubits},
         {"edges", edges},
         {"node_success", d.oneq_success},
         {"readout", readout},
         {"basis", basis},
         {"epsilon", d.epsilon},
         {"timestamp", d.timestamp.to_string()}};
  return j.dump(2);
}

DeviceProfile device_from_json(std::string_view text) {
  DeviceProfile d;
  try {
    const json j = json::parse(text);
    d.name = j.at("name").get<std::string>();
    d.num_qubits = j.at("num_qubits").get<std::size_t>();
    d.coupling = CouplingGraph(d.num_qubits);
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) throw Error(ErrorCode::CorruptProfile, "edge must be [i, j, s]");
      const auto a = e[0].get<std::size_t>(), b = e[1].get<std::size_t>();
      if (a >= d.num_qubits || b >= d.num_qubits) throw Error(ErrorCode::CorruptProfile, "edge endpoint out of range");
      d.coupling.add_edge(a, b, e[2].get<double>());
    }
    d.oneq_success = j.at("node_success").get<std::vector<double>>();
    for (const auto& r : j.at("readout")) {
      const auto m = r.get<std::vector<std::vector<double>>>();
      if (m.size() != 2 || m[0].size() != 2 || m[1].size() != 2) {
        throw Error(ErrorCode::CorruptProfile, "readout entry must be 2x2");
      }
      ReadoutConfusion rc;
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) rc.p[a][b] = m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      }
      d.readout.push_back(rc);
    }
    std::set<GateType> kinds;
    for (const auto& name : j.at("basis")) {
      std::string upper = name.get<std::string>();
      std::transform(upper.begin(), upper.end(), upper.begin(),
                     [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
      if (upper == "CX") upper = "CNOT";
      const auto t = gate_type_from_name(upper);
      if (!t) throw Error(ErrorCode::CorruptProfile, "unknown basis gate '" + upper + "'");
      kinds.insert(*t);
    }
    d.basis = NativeBasis(std::move(kinds));
    d.epsilon = j.at("epsilon").get<double>();
    d.timestamp = Timestamp::parse(j.at("timestamp").get<std::string>());
    if (d.oneq_success.size() == d.num_qubits) d.coupling.set_node_success(d.oneq_success);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::CorruptProfile, std::string("malformed device JSON: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::CorruptProfile) throw;
    throw Error(ErrorCode::CorruptProfile, std::string("invalid device profile: ") + e.what());
  }
  d.validate();
  return d;
}

bool same_profile(const DeviceProfile& a, const DeviceProfile& b) {
  if (a.name != b.name || a.num_qubits != b.num_qubits || a.oneq_success != b.oneq_success ||
      a.basis.kinds() != b.basis.kinds() || a.timestamp != b.timestamp || a.epsilon != b.epsilon ||
      a.coupling.edges() != b.coupling.edges() || a.readout.size() != b.readout.size()) {
    return false;
  }
  for (std::size_t q = 0; q < a.readout.size(); ++q) {
    for (int m = 0; m < 2; ++m) {
      for (int t = 0; t < 2; ++t) {
        if (a.readout[q].p[m][t] != b.readout[q].p[m][t]) return false;
      }
    }
  }
  return true;
}

// ------------------------------------------------------------- synthesis

namespace {

struct TopologyName {
  Topology topology;
  std::string_view name;
};

constexpr TopologyName kTopologies[] = {{Topology::Line, "line"},
                                        {Topology::Ring, "ring"},
                                        {Topology::Star, "star"},
                                        {Topology::Grid, "grid"},
                                        {Topology::Complete, "complete"}};

}  // namespace

Topology topology_from_name(std::string_view name) {
  for (const auto& t : kTopologies) {
    if (t.name == name) return t.topology;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown topology '" + std::string(name) + "'");
}

std::string_view topology_name(Topology t) {
  for (const auto& k : kTopologies) {
    if (k.topology == t) return k.name;
  }
  return "?";
}

DeviceProfile synth_device(std::size_t n, Topology topology, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "a device needs at least one qubit");
  if (topology == Topology::Ring && n < 3) {
    throw Error(ErrorCode::InvalidArgument, "a ring needs at least three qubits");
  }
  std::vector<std::pair<Qubit, Qubit>> pairs;
  switch (topology) {
    case Topology::Line:
      for (Qubit i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
      break;
    case Topology::Ring:
      for (Qubit i = 0; i < n; ++i) pairs.emplace_back(i, (i + 1) % n);
      break;
    case Topology::Star:
      for (Qubit i = 1; i < n; ++i) pairs.emplace_back(0, i);
      break;
    case Topology::Grid: {
      const auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
      for (Qubit i = 0; i < n; ++i) {
        if ((i % cols) + 1 < cols && i + 1 < n) pairs.emplace_back(i, i + 1);
        if (i + cols < n) pairs.emplace_back(i, i + cols);
      }
      break;
    }
    case Topology::Complete:
      for (Qubit i = 0; i < n; ++i) {
        for (Qubit j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
      }
      break;
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> edge_rate(0.85, 0.99), node_rate(0.97, 0.999),
      flip(0.01, 0.08);

  DeviceProfile d;
  d.name = "synth-" + std::string(topology_name(topology)) + "-" + std::to_string(n) + "-" +
           std::to_string(seed);
  d.num_qubits = n;
  d.coupling = CouplingGraph(n);
  double log_sum = 0;
  for (const auto& [a, b] : pairs) {
    const double s = edge_rate(rng);
    d.coupling.add_edge(a, b, s);
    log_sum += std::log(s);
  }
  for (std::size_t q = 0; q < n; ++q) d.oneq_success.push_back(node_rate(rng));
  for (std::size_t q = 0; q < n; ++q) d.readout.push_back(ReadoutConfusion::symmetric(flip(rng)));
  d.coupling.set_node_success(d.oneq_success);
  if (pairs.empty()) {
    for (double r : d.oneq_success) log_sum += std::log(r);
    d.epsilon = 1.0 - std::exp(log_sum / static_cast<double>(n));
  } else {
    d.epsilon = 1.0 - std::exp(log_sum / static_cast<double>(pairs.size()));
  }
  d.timestamp = Timestamp::parse("2020-01-01T00:00:00Z");
  return d;
}

// -------------------------------------------------------------- registry

namespace {

std::mutex& write_mutex() {
  static std::mutex m;
  return m;
}

void check_name(const std::string& name) {
  const bool ok = !name.empty() && name != "." && name != ".." &&
                  std::all_of(name.begin(), name.end(), [](unsigned char ch) {
                    return std::isalnum(ch) || ch == '_' || ch == '-' || ch == '.';
                  });
  if (!ok) throw Error(ErrorCode::InvalidArgument, "invalid device name '" + name + "'");
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::NotFound, path.string() + " not found");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomic(const fs::path& path, const std::string& content) {
  static std::atomic<unsigned> counter{0};
  fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp" + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(ErrorCode::Io, "cannot replace " + path.string() + ": " + ec.message());
  }
}

}  // namespace

DeviceRegistry::DeviceRegistry(fs::path root) : root_(std::move(root)) {}

void DeviceRegistry::store_device(const DeviceProfile& d) {
  check_name(d.name);
  d.validate();
  std::lock_guard lock(write_mutex());
  write_atomic(root_ / "devices" / (d.name + ".json"), device_to_json(d));
}

DeviceProfile DeviceRegistry::load_device(const std::string& name) const {
  check_name(name);
  const fs::path path = root_ / "devices" / (name + ".json");
  if (!fs::exists(path)) throw Error(ErrorCode::NotFound, "no device named '" + name + "'");
  return device_from_json(read_file(path));
}

std::vector<std::string> DeviceRegistry::list_devices() const {
  std::vector<std::string> out;
  const fs::path dir = root_ / "devices";
  if (!fs::is_directory(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") {
      out.push_back(entry.path().stem().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CalibrationMatrix> DeviceRegistry::calibrations(const std::string& device) const {
  check_name(device);
  const fs::path path = root_ / "calibrations" / (device + ".json");
  std::vector<CalibrationMatrix> out;
  if (!fs::exists(path)) return out;
  try {
    const json j = json::parse(read_file(path));
    if (!j.is_array()) throw Error(ErrorCode::CorruptProfile, "calibration history must be an array");
    for (const auto& item : j) out.push_back(calibration_from_json(item.dump()));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::CorruptProfile, std::string("malformed calibration history: ") + e.what());
  }
  return out;
}

void DeviceRegistry::append_calibration(const std::string& device, const CalibrationMatrix& cal) {
  check_name(device);
  cal.validate();
  std::lock_guard lock(write_mutex());
  std::vector<CalibrationMatrix> history = calibrations(device);
  if (!history.empty() && cal.timestamp <= history.back().timestamp) {
    throw Error(ErrorCode::OutOfOrder, "calibration at " + cal.timestamp.to_string() +
                                           " is not newer than " +
                                           history.back().timestamp.to_string());
  }
  json arr = json::array();
  for (const auto& c : history) arr.push_back(json::parse(calibration_to_json(c)));
  arr.push_back(json::parse(calibration_to_json(cal)));
  write_atomic(root_ / "calibrations" / (device + ".json"), arr.dump(2));
}

CalibrationMatrix DeviceRegistry::latest_calibration(const std::string& device,
                                                     Timestamp before) const {
  const std::vector<CalibrationMatrix> history = calibrations(device);
  return select_calibration(history, before);
}

// -------------------------------------------------------------- analysis

CircuitSummary analyze(const Circuit& c) {
  CircuitSummary s;
  s.num_qubits = c.num_qubits();
  s.num_cbits = c.num_cbits();
  s.depth = depth(c);
  s.width = width(c);
  s.gate_count = c.size();
  for (const Gate& g : c) {
    ++s.histogram[std::string(gate_name(g.type))];
    if (g.type == GateType::MACRO) s.macros.insert(g.macro_name);
  }
  return s;
}

std::string summary_to_json(const CircuitSummary& s) {
  json j{{"num_qubits", s.num_qubits}, {"num_cbits", s.num_cbits}, {"depth", s.depth},
         {"width", s.width},           {"gate_count", s.gate_count}, {"histogram", s.histogram},
         {"macros", s.macros}};
  return j.dump(2);
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Feasible: return "feasible";
    case Verdict::Marginal: return "marginal";
    case Verdict::Infeasible: return "infeasible";
  }
  return "?";
}

Feasibility feasibility(double depth, double width, double epsilon, double margin) {
  if (!(depth > 0 && width > 0 && epsilon > 0)) {
    throw Error(ErrorCode::InvalidArgument, "depth, width and epsilon must be positive");
  }
  if (!(margin > 0 && margin < 1)) throw Error(ErrorCode::InvalidArgument, "margin must lie in (0,1)");
  Feasibility f;
  f.ratio = depth * width * epsilon;
  if (f.ratio >= 1.0) {
    f.verdict = Verdict::Infeasible;
  } else if (f.ratio >= margin) {
    f.verdict = Verdict::Marginal;
  }
  return f;
}

std::size_t boundary_depth(double width, double epsilon) {
  if (!(width > 0 && epsilon > 0)) {
    throw Error(ErrorCode::InvalidArgument, "width and epsilon must be positive");
  }
  auto d = static_cast<std::size_t>(std::max(1.0, std::ceil(1.0 / (width * epsilon))));
  while (d > 1 && feasibility(static_cast<double>(d - 1), width, epsilon).verdict == Verdict::Infeasible) --d;
  while (feasibility(static_cast<double>(d), width, epsilon).verdict != Verdict::Infeasible) ++d;
  return d;
}

}  // namespace qforge
