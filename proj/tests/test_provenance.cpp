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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "qforge/error.hpp"
#include "qforge/macro.hpp"
#include "qforge/oracles.hpp"
#include "qforge/provenance.hpp"
#include "support.hpp"

using namespace qforge;
using namespace qforge::testing;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("qforge-test-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

CalibrationMatrix cal_at(const char* ts, double flip) {
  CalibrationMatrix c{1, Eigen::MatrixXd(2, 2), Timestamp::parse(ts)};
  c.C << 1 - flip, flip, flip, 1 - flip;
  return c;
}

}  // namespace

TEST_CASE("feasibility rule") {
  CHECK(boundary_depth(50, 1e-3) == 20);
  const Feasibility at20 = feasibility(20, 50, 1e-3);
  CHECK(at20.ratio == 1.0);
  CHECK(at20.verdict == Verdict::Infeasible);
  const Feasibility at1 = feasibility(1, 50, 1e-3);
  CHECK(at1.ratio == doctest::Approx(0.05));
  CHECK(at1.verdict == Verdict::Feasible);
  CHECK(feasibility(19, 50, 1e-3).verdict == Verdict::Marginal);
  CHECK(feasibility(1, 1, 1e-12).verdict == Verdict::Feasible);
  CHECK(feasibility(100, 100, 1e-3).ratio == doctest::Approx(10.0));
  CHECK(feasibility(100, 100, 1e-3).verdict == Verdict::Infeasible);
  CHECK_THROWS_AS(feasibility(0, 1, 0.1), Error);
  CHECK_THROWS_AS(feasibility(1, 1, 0.1, 1.5), Error);

  // Monotone: growing any argument never improves the verdict.
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> d(0.1, 100), e(1e-5, 1e-1);
  for (int i = 0; i < 500; ++i) {
    const double depth = d(rng), w = d(rng), eps = e(rng);
    const auto base = feasibility(depth, w, eps).verdict;
    CHECK(feasibility(depth * 1.5, w, eps).verdict >= base);
    CHECK(feasibility(depth, w * 1.5, eps).verdict >= base);
    CHECK(feasibility(depth, w, std::min(eps * 1.5, 0.99)).verdict >= base);
  }
}

TEST_CASE("analyze") {
  const CircuitSummary empty = analyze(Circuit(3));
  CHECK(empty.depth == 0);
  CHECK(empty.width == 0);
  CHECK(empty.histogram.empty());

  Circuit cnot_fanout(5, 5);
  cnot_fanout.x(1).cx(1, 4).measure(4, 4);
  const CircuitSummary s = analyze(cnot_fanout);
  CHECK(s.histogram == std::map<std::string, std::size_t>{{"X", 1}, {"CNOT", 1}, {"MEASURE", 1}});
  CHECK(s.width == 2);
  CHECK(s.depth == 3);

  MacroLibrary lib;
  register_builtin_oracles(lib);
  Circuit shor(6);
  shor.h(0).append(gates::macro("add", {3}, {0, 1, 2, 3, 4, 5}));
  const CircuitSummary before = analyze(shor);
  const CircuitSummary after = analyze(expand_macros(shor, lib));
  CHECK(before.macros == std::set<std::string>{"add"});
  CHECK(after.macros.empty());
  CHECK(after.gate_count > before.gate_count);
  CHECK(summary_to_json(after).find("\"depth\"") != std::string::npos);
}

TEST_CASE("synthetic devices") {
  const DeviceProfile ring = synth_device(8, Topology::Ring, 42);
  ring.validate();
  CHECK(ring.coupling.num_edges() == 8);
  for (Qubit q = 0; q < 8; ++q) {
    CHECK(ring.coupling.neighbors(q).size() == 2);
    CHECK(ring.coupling.adjacent(q, (q + 1) % 8));
  }
  for (const auto& [a, b, s] : ring.coupling.edges()) {
    CHECK(s >= 0.85);
    CHECK(s <= 0.99);
  }
  for (double r : ring.oneq_success) {
    CHECK(r >= 0.97);
    CHECK(r <= 0.999);
  }
  for (const auto& r : ring.readout) {
    CHECK(r.p[1][0] >= 0.01);
    CHECK(r.p[1][0] <= 0.08);
  }
  CHECK(same_profile(ring, synth_device(8, Topology::Ring, 42)));
  CHECK_FALSE(same_profile(ring, synth_device(8, Topology::Ring, 43)));

  CHECK(synth_device(5, Topology::Star, 1).coupling.neighbors(0).size() == 4);
  CHECK(synth_device(9, Topology::Grid, 1).coupling.num_edges() == 12);
  CHECK(synth_device(7, Topology::Grid, 1).coupling.connected());
  CHECK(synth_device(6, Topology::Complete, 1).coupling.complete());
  CHECK(synth_device(1, Topology::Line, 1).epsilon > 0);
  CHECK_THROWS_AS(synth_device(2, Topology::Ring, 1), Error);
}

TEST_CASE("device JSON round trip and validation") {
  const DeviceProfile d = synth_device(5, Topology::Grid, 9);
  CHECK(same_profile(device_from_json(device_to_json(d)), d));
  CHECK_THROWS_AS(device_from_json("{}"), Error);
  DeviceProfile broken = d;
  broken.coupling = CouplingGraph(5);
  try {
    device_from_json(device_to_json(broken));
    FAIL("expected CorruptProfile");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CorruptProfile);
  }
}

TEST_CASE("registry") {
  TempDir dir;
  DeviceRegistry reg(dir.path);
  CHECK(reg.list_devices().empty());
  const DeviceProfile a = synth_device(4, Topology::Line, 1);
  DeviceProfile b = synth_device(3, Topology::Complete, 2);
  b.name = "lab.b";
  reg.store_device(a);
  reg.store_device(b);
  CHECK(reg.list_devices() == std::vector<std::string>{"lab.b", a.name});
  CHECK(same_profile(reg.load_device(a.name), a));
  try {
    reg.load_device("missing");
    FAIL("expected NotFound");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotFound);
  }
  CHECK_THROWS_AS(reg.load_device("../etc"), Error);

  std::ofstream(dir.path / "devices" / "bad.json") << "{\"name\": 1}";
  try {
    reg.load_device("bad");
    FAIL("expected CorruptProfile");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CorruptProfile);
  }

  try {
    reg.latest_calibration(a.name, Timestamp::parse("2030-01-01T00:00:00Z"));
    FAIL("expected NotFound");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotFound);
  }
  reg.append_calibration(a.name, cal_at("2024-01-01T00:00:00Z", 0.01));
  reg.append_calibration(a.name, cal_at("2024-02-01T00:00:00Z", 0.02));
  try {
    reg.append_calibration(a.name, cal_at("2024-01-15T00:00:00Z", 0.03));
    FAIL("expected OutOfOrder");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfOrder);
  }
  CHECK(reg.calibrations(a.name).size() == 2);
  CHECK(reg.latest_calibration(a.name, Timestamp::parse("2024-01-20T00:00:00Z")).C(1, 0) == 0.01);
  CHECK(reg.latest_calibration(a.name, Timestamp::parse("2024-02-01T00:00:00Z")).C(1, 0) == 0.02);
  try {
    reg.latest_calibration(a.name, Timestamp::parse("2023-01-01T00:00:00Z"));
    FAIL("expected NotFound");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotFound);
  }
  for (const auto& entry : fs::recursive_directory_iterator(dir.path)) {
    CHECK(entry.path().string().find(".tmp") == std::string::npos);
  }
}
