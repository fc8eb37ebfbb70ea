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


// forge: command-line front end over the qforge C API.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qforge/qforge.h"

namespace {

using nlohmann::json;

// Raised for domain failures; carries the message printed before exit 1.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(qf_status s) {
  if (s != QF_OK) {
    throw DomainError(std::string(qf_status_name(s)) + ": " + qf_last_error());
  }
}

struct CircuitDeleter {
  void operator()(qf_circuit* c) const { qf_circuit_free(c); }
};
struct DeviceDeleter {
  void operator()(qf_device* d) const { qf_device_free(d); }
};
struct CalibrationDeleter {
  void operator()(qf_calibration* c) const { qf_calibration_free(c); }
};
using CircuitPtr = std::unique_ptr<qf_circuit, CircuitDeleter>;
using DevicePtr = std::unique_ptr<qf_device, DeviceDeleter>;
using CalibrationPtr = std::unique_ptr<qf_calibration, CalibrationDeleter>;

// Takes ownership of a malloc'd string from the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  qf_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("Io: cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("Io: cannot write '" + path + "'");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
  if (!out) throw DomainError("Io: write to '" + path + "' failed");
}

CircuitPtr load_circuit(const std::string& path) {
  qf_circuit* c = nullptr;
  check(qf_circuit_parse_qasm(read_file(path).c_str(), &c));
  return CircuitPtr(c);
}

DevicePtr load_device(const std::string& path) {
  qf_device* d = nullptr;
  check(qf_device_from_json(read_file(path).c_str(), &d));
  return DevicePtr(d);
}

std::string emit(const qf_circuit* c) {
  char* text = nullptr;
  check(qf_circuit_emit_qasm(c, &text));
  return take(text);
}

// One vector of comma-separated decimals.
std::vector<double> parse_vector(const std::string& text) {
  std::vector<double> xs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) throw DomainError("InvalidArgument: empty vector component");
    const auto e = item.find_last_not_of(" \t\r\n");
    const std::string token = item.substr(b, e - b + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) throw DomainError("InvalidArgument: '" + token + "' is not a number");
    xs.push_back(v);
  }
  if (xs.empty()) throw DomainError("InvalidArgument: empty data vector");
  return xs;
}

// Data file: exactly one non-empty line holding a vector.
std::string single_vector_line(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  std::string found;
  while (std::getline(ss, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!found.empty()) throw DomainError("InvalidArgument: data file holds more than one vector");
    found = line;
  }
  if (found.empty()) throw DomainError("InvalidArgument: data file is empty");
  return found;
}

std::string histogram_csv(const json& hist) {
  std::ostringstream out;
  out << "outcome,value\n";
  for (const auto& [k, v] : hist.items()) out << k << ',' << v.dump() << '\n';
  return out.str();
}

// ----------------------------------------------------------------------

struct Options {
  std::string in, out, report, device, registry, name, file, csv, data, data_file, method, topology,
      timestamp, cal, counts, before;
  std::size_t shots = 1024, size = 0, qubit = 0, from_gate = 0, limit = 64, qubits = 0, int_bits = 0,
              frac_bits = 0;
  std::uint64_t seed = 1;
  double depth = 0, width = 0, epsilon = 0, margin = 0.1, gate_flip = 0.0;
  bool half_up = false, cubed = false, raw = false, no_measure = false;
};

void cmd_analyze(const Options& o) {
  auto c = load_circuit(o.in);
  char* s = nullptr;
  check(qf_circuit_summary_json(c.get(), &s));
  write_output(o.out, take(s));
}

void cmd_encode(const Options& o) {
  if (o.data.empty() == o.data_file.empty()) {
    throw CLI::ValidationError("encode", "exactly one of --data or --data-file is required");
  }
  const std::vector<double> xs =
      parse_vector(o.data.empty() ? single_vector_line(read_file(o.data_file)) : o.data);
  qf_circuit* c = nullptr;
  if (o.method == "basis") {
    char* bits = nullptr;
    check(qf_encode_basis(xs.data(), xs.size(), static_cast<int>(o.int_bits), static_cast<int>(o.frac_bits),
                          o.half_up ? 1 : 0, &bits, &c));
    std::cerr << "bits: " << take(bits) << '\n';
  } else if (o.method == "angle") {
    check(qf_encode_angle(xs.data(), xs.size(), &c));
  } else if (o.method == "amplitude") {
    check(qf_encode_amplitude(xs.data(), xs.size(), &c));
  } else {
    check(qf_encode_schmidt(xs.data(), nullptr, xs.size(), &c));
  }
  CircuitPtr owned(c);
  write_output(o.out, emit(owned.get()));
}

void cmd_expand(const Options& o) {
  auto c = load_circuit(o.in);
  qf_circuit* e = nullptr;
  check(qf_circuit_expand(c.get(), o.limit, &e));
  CircuitPtr owned(e);
  write_output(o.out, emit(owned.get()));
}

void cmd_map_or_transpile(const Options& o, bool transpile) {
  auto c = load_circuit(o.in);
  auto d = load_device(o.device);
  qf_circuit* r = nullptr;
  char* report = nullptr;
  if (transpile) {
    check(qf_transpile(c.get(), d.get(), o.cubed ? 1 : 0, &r, &report));
  } else {
    check(qf_map(c.get(), d.get(), &r, &report));
  }
  CircuitPtr owned(r);
  const std::string report_text = take(report);
  write_output(o.out, emit(owned.get()));
  if (!o.report.empty()) {
    write_output(o.report, report_text);
  } else {
    std::cerr << report_text << '\n';
  }
}

void cmd_simulate(const Options& o) {
  auto parsed = load_circuit(o.in);
  qf_circuit* e = nullptr;
  check(qf_circuit_expand(parsed.get(), o.limit, &e));
  CircuitPtr c(e);
  int measured = 0;
  check(qf_circuit_has_measurement(c.get(), &measured));
  if (!measured && !o.no_measure) check(qf_circuit_measure_all(c.get()));
  DevicePtr d;
  if (!o.device.empty()) d = load_device(o.device);
  char* counts = nullptr;
  check(qf_simulate(c.get(), o.shots, o.seed, d.get(), o.gate_flip, &counts));
  const std::string text = take(counts);
  write_output(o.out, text);
  if (!o.csv.empty()) write_output(o.csv, histogram_csv(json::parse(text).at("counts")));
}

void cmd_calibrate(const Options& o) {
  auto d = load_device(o.device);
  qf_calibration* cal = nullptr;
  check(qf_calibrate(d.get(), o.qubits, o.shots, o.seed, o.timestamp.empty() ? nullptr : o.timestamp.c_str(),
                     &cal));
  CalibrationPtr owned(cal);
  char* text = nullptr;
  check(qf_calibration_to_json(owned.get(), &text));
  write_output(o.out, take(text));
  if (!o.registry.empty()) {
    check(qf_registry_append_calibration(o.registry.c_str(), o.name.empty() ? nullptr : o.name.c_str(),
                                         owned.get()));
  }
}

void cmd_unfold(const Options& o) {
  qf_calibration* cal = nullptr;
  check(qf_calibration_from_json(read_file(o.cal).c_str(), &cal));
  CalibrationPtr owned(cal);
  char* result = nullptr;
  check(qf_unfold(owned.get(), read_file(o.counts).c_str(), o.raw ? 0 : 1, &result));
  const std::string text = take(result);
  write_output(o.out, text);
  if (!o.csv.empty()) write_output(o.csv, histogram_csv(json::parse(text).at("distribution")));
}

void cmd_protect(const Options& o) {
  auto c = load_circuit(o.in);
  qf_circuit* p = nullptr;
  check(qf_circuit_protect(c.get(), o.qubit, o.from_gate, &p));
  CircuitPtr owned(p);
  write_output(o.out, emit(owned.get()));
}

void cmd_estimate(const Options& o, bool from_circuit) {
  double d = o.depth;
  double w = o.width;
  double eps = o.epsilon;
  if (from_circuit) {
    if (o.device.empty() && eps == 0.0) {
      throw CLI::ValidationError("estimate", "--in needs --device or --epsilon");
    }
    auto c = load_circuit(o.in);
    char* s = nullptr;
    check(qf_circuit_summary_json(c.get(), &s));
    const json summary = json::parse(take(s));
    d = summary.at("depth").get<double>();
    w = summary.at("width").get<double>();
    if (!o.device.empty()) check(qf_device_epsilon(load_device(o.device).get(), &eps));
  }
  qf_verdict v{};
  double r = 0.0;
  check(qf_feasibility(d, w, eps, o.margin, &v, &r));
  std::ostringstream ratio;
  ratio.precision(6);
  ratio << r;
  std::cout << "verdict: " << qf_verdict_name(v) << "\nratio: " << ratio.str() << '\n';
}

void cmd_oracle_emit(const Options& o) {
  qf_circuit* c = nullptr;
  check(qf_oracle_circuit(o.name.c_str(), o.size, &c));
  CircuitPtr owned(c);
  write_output(o.out, emit(owned.get()));
}

void cmd_device_list(const Options& o) {
  char* list = nullptr;
  check(qf_registry_list(o.registry.c_str(), &list));
  for (const auto& name : json::parse(take(list))) std::cout << name.get<std::string>() << '\n';
}

void cmd_device_show(const Options& o) {
  qf_device* d = nullptr;
  check(qf_registry_load(o.registry.c_str(), o.name.c_str(), &d));
  DevicePtr owned(d);
  char* text = nullptr;
  check(qf_device_to_json(owned.get(), &text));
  write_output(o.out, take(text));
}

void cmd_device_import(const Options& o) {
  auto d = load_device(o.file);
  check(qf_registry_store(o.registry.c_str(), d.get()));
}

void cmd_device_synth(const Options& o) {
  qf_device* d = nullptr;
  check(qf_device_synth(o.qubits, o.topology.c_str(), o.seed, &d));
  DevicePtr owned(d);
  char* text = nullptr;
  check(qf_device_to_json(owned.get(), &text));
  write_output(o.out, take(text));
  if (!o.registry.empty()) check(qf_registry_store(o.registry.c_str(), owned.get()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"forge: quantum circuit compilation toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("forge ") + qf_version());
  Options o;

  auto* analyze = app.add_subcommand("analyze", "Print a JSON summary of a circuit");
  analyze->add_option("--in", o.in, "Input OpenQASM file ('-' for stdin)")->required();
  analyze->add_option("--out", o.out, "Output file (default stdout)");

  auto* encode = app.add_subcommand("encode", "Encode classical data as a state-preparation circuit");
  encode->add_option("--method", o.method, "Encoding")
      ->required()
      ->check(CLI::IsMember({"basis", "angle", "amplitude", "schmidt"}));
  encode->add_option("--data", o.data, "Comma-separated decimals");
  encode->add_option("--data-file", o.data_file, "File holding one comma-separated vector");
  encode->add_option("--int-bits", o.int_bits, "Basis: integer bits per component");
  encode->add_option("--frac-bits", o.frac_bits, "Basis: fraction bits per component");
  encode->add_flag("--round-half-up", o.half_up, "Basis: round half up instead of truncating");
  encode->add_option("--out", o.out, "Output OpenQASM file (default stdout)");

  auto* expand = app.add_subcommand("expand", "Expand macros using the built-in oracle library");
  expand->add_option("--in", o.in, "Input OpenQASM file")->required();
  expand->add_option("--out", o.out, "Output OpenQASM file (default stdout)");
  expand->add_option("--limit", o.limit, "Maximum nesting depth")->capture_default_str();

  auto* map = app.add_subcommand("map", "Allocate and route a circuit onto a device");
  auto* transpile = app.add_subcommand("transpile", "Full rewrite pipeline for a device");
  for (auto* sub : {map, transpile}) {
    sub->add_option("--device", o.device, "Device profile JSON")->required();
    sub->add_option("--in", o.in, "Input OpenQASM file")->required();
    sub->add_option("--out", o.out, "Output OpenQASM file (default stdout)");
    sub->add_option("--report", o.report, "Report JSON file (default stderr)");
  }
  transpile->add_flag("--cubed-swap-cost", o.cubed, "Charge s^3 per SWAP in the success estimate");

  auto* simulate = app.add_subcommand("simulate", "Sample a circuit on the state-vector simulator");
  simulate->add_option("--in", o.in, "Input OpenQASM file")->required();
  simulate->add_option("--shots", o.shots, "Number of shots")->capture_default_str();
  simulate->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  simulate->add_option("--device", o.device, "Apply this device's readout errors");
  simulate->add_option("--gate-flip", o.gate_flip, "Per-gate X-flip probability")->check(CLI::Range(0.0, 1.0));
  simulate->add_flag("--no-measure-all", o.no_measure, "Do not add measurements to unmeasured circuits");
  simulate->add_option("--out", o.out, "Counts JSON file (default stdout)");
  simulate->add_option("--csv", o.csv, "Also write the histogram as CSV");

  auto* calibrate = app.add_subcommand("calibrate", "Build a readout calibration matrix for a device");
  calibrate->add_option("--device", o.device, "Device profile JSON")->required();
  calibrate->add_option("--shots", o.shots, "Shots per calibration circuit")->capture_default_str();
  calibrate->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  calibrate->add_option("--qubits", o.qubits, "Calibrate the first k qubits (default all)");
  calibrate->add_option("--timestamp", o.timestamp, "ISO-8601 UTC timestamp (default the device's)");
  calibrate->add_option("--out", o.out, "Calibration JSON file (default stdout)");
  auto* cal_registry = calibrate->add_option("--registry", o.registry, "Also append to this registry");
  calibrate->add_option("--name", o.name, "Registry device name")->needs(cal_registry);

  auto* unfold = app.add_subcommand("unfold", "Correct measured counts with a calibration matrix");
  unfold->add_option("--cal", o.cal, "Calibration JSON")->required();
  unfold->add_option("--counts", o.counts, "Counts JSON")->required();
  unfold->add_flag("--raw", o.raw, "Keep negative entries instead of clipping and renormalizing");
  unfold->add_option("--out", o.out, "Result JSON file (default stdout)");
  unfold->add_option("--csv", o.csv, "Also write the distribution as CSV");

  auto* protect = app.add_subcommand("protect", "Protect one qubit with the 3-qubit bit-flip code");
  protect->add_option("--in", o.in, "Input OpenQASM file")->required();
  protect->add_option("--qubit", o.qubit, "Qubit to protect")->required();
  protect->add_option("--from-gate", o.from_gate, "Index of the first protected gate")->required();
  protect->add_option("--out", o.out, "Output OpenQASM file (default stdout)");

  auto* estimate = app.add_subcommand("estimate", "Feasibility estimate for a depth/width pair");
  auto* est_depth = estimate->add_option("--depth", o.depth, "Circuit depth d");
  auto* est_width = estimate->add_option("--width", o.width, "Circuit width w");
  estimate->add_option("--epsilon", o.epsilon, "Effective error rate");
  estimate->add_option("--margin", o.margin, "Marginal band below r = 1")->capture_default_str();
  auto* est_in = estimate->add_option("--in", o.in, "Take depth and width from this circuit");
  estimate->add_option("--device", o.device, "Take epsilon from this device profile");
  est_in->excludes(est_depth)->excludes(est_width);

  auto* oracle = app.add_subcommand("oracle", "Built-in oracle circuits");
  oracle->require_subcommand(1);
  auto* oracle_emit = oracle->add_subcommand("emit", "Write an oracle as OpenQASM");
  oracle_emit->add_option("--name", o.name, "Oracle")->required()->check(CLI::IsMember({"qft", "iqft", "add"}));
  oracle_emit->add_option("--size", o.size, "Size parameter n")->required();
  oracle_emit->add_option("--out", o.out, "Output OpenQASM file (default stdout)");

  auto* device = app.add_subcommand("device", "Device profile registry");
  device->require_subcommand(1);
  auto* dev_list = device->add_subcommand("list", "List registered devices");
  auto* dev_show = device->add_subcommand("show", "Print a registered device profile");
  auto* dev_import = device->add_subcommand("import", "Register a device profile file");
  for (auto* sub : {dev_list, dev_show, dev_import}) {
    sub->add_option("--registry", o.registry, "Registry directory")->required();
  }
  dev_show->add_option("--name", o.name, "Device name")->required();
  dev_show->add_option("--out", o.out, "Output file (default stdout)");
  dev_import->add_option("--file", o.file, "Device profile JSON")->required();
  auto* dev_synth = device->add_subcommand("synth", "Generate a synthetic device profile");
  dev_synth->add_option("--qubits", o.qubits, "Number of qubits")->required();
  dev_synth->add_option("--topology", o.topology, "Coupling topology")
      ->required()
      ->check(CLI::IsMember({"line", "ring", "star", "grid", "complete"}));
  dev_synth->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
  dev_synth->add_option("--out", o.out, "Output file (default stdout)");
  dev_synth->add_option("--registry", o.registry, "Also register the device here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*analyze) cmd_analyze(o);
    if (*encode) cmd_encode(o);
    if (*expand) cmd_expand(o);
    if (*map) cmd_map_or_transpile(o, false);
    if (*transpile) cmd_map_or_transpile(o, true);
    if (*simulate) cmd_simulate(o);
    if (*calibrate) cmd_calibrate(o);
    if (*unfold) cmd_unfold(o);
    if (*protect) cmd_protect(o);
    if (*estimate) {
      const bool from_circuit = !o.in.empty();
      if (!from_circuit && (est_depth->count() == 0 || est_width->count() == 0)) {
        throw CLI::ValidationError("estimate", "give --depth and --width, or --in");
      }
      cmd_estimate(o, from_circuit);
    }
    if (*oracle_emit) cmd_oracle_emit(o);
    if (*dev_list) cmd_device_list(o);
    if (*dev_show) cmd_device_show(o);
    if (*dev_import) cmd_device_import(o);
    if (*dev_synth) cmd_device_synth(o);
  } catch (const CLI::Error& e) {
    std::cerr << "forge: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "forge: " << e.what() << '\n';
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "forge: unexpected library output: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
