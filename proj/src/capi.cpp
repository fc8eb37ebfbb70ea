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

#include "qforge/qforge.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include <json.hpp>

#include "qforge/circuit.hpp"
#include "qforge/encoders.hpp"
#include "qforge/error.hpp"
#include "qforge/macro.hpp"
#include "qforge/mapper.hpp"
#include "qforge/oracles.hpp"
#include "qforge/provenance.hpp"
#include "qforge/qasm.hpp"
#include "qforge/qec.hpp"
#include "qforge/readout.hpp"
#include "qforge/rewriter.hpp"
#include "qforge/schedule.hpp"
#include "qforge/simulator.hpp"

struct qf_circuit {
  qforge::Circuit value;
};
struct qf_device {
  qforge::DeviceProfile value;
};
struct qf_calibration {
  qforge::CalibrationMatrix value;
};

namespace {

using nlohmann::json;
using namespace qforge;

thread_local std::string g_last_error;

qf_status fail(qf_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename F>
qf_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return QF_OK;
  } catch (const Error& e) {
    return fail(static_cast<qf_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(QF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(QF_ERR_INTERNAL, e.what());
  }
}

template <typename T>
const T& need(const T* p, const char* what) {
  if (p == nullptr) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
  return *p;
}

const char* need(const char* p, const char* what) {
  if (p == nullptr) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
  return p;
}

template <typename T>
void need_out(T* p) {
  if (p == nullptr) throw Error(ErrorCode::InvalidArgument, "output pointer must not be NULL");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put_string(char** out, const std::string& s) {
  need_out(out);
  *out = dup_string(s);
}

qf_circuit* wrap(Circuit c) { return new qf_circuit{std::move(c)}; }

const MacroLibrary& builtin_library() {
  static const MacroLibrary lib = [] {
    MacroLibrary l;
    register_builtin_oracles(l);
    return l;
  }();
  return lib;
}

json allocation_json(const Allocation& a) {
  json arr = json::array();
  for (const auto& p : a) {
    if (p) {
      arr.push_back(*p);
    } else {
      arr.push_back(nullptr);
    }
  }
  return arr;
}

std::span<const double> span_of(const double* xs, std::size_t count) {
  if (xs == nullptr && count > 0) throw Error(ErrorCode::InvalidArgument, "data must not be NULL");
  return {xs, count};
}

}  // namespace

extern "C" {

const char* qf_version(void) { return "0.1.0"; }

const char* qf_status_name(qf_status status) {
  if (status == QF_OK) return "Ok";
  if (status == QF_ERR_INTERNAL) return "Internal";
  if (status >= QF_ERR_INVALID_ARGUMENT && status <= QF_ERR_IO) {
    return to_string(static_cast<ErrorCode>(status)).data();
  }
  return "Unknown";
}

const char* qf_last_error(void) { return g_last_error.c_str(); }

void qf_string_free(char* s) { std::free(s); }

// ---------------------------------------------------------------- circuits

qf_status qf_circuit_parse_qasm(const char* text, qf_circuit** out) {
  return guarded([&] {
    need_out(out);
    *out = wrap(parse_qasm(need(text, "text")));
  });
}

qf_status qf_circuit_emit_qasm(const qf_circuit* c, char** out) {
  return guarded([&] { put_string(out, emit_qasm(need(c, "circuit").value)); });
}

void qf_circuit_free(qf_circuit* c) { delete c; }

qf_status qf_circuit_num_qubits(const qf_circuit* c, size_t* out) {
  return guarded([&] {
    need_out(out);
    *out = need(c, "circuit").value.num_qubits();
  });
}

qf_status qf_circuit_num_gates(const qf_circuit* c, size_t* out) {
  return guarded([&] {
    need_out(out);
    *out = need(c, "circuit").value.size();
  });
}

qf_status qf_circuit_depth(const qf_circuit* c, size_t* out) {
  return guarded([&] {
    need_out(out);
    *out = depth(need(c, "circuit").value);
  });
}

qf_status qf_circuit_width(const qf_circuit* c, size_t* out) {
  return guarded([&] {
    need_out(out);
    *out = width(need(c, "circuit").value);
  });
}

qf_status qf_circuit_has_measurement(const qf_circuit* c, int* out) {
  return guarded([&] {
    need_out(out);
    *out = has_measurement(need(c, "circuit").value) ? 1 : 0;
  });
}

qf_status qf_circuit_measure_all(qf_circuit* c) {
  return guarded([&] {
    Circuit& circuit = const_cast<Circuit&>(need(c, "circuit").value);
    if (circuit.num_cbits() < circuit.num_qubits()) circuit.set_num_cbits(circuit.num_qubits());
    for (Qubit q = 0; q < circuit.num_qubits(); ++q) circuit.measure(q, q);
  });
}

qf_status qf_circuit_summary_json(const qf_circuit* c, char** out) {
  return guarded([&] { put_string(out, summary_to_json(analyze(need(c, "circuit").value))); });
}

qf_status qf_circuit_expand(const qf_circuit* c, size_t limit, qf_circuit** out) {
  return guarded([&] {
    need_out(out);
    *out = wrap(expand_macros(need(c, "circuit").value, builtin_library(), limit));
  });
}

qf_status qf_circuit_protect(const qf_circuit* c, size_t qubit, size_t from_gate, qf_circuit** out) {
  return guarded([&] {
    need_out(out);
    *out = wrap(protect_qubit(need(c, "circuit").value, qubit, from_gate));
  });
}

// ----------------------------------------------------------------- oracles

qf_status qf_oracle_circuit(const char* name, size_t size, qf_circuit** out) {
  return guarded([&] {
    need_out(out);
    const std::string n = need(name, "name");
    if (n == "qft") {
      *out = wrap(qft_circuit(size));
    } else if (n == "iqft") {
      *out = wrap(iqft_circuit(size));
    } else if (n == "add") {
      *out = wrap(draper_adder(size));
    } else {
      throw Error(ErrorCode::UnknownMacro, "no built-in oracle named '" + n + "'");
    }
  });
}

// ---------------------------------------------------------------- encoders

qf_status qf_encode_basis(const double* xs, size_t count, int integer_bits, int fraction_bits,
                          int round_half_up, char** bits_out, qf_circuit** out) {
  return guarded([&] {
    need_out(out);
    const FixedPointFormat fmt{integer_bits, fraction_bits,
                               round_half_up ? Rounding::HalfUp : Rounding::TowardZero};
    BasisEncoding enc = encode_basis_vector(span_of(xs, count), fmt);
    if (bits_out != nullptr) *bits_out = dup_string(enc.bits);
    *out = wrap(std::move(enc.circuit));
  });
}

qf_status qf_encode_angle(const double* xs, size_t count, qf_circuit** out) {
  return guarded([&] {
    need_out(out);
    *out = wrap(encode_angle(span_of(xs, count)));
  });
}

qf_status qf_encode_amplitude(const double* xs, size_t count, qf_circuit** out) {
  return guarded([&] {
    need_out(out);
    *out = wrap(encode_amplitude(span_of(xs, count)));
  });
}

qf_status qf_encode_schmidt(const double* re, const double* im, size_t count, qf_circuit** out) {
  return guarded([&] {
    need_out(out);
    span_of(re, count);
    std::vector<Complex> x(count);
    for (std::size_t i = 0; i < count; ++i) x[i] = Complex(re[i], im ? im[i] : 0.0);
    *out = wrap(schmidt_prepare_circuit(x));
  });
}

// -------------------------------------------------------------- simulation

qf_status qf_simulate(const qf_circuit* c, size_t shots, uint64_t seed, const qf_device* device,
                      double gate_flip, char** counts_json) {
  return guarded([&] {
    NoiseModel noise = device ? device->value.noise_model(seed) : NoiseModel{};
    noise.seed = seed;
    noise.gate_flip = gate_flip;
    put_string(counts_json, counts_to_json(run(need(c, "circuit").value, shots, noise)));
  });
}

// ----------------------------------------------------------------- devices

qf_status qf_device_synth(size_t num_qubits, const char* topology, uint64_t seed, qf_device** out) {
  return guarded([&] {
    need_out(out);
    *out = new qf_device{synth_device(num_qubits, topology_from_name(need(topology, "topology")), seed)};
  });
}

qf_status qf_device_from_json(const char* text, qf_device** out) {
  return guarded([&] {
    need_out(out);
    *out = new qf_device{device_from_json(need(text, "json"))};
  });
}

qf_status qf_device_to_json(const qf_device* d, char** out) {
  return guarded([&] { put_string(out, device_to_json(need(d, "device").value)); });
}

void qf_device_free(qf_device* d) { delete d; }

qf_status qf_device_num_qubits(const qf_device* d, size_t* out) {
  return guarded([&] {
    need_out(out);
    *out = need(d, "device").value.num_qubits;
  });
}

qf_status qf_device_epsilon(const qf_device* d, double* out) {
  return guarded([&] {
    need_out(out);
    *out = need(d, "device").value.epsilon;
  });
}

qf_status qf_registry_store(const char* root, const qf_device* d) {
  return guarded([&] { DeviceRegistry(need(root, "root")).store_device(need(d, "device").value); });
}

qf_status qf_registry_load(const char* root, const char* name, qf_device** out) {
  return guarded([&] {
    need_out(out);
    *out = new qf_device{DeviceRegistry(need(root, "root")).load_device(need(name, "name"))};
  });
}

qf_status qf_registry_list(const char* root, char** out) {
  return guarded([&] { put_string(out, json(DeviceRegistry(need(root, "root")).list_devices()).dump()); });
}

qf_status qf_registry_append_calibration(const char* root, const char* device,
                                         const qf_calibration* cal) {
  return guarded([&] {
    DeviceRegistry(need(root, "root")).append_calibration(need(device, "device"), need(cal, "calibration").value);
  });
}

qf_status qf_registry_latest_calibration(const char* root, const char* device, const char* before,
                                         qf_calibration** out) {
  return guarded([&] {
    need_out(out);
    *out = new qf_calibration{DeviceRegistry(need(root, "root"))
                                  .latest_calibration(need(device, "device"),
                                                      Timestamp::parse(need(before, "before")))};
  });
}

// ------------------------------------------------- mapping / transpilation

qf_status qf_map(const qf_circuit* c, const qf_device* d, qf_circuit** out, char** report_json) {
  return guarded([&] {
    need_out(out);
    need_out(report_json);
    const Circuit& circuit = need(c, "circuit").value;
    const CouplingGraph& g = need(d, "device").value.coupling;
    const Circuit flat = decompose_multiqubit(circuit);
    const AllocationResult alloc = initial_allocation(flat, g);
    RoutedCircuit routed = route(flat, g, alloc.allocation);
    const json report{{"allocation", allocation_json(routed.initial)},
                      {"final_placement", allocation_json(routed.final_placement)},
                      {"swaps_inserted", routed.swaps_inserted},
                      {"allocation_weight", alloc.weight},
                      {"success_estimate",
                       success_estimate(routed.circuit, g, identity_allocation(g.num_qubits()))},
                      {"depth_before", depth(circuit)},
                      {"depth_after", depth(routed.circuit)}};
    *report_json = dup_string(report.dump(2));
    *out = wrap(std::move(routed.circuit));
  });
}

qf_status qf_transpile(const qf_circuit* c, const qf_device* d, int cubed_swap_cost, qf_circuit** out,
                       char** report_json) {
  return guarded([&] {
    need_out(out);
    need_out(report_json);
    const DeviceProfile& dev = need(d, "device").value;
    PipelineOptions options;
    options.swap_cost = cubed_swap_cost ? SwapCost::CubedEdgeRate : SwapCost::EdgeRate;
    PipelineResult r =
        rewrite_pipeline(need(c, "circuit").value, dev.coupling, dev.basis, builtin_library(), options);
    const json report{{"device", dev.name},
                      {"depth_before", r.depth_before},
                      {"depth_after", r.depth_after},
                      {"width_before", r.width_before},
                      {"width_after", r.width_after},
                      {"swaps_inserted", r.swaps_inserted},
                      {"success_estimate", r.success_estimate},
                      {"allocation_weight", r.allocation_weight},
                      {"initial", allocation_json(r.routed.initial)},
                      {"final", allocation_json(r.routed.final_placement)}};
    *report_json = dup_string(report.dump(2));
    *out = wrap(std::move(r.routed.circuit));
  });
}

// ---------------------------------------------------------------- readout

qf_status qf_calibrate(const qf_device* d, size_t num_qubits, size_t shots, uint64_t seed,
                       const char* timestamp, qf_calibration** out) {
  return guarded([&] {
    need_out(out);
    const DeviceProfile& dev = need(d, "device").value;
    const std::size_t n = num_qubits == 0 ? dev.num_qubits : num_qubits;
    if (n > dev.num_qubits) {
      throw Error(ErrorCode::InvalidArgument, "device has only " + std::to_string(dev.num_qubits) + " qubits");
    }
    NoiseModel noise = dev.noise_model(seed);
    noise.readout.resize(n);
    const Timestamp ts = timestamp ? Timestamp::parse(timestamp) : dev.timestamp;
    *out = new qf_calibration{calibrate(n, shots, noise, ts)};
  });
}

qf_status qf_calibration_from_json(const char* text, qf_calibration** out) {
  return guarded([&] {
    need_out(out);
    *out = new qf_calibration{calibration_from_json(need(text, "json"))};
  });
}

qf_status qf_calibration_to_json(const qf_calibration* cal, char** out) {
  return guarded([&] { put_string(out, calibration_to_json(need(cal, "calibration").value)); });
}

void qf_calibration_free(qf_calibration* cal) { delete cal; }

qf_status qf_unfold(const qf_calibration* cal, const char* counts_json, int clip_renormalize, char** out) {
  return guarded([&] {
    const CalibrationMatrix& m = need(cal, "calibration").value;
    const Counts counts = counts_from_json(need(counts_json, "counts"));
    const UnfoldMode mode = clip_renormalize ? UnfoldMode::ClipRenormalize : UnfoldMode::Raw;
    const std::vector<double> t = unfold(counts_to_vector(counts, m.n), m, mode);
    json dist = json::object();
    for (std::size_t i = 0; i < t.size(); ++i) dist[index_to_bitstring(i, m.n)] = t[i];
    const json result{{"mode", clip_renormalize ? "clip_renormalize" : "raw"},
                      {"calibration_timestamp", m.timestamp.to_string()},
                      {"distribution", dist}};
    put_string(out, result.dump(2));
  });
}

qf_status qf_assignment_fidelity(double p01, double p10, double* out) {
  return guarded([&] {
    need_out(out);
    *out = assignment_fidelity(p01, p10);
  });
}

// -------------------------------------------------------------- estimation

qf_status qf_feasibility(double depth_value, double width_value, double epsilon, double margin,
                         qf_verdict* verdict, double* ratio) {
  return guarded([&] {
    need_out(verdict);
    need_out(ratio);
    const Feasibility f = feasibility(depth_value, width_value, epsilon, margin);
    *verdict = static_cast<qf_verdict>(f.verdict);
    *ratio = f.ratio;
  });
}

const char* qf_verdict_name(qf_verdict verdict) {
  switch (verdict) {
    case QF_FEASIBLE: return "Feasible";
    case QF_MARGINAL: return "Marginal";
    case QF_INFEASIBLE: return "Infeasible";
  }
  return "Unknown";
}

}  // extern "C"
