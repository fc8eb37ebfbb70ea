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


/*
 * qforge C API.
 *
 * Objects are opaque handles created by the library and released with the
 * matching *_free function. Every fallible call returns a qf_status; on
 * failure qf_last_error() describes the problem for the calling thread.
 * Strings returned through char** parameters are heap allocated and must be
 * released with qf_string_free. Text formats are OpenQASM 2 for circuits and
 * JSON for everything else.
 */

#ifndef QFORGE_QFORGE_H
#define QFORGE_QFORGE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QFORGE_BUILDING_LIBRARY)
#    define QF_API __declspec(dllexport)
#  else
#    define QF_API __declspec(dllimport)
#  endif
#else
#  define QF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qf_status {
  QF_OK = 0,
  QF_ERR_INVALID_ARGUMENT = 1,
  QF_ERR_SYNTAX = 2,
  QF_ERR_UNSUPPORTED_CONSTRUCT = 3,
  QF_ERR_UNKNOWN_MACRO = 4,
  QF_ERR_RECURSION_LIMIT = 5,
  QF_ERR_TOO_MANY_QUBITS = 6,
  QF_ERR_MEASUREMENT_PRESENT = 7,
  QF_ERR_NO_MEASUREMENT = 8,
  QF_ERR_OVERFLOW = 9,
  QF_ERR_DUPLICATE_ELEMENT = 10,
  QF_ERR_LENGTH_MISMATCH = 11,
  QF_ERR_ZERO_VECTOR = 12,
  QF_ERR_NOT_NORMALIZED = 13,
  QF_ERR_SHAPE_MISMATCH = 14,
  QF_ERR_UNSUPPORTED_SIZE = 15,
  QF_ERR_SIZE_OUT_OF_RANGE = 16,
  QF_ERR_NAME_COLLISION = 17,
  QF_ERR_DISCONNECTED = 18,
  QF_ERR_TOO_WIDE = 19,
  QF_ERR_NON_ADJACENT_GATE = 20,
  QF_ERR_NOT_UNITARY = 21,
  QF_ERR_UNLOWERED_GATE = 22,
  QF_ERR_MISSING_STATE = 23,
  QF_ERR_SINGULAR_MATRIX = 24,
  QF_ERR_UNSUPPORTED_LOGICAL_GATE = 25,
  QF_ERR_NOT_FOUND = 26,
  QF_ERR_CORRUPT_PROFILE = 27,
  QF_ERR_OUT_OF_ORDER = 28,
  QF_ERR_IO = 29,
  QF_ERR_INTERNAL = 100
} qf_status;

typedef struct qf_circuit qf_circuit;
typedef struct qf_device qf_device;
typedef struct qf_calibration qf_calibration;

typedef enum qf_verdict { QF_FEASIBLE = 0, QF_MARGINAL = 1, QF_INFEASIBLE = 2 } qf_verdict;

/* ---- diagnostics ---- */
QF_API const char* qf_version(void);
/* Stable identifier such as "SyntaxError"; "Ok" for QF_OK. */
QF_API const char* qf_status_name(qf_status status);
/* Message of the last failed call on this thread ("" if none). */
QF_API const char* qf_last_error(void);
QF_API void qf_string_free(char* s);

/* ---- circuits ---- */
QF_API qf_status qf_circuit_parse_qasm(const char* text, qf_circuit** out);
QF_API qf_status qf_circuit_emit_qasm(const qf_circuit* c, char** out);
QF_API void qf_circuit_free(qf_circuit* c);
QF_API qf_status qf_circuit_num_qubits(const qf_circuit* c, size_t* out);
QF_API qf_status qf_circuit_num_gates(const qf_circuit* c, size_t* out);
QF_API qf_status qf_circuit_depth(const qf_circuit* c, size_t* out);
QF_API qf_status qf_circuit_width(const qf_circuit* c, size_t* out);
QF_API qf_status qf_circuit_has_measurement(const qf_circuit* c, int* out);
/* Measures every qubit into a classical bit of the same index, growing the
 * classical register as needed. */
QF_API qf_status qf_circuit_measure_all(qf_circuit* c);
/* {"num_qubits","num_cbits","depth","width","gate_count","histogram","macros"} */
QF_API qf_status qf_circuit_summary_json(const qf_circuit* c, char** out);
/* Expands MACRO gates against the built-in oracles (qft, iqft, add). */
QF_API qf_status qf_circuit_expand(const qf_circuit* c, size_t limit, qf_circuit** out);
/* Three-qubit bit-flip protection of `qubit` starting at gate `from_gate`. */
QF_API qf_status qf_circuit_protect(const qf_circuit* c, size_t qubit, size_t from_gate,
                                    qf_circuit** out);

/* ---- oracles ---- */
/* name is "qft", "iqft" or "add". */
QF_API qf_status qf_oracle_circuit(const char* name, size_t size, qf_circuit** out);

/* ---- encoders ---- */
/* Fixed point: sign, integer_bits + 1 integer bits, fraction_bits bits.
 * bits_out may be NULL. */
QF_API qf_status qf_encode_basis(const double* xs, size_t count, int integer_bits,
                                 int fraction_bits, int round_half_up, char** bits_out,
                                 qf_circuit** out);
QF_API qf_status qf_encode_angle(const double* xs, size_t count, qf_circuit** out);
QF_API qf_status qf_encode_amplitude(const double* xs, size_t count, qf_circuit** out);
/* Two-qubit state given as 4 real and 4 imaginary parts (imag may be NULL). */
QF_API qf_status qf_encode_schmidt(const double* re, const double* im, size_t count,
                                   qf_circuit** out);

/* ---- simulation ---- */
/* Counts JSON {"shots","counts"}. device may be NULL (perfect readout);
 * otherwise its readout confusion applies per circuit qubit. */
QF_API qf_status qf_simulate(const qf_circuit* c, size_t shots, uint64_t seed,
                             const qf_device* device, double gate_flip, char** counts_json);

/* ---- devices ---- */
/* topology: line, ring, star, grid or complete. */
QF_API qf_status qf_device_synth(size_t num_qubits, const char* topology, uint64_t seed,
                                 qf_device** out);
QF_API qf_status qf_device_from_json(const char* json, qf_device** out);
QF_API qf_status qf_device_to_json(const qf_device* d, char** out);
QF_API void qf_device_free(qf_device* d);
QF_API qf_status qf_device_num_qubits(const qf_device* d, size_t* out);
QF_API qf_status qf_device_epsilon(const qf_device* d, double* out);

QF_API qf_status qf_registry_store(const char* root, const qf_device* d);
QF_API qf_status qf_registry_load(const char* root, const char* name, qf_device** out);
/* JSON array of device names. */
QF_API qf_status qf_registry_list(const char* root, char** out);
QF_API qf_status qf_registry_append_calibration(const char* root, const char* device,
                                                const qf_calibration* cal);
/* before: ISO-8601 timestamp. */
QF_API qf_status qf_registry_latest_calibration(const char* root, const char* device,
                                                const char* before, qf_calibration** out);

/* ---- mapping and transpilation ---- */
/* Allocation and SWAP routing only. Report: {"allocation","final_placement",
 * "swaps_inserted","allocation_weight","success_estimate","depth_before",
 * "depth_after"}. */
QF_API qf_status qf_map(const qf_circuit* c, const qf_device* d, qf_circuit** out,
                        char** report_json);
/* Full pipeline onto the device basis. Report: {"depth_before","depth_after",
 * "width_before","width_after","swaps_inserted","success_estimate",
 * "allocation_weight","initial","final"}. cubed_swap_cost selects the s^3
 * SWAP costing. */
QF_API qf_status qf_transpile(const qf_circuit* c, const qf_device* d, int cubed_swap_cost,
                              qf_circuit** out, char** report_json);

/* ---- readout mitigation ---- */
/* Calibrates qubits 0..num_qubits-1 of the device (0 means all). timestamp
 * may be NULL for the device's own timestamp. */
QF_API qf_status qf_calibrate(const qf_device* d, size_t num_qubits, size_t shots, uint64_t seed,
                              const char* timestamp, qf_calibration** out);
QF_API qf_status qf_calibration_from_json(const char* json, qf_calibration** out);
QF_API qf_status qf_calibration_to_json(const qf_calibration* cal, char** out);
QF_API void qf_calibration_free(qf_calibration* cal);
/* Unfolds a counts JSON. Output {"mode","distribution":{"00":x,...}}. */
QF_API qf_status qf_unfold(const qf_calibration* cal, const char* counts_json,
                           int clip_renormalize, char** out);
QF_API qf_status qf_assignment_fidelity(double p01, double p10, double* out);

/* ---- estimation ---- */
QF_API qf_status qf_feasibility(double depth, double width, double epsilon, double margin,
                                qf_verdict* verdict, double* ratio);
QF_API const char* qf_verdict_name(qf_verdict verdict);

#ifdef __cplusplus
}
#endif

#endif /* QFORGE_QFORGE_H */
