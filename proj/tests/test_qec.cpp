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

#include <algorithm>
#include <cmath>

#include "qforge/error.hpp"
#include "qforge/provenance.hpp"
#include "qforge/qec.hpp"
#include "qforge/rewriter.hpp"
#include "qforge/schedule.hpp"
#include "qforge/simulator.hpp"
#include "support.hpp"

using namespace qforge;
using namespace qforge::testing;

namespace {

const LogicalQubitLayout kLayout{};

// Encode |input>, inject X on `errors`, recover. Five qubits d0 d1 d2 a0 a1.
Circuit experiment(bool input, std::vector<Qubit> errors) {
  Circuit c(5, 5);
  if (input) c.x(0);
  c.append(encode3_circuit(kLayout, 5));
  for (Qubit q : errors) c.x(q);
  c.append(syndrome_recover_circuit(kLayout, 5));
  return c;
}

Circuit measured(Circuit c) {
  for (Qubit q = 0; q < 3; ++q) c.measure(q, q);
  return c;
}

}  // namespace

TEST_CASE("encoding") {
  CHECK(std::abs(statevector(encode3_circuit(kLayout))[0] - 1.0) < 1e-12);
  Circuit one(5);
  one.x(0).append(encode3_circuit(kLayout));
  CHECK(std::abs(statevector(one)[bitstring_to_index("11100")] - 1.0) < 1e-12);
  Circuit plus(5);
  plus.h(0).append(encode3_circuit(kLayout));
  std::vector<Complex> ghz(32, 0.0);
  ghz[0] = ghz[bitstring_to_index("11100")] = 1 / std::sqrt(2.0);
  CHECK(fidelity(statevector(plus), StateVector::from_amplitudes(ghz)) > 1 - 1e-9);

  LogicalQubitLayout dup;
  dup.ancilla = {2, 3};
  CHECK_THROWS_AS(encode3_circuit(dup), Error);
}

TEST_CASE("no error leaves data and a zero syndrome") {
  for (bool input : {false, true}) {
    const StateVector s = statevector(experiment(input, {}));
    const std::string expect = input ? "11100" : "00000";
    CHECK(std::abs(s[bitstring_to_index(expect)]) > 1 - 1e-9);
  }
}

TEST_CASE("every single bit flip is corrected") {
  const char* syndromes[] = {"10", "11", "01"};
  for (Qubit q = 0; q < 3; ++q) {
    for (bool input : {false, true}) {
      const StateVector s = statevector(experiment(input, {q}));
      const std::string expect = std::string(input ? "111" : "000") + syndromes[q];
      CHECK(std::norm(s[bitstring_to_index(expect)]) >= 1 - 1e-9);
    }
  }
}

TEST_CASE("encoded one with a flip on d1 reads 00111") {
  const Counts counts = run(measured(experiment(true, {1})), 4096);
  // Data qubits in c[0..2], ancillas unmeasured; the vendor display lists
  // c[4] first, which reads "00111".
  CHECK(counts.count("11100") == 4096);
  std::string display = "11100";
  std::reverse(display.begin(), display.end());
  CHECK(display == "00111");
}

TEST_CASE("superpositions survive a flip") {
  for (Qubit q = 0; q < 3; ++q) {
    Circuit c(5);
    c.ry(1.1, 0).append(encode3_circuit(kLayout)).x(q).append(syndrome_recover_circuit(kLayout));
    const StateVector s = statevector(c);
    double data_ok = std::norm(s[bitstring_to_index(std::string("000") + (q == 0 ? "10" : q == 1 ? "11" : "01"))]) +
                     std::norm(s[bitstring_to_index(std::string("111") + (q == 0 ? "10" : q == 1 ? "11" : "01"))]);
    CHECK(data_ok > 1 - 1e-9);
  }
}

TEST_CASE("two flips miscorrect") {
  const StateVector s = statevector(experiment(false, {0, 1}));
  // Syndrome 01 points at d2, so the logical value flips.
  CHECK(std::norm(s[bitstring_to_index("11101")]) > 1 - 1e-9);
}

TEST_CASE("protect_qubit") {
  SUBCASE("X-only circuit keeps its distribution") {
    Circuit c(2, 2);
    c.x(0).x(0).x(0).x(1).measure(0, 0).measure(1, 1);
    const Circuit p = protect_qubit(c, 0, 0);
    CHECK(run(p, 256) == run(c, 256));
    CHECK(depth(p) > depth(c));
  }
  SUBCASE("H in the protected region is rejected") {
    Circuit c(1);
    c.x(0).h(0);
    try {
      protect_qubit(c, 0, 0);
      FAIL("expected UnsupportedLogicalGate");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UnsupportedLogicalGate);
    }
    CHECK_NOTHROW(protect_qubit(c, 0, 2));
  }
  SUBCASE("protected block shape") {
    // G1 on q0, G2 on q1, G3 = CNOT(q0, q1), G4 on q0.
    Circuit c(2, 2);
    c.x(0).h(1).cx(0, 1).z(0).measure(0, 0).measure(1, 1);
    const Circuit p = protect_qubit(c, 0, 0);
    std::size_t toffolis = 0;
    for (const Gate& g : p) toffolis += g.type == GateType::TOFFOLI;
    CHECK(toffolis == 3 * 3);  // one EC block after each protected gate
    CHECK(p.num_qubits() == 2 + 2 + 3 * 2);
    CHECK(run(p, 512, NoiseModel{{}, 0, 1}).histogram.size() == run(c, 512, NoiseModel{{}, 0, 1}).histogram.size());
  }
  SUBCASE("control CNOT fans out and measure reads data0") {
    Circuit c(2, 2);
    c.h(0).cx(0, 1).measure(0, 0).measure(1, 1);
    const Circuit p = protect_qubit(c, 0, 1);
    const Counts counts = run(p, 2000, NoiseModel{{}, 0, 4});
    CHECK(counts.count("00") + counts.count("11") == 2000);
    CHECK(counts.count("11") > 800);
  }
  SUBCASE("CNOT targeting the protected qubit is rejected") {
    Circuit c(2);
    c.cx(1, 0);
    CHECK_THROWS_AS(protect_qubit(c, 0, 0), Error);
  }
}

TEST_CASE("transpiling the protected experiment multiplies depth") {
  const Circuit c = measured(experiment(true, {1}));
  const DeviceProfile dev = synth_device(15, Topology::Line, 3);
  const PipelineResult r = rewrite_pipeline(c, dev.coupling, dev.basis);
  CHECK(r.depth_after >= 3 * r.depth_before);
}
