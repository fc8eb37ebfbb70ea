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

#include "qforge/oracles.hpp"

#include <cmath>
#include <string>

#include "qforge/error.hpp"

namespace qforge {

namespace {

void check_size(std::size_t n, std::size_t max, const char* what) {
  if (n < 1 || n > max) {
    throw Error(ErrorCode::SizeOutOfRange, std::string(what) + " size " + std::to_string(n) +
                                               " outside 1.." + std::to_string(max));
  }
}

// QFT ladder on qubits offset..offset+n-1, no reversal swaps.
void append_qft_ladder(Circuit& c, std::size_t offset, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    c.h(offset + j);
    for (std::size_t k = 2; k <= n - j; ++k) {
      c.crk(static_cast<unsigned>(k), offset + j + k - 1, offset + j);
    }
  }
}

std::size_t size_param(std::span<const double> params, const char* name) {
  if (params.size() != 1 || params[0] < 1 || params[0] != std::floor(params[0])) {
    throw Error(ErrorCode::InvalidArgument,
                std::string(name) + " takes one positive integer size parameter");
  }
  return static_cast<std::size_t>(params[0]);
}

}  // namespace

Circuit qft_circuit(std::size_t n, bool with_swaps) {
  check_size(n, 10, "QFT");
  Circuit c(n);
  append_qft_ladder(c, 0, n);
  if (with_swaps) {
    for (std::size_t j = 0; j < n / 2; ++j) c.swap(j, n - 1 - j);
  }
  return c;
}

Circuit iqft_circuit(std::size_t n, bool with_swaps) {
  return inverse(qft_circuit(n, with_swaps));
}

Circuit draper_adder(std::size_t n) {
  check_size(n, 5, "adder");
  Circuit c(2 * n);
  append_qft_ladder(c, n, n);
  // y_j carries the phase 0.y_j...y_{n-1}; x_m adds 2^-(m-j+1) to it.
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t m = j; m < n; ++m) {
      c.crk(static_cast<unsigned>(m - j + 1), m, n + j);
    }
  }
  Circuit ladder(2 * n);
  append_qft_ladder(ladder, n, n);
  c.append(inverse(ladder));
  return c;
}

MacroLibrary& register_builtin_oracles(MacroLibrary& lib) {
  lib.add("qft", [](std::span<const double> p) {
    return MacroBody{qft_circuit(size_param(p, "qft")), 0};
  });
  lib.add("iqft", [](std::span<const double> p) {
    return MacroBody{iqft_circuit(size_param(p, "iqft")), 0};
  });
  lib.add("add", [](std::span<const double> p) {
    return MacroBody{draper_adder(size_param(p, "add")), 0};
  });
  const struct {
    const char* name;
    std::size_t qubits;
  } checks[] = {{"qft", 2}, {"iqft", 2}, {"add", 4}};
  for (const auto& check : checks) {
    Circuit probe(check.qubits);
    std::vector<Qubit> operands(check.qubits);
    for (std::size_t i = 0; i < check.qubits; ++i) operands[i] = i;
    probe.append(gates::macro(check.name, {2.0}, operands));
    expand_macros(probe, lib);
  }
  return lib;
}

}  // namespace qforge
