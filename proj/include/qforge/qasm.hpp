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

#pragma once

#include <string>
#include <string_view>

#include "qforge/circuit.hpp"

namespace qforge {

/// Parses the supported OpenQASM 2 subset:
///   OPENQASM 2.0;  include "...";  qreg/creg declarations (several allowed,
///   concatenated in declaration order);  x y z h s t rx ry rz u1 u2 u3 cx
///   swap ccx crk(k) cp(lambda) barrier measure;  `//` comments.
/// Parameters accept arithmetic over numbers and `pi`. Any other gate name
/// `name(params) q[..],...;` becomes a MACRO gate for later expansion.
/// Throws SyntaxError or Error(UnsupportedConstruct).
Circuit parse_qasm(std::string_view text);

/// Serializes to the same subset with a single `q`/`c` register pair.
/// parse_qasm(emit_qasm(c)) == c for every circuit.
std::string emit_qasm(const Circuit& c);

/// Shortest decimal text that parses back to exactly `value`; exact
/// multiples pi, pi/2 and pi/4 print symbolically.
std::string format_angle(double value);

}  // namespace qforge
