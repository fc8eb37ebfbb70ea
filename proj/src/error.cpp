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

#include "qforge/error.hpp"

namespace qforge {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnsupportedConstruct: return "UnsupportedConstruct";
    case ErrorCode::UnknownMacro: return "UnknownMacro";
    case ErrorCode::RecursionLimitExceeded: return "RecursionLimitExceeded";
    case ErrorCode::TooManyQubits: return "TooManyQubits";
    case ErrorCode::MeasurementPresent: return "MeasurementPresent";
    case ErrorCode::NoMeasurement: return "NoMeasurement";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::DuplicateElement: return "DuplicateElement";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::UnsupportedSize: return "UnsupportedSize";
    case ErrorCode::SizeOutOfRange: return "SizeOutOfRange";
    case ErrorCode::NameCollision: return "NameCollision";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::TooWide: return "TooWide";
    case ErrorCode::NonAdjacentGate: return "NonAdjacentGate";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::UnloweredGate: return "UnloweredGate";
    case ErrorCode::MissingState: return "MissingState";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::UnsupportedLogicalGate: return "UnsupportedLogicalGate";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::CorruptProfile: return "CorruptProfile";
    case ErrorCode::OutOfOrder: return "OutOfOrder";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

SyntaxError::SyntaxError(std::size_t line, std::size_t column, const std::string& message)
    : Error(ErrorCode::SyntaxError,
            std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

}  // namespace qforge
