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

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace qforge {

/// UTC instant with one-second resolution. Text form is ISO-8601
/// "YYYY-MM-DDTHH:MM:SSZ".
class Timestamp {
 public:
  Timestamp() = default;
  explicit Timestamp(std::int64_t unix_seconds) : seconds_(unix_seconds) {}

  /// Accepts a trailing "Z" or "+00:00" and optional fractional seconds,
  /// which are dropped. Throws Error(InvalidArgument) otherwise.
  static Timestamp parse(std::string_view text);

  std::int64_t unix_seconds() const noexcept { return seconds_; }
  std::string to_string() const;

  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;

 private:
  std::int64_t seconds_ = 0;
};

}  // namespace qforge
