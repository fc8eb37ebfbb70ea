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

#include "qforge/timestamp.hpp"

#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>

#include "qforge/error.hpp"

namespace qforge {

namespace {

[[noreturn]] void bad(std::string_view text) {
  throw Error(ErrorCode::InvalidArgument, "invalid ISO-8601 timestamp '" + std::string(text) + "'");
}

int digits(std::string_view text, std::size_t pos, std::size_t count) {
  if (pos + count > text.size()) bad(text);
  int value = 0;
  const char* first = text.data() + pos;
  auto [ptr, ec] = std::from_chars(first, first + count, value);
  if (ec != std::errc() || ptr != first + count) bad(text);
  return value;
}

void expect(std::string_view text, std::size_t pos, char c) {
  if (pos >= text.size() || text[pos] != c) bad(text);
}

}  // namespace

Timestamp Timestamp::parse(std::string_view text) {
  using namespace std::chrono;
  const int y = digits(text, 0, 4);
  expect(text, 4, '-');
  const int mo = digits(text, 5, 2);
  expect(text, 7, '-');
  const int d = digits(text, 8, 2);
  expect(text, 10, 'T');
  const int h = digits(text, 11, 2);
  expect(text, 13, ':');
  const int mi = digits(text, 14, 2);
  expect(text, 16, ':');
  const int s = digits(text, 17, 2);
  std::size_t pos = 19;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    const std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) bad(text);
  }
  const std::string_view zone = text.substr(pos);
  if (zone != "Z" && zone != "+00:00") bad(text);

  const year_month_day date{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!date.ok() || h > 23 || mi > 59 || s > 59) bad(text);
  const auto secs = sys_days(date).time_since_epoch() + hours(h) + minutes(mi) + seconds(s);
  return Timestamp(duration_cast<seconds>(secs).count());
}

std::string Timestamp::to_string() const {
  using namespace std::chrono;
  const sys_seconds tp{seconds(seconds_)};
  const auto day_point = floor<days>(tp);
  const year_month_day date{day_point};
  const hh_mm_ss time{tp - day_point};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()),
                static_cast<int>(time.hours().count()), static_cast<int>(time.minutes().count()),
                static_cast<int>(time.seconds().count()));
  return buf;
}

}  // namespace qforge
