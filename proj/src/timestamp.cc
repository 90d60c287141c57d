// Copyright 2026 The sdrgrid Authors
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

#include "sdrgrid/timestamp.h"

#include <chrono>
#include <cstdio>
#include <stdexcept>

namespace sdrgrid {
namespace {

int parse_digits(std::string_view text, std::size_t pos, std::size_t len) {
  int value = 0;
  for (std::size_t i = pos; i < pos + len; ++i) value = value * 10 + (text[i] - '0');
  return value;
}

}  // namespace

Timestamp Timestamp::parse(std::string_view text) {
  if (text.size() != 12) {
    throw std::invalid_argument("timestamp must have 12 digits: '" +
                                std::string(text) + "'");
  }
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("timestamp must be numeric: '" +
                                  std::string(text) + "'");
    }
  }
  const int year = parse_digits(text, 0, 4);
  const int month = parse_digits(text, 4, 2);
  const int day = parse_digits(text, 6, 2);
  const int hour = parse_digits(text, 8, 2);
  const int minute = parse_digits(text, 10, 2);
  return from_civil(year, month, day, hour, minute);
}

Timestamp Timestamp::from_civil(int year, int month, int day, int hour,
                                int minute) {
  using namespace std::chrono;
  const year_month_day ymd{std::chrono::year{year},
                           std::chrono::month{static_cast<unsigned>(month)},
                           std::chrono::day{static_cast<unsigned>(day)}};
  if (year < 0 || year > 9999 || !ymd.ok()) {
    throw std::invalid_argument("invalid calendar date");
  }
  if (hour < 0 || hour > 23 || minute < 0 || minute > 59) {
    throw std::invalid_argument("invalid clock time");
  }
  const std::int64_t days = sys_days{ymd}.time_since_epoch().count();
  return Timestamp(days * kMinutesPerDay + hour * kMinutesPerHour + minute);
}

std::string Timestamp::str() const {
  using namespace std::chrono;
  const std::int64_t days = floor_div(minutes_, kMinutesPerDay);
  const std::int64_t in_day = minutes_ - days * kMinutesPerDay;
  const year_month_day ymd{sys_days{std::chrono::days{days}}};
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d%02u%02u%02d%02d",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()),
                static_cast<int>(in_day / kMinutesPerHour),
                static_cast<int>(in_day % kMinutesPerHour));
  return buf;
}

int Timestamp::hour() const {
  return static_cast<int>((minutes_ - start_of_day().minutes_) / kMinutesPerHour);
}

int Timestamp::minute() const {
  return static_cast<int>((minutes_ - start_of_day().minutes_) % kMinutesPerHour);
}

Timestamp Timestamp::start_of_day() const {
  return Timestamp(floor_div(minutes_, kMinutesPerDay) * kMinutesPerDay);
}

std::string Timestamp::clock_str() const {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%02d:%02d", hour(), minute());
  return buf;
}

}  // namespace sdrgrid
