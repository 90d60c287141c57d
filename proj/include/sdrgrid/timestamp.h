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

#ifndef SDRGRID_TIMESTAMP_H_
#define SDRGRID_TIMESTAMP_H_

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace sdrgrid {

inline constexpr std::int64_t kMinutesPerHour = 60;
inline constexpr std::int64_t kMinutesPerDay = 1440;
inline constexpr std::int64_t kMinutesPerWeek = 10080;

// A point in time at minute resolution, counted from 1970-01-01 00:00.
// Externally rendered as the 12-digit form YYYYMMDDHHMM.
class Timestamp {
 public:
  constexpr Timestamp() = default;
  constexpr explicit Timestamp(std::int64_t minutes) : minutes_(minutes) {}

  // Throws std::invalid_argument on anything other than a valid 12-digit
  // calendar timestamp.
  static Timestamp parse(std::string_view text);
  static Timestamp from_civil(int year, int month, int day, int hour = 0,
                              int minute = 0);

  std::string str() const;

  constexpr std::int64_t minutes() const { return minutes_; }
  int hour() const;
  int minute() const;
  Timestamp start_of_day() const;
  // "HH:MM".
  std::string clock_str() const;

  constexpr Timestamp operator+(std::int64_t delta) const {
    return Timestamp(minutes_ + delta);
  }
  constexpr Timestamp operator-(std::int64_t delta) const {
    return Timestamp(minutes_ - delta);
  }
  constexpr std::int64_t operator-(Timestamp other) const {
    return minutes_ - other.minutes_;
  }

  constexpr auto operator<=>(const Timestamp&) const = default;

 private:
  std::int64_t minutes_ = 0;
};

// Floor division that rounds toward negative infinity.
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace sdrgrid

#endif  // SDRGRID_TIMESTAMP_H_
