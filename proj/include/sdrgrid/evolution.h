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

// Linearity of activity timelines, synchronicity of report streams and a
// seeded generator of synthetic streams.

#ifndef SDRGRID_EVOLUTION_H_
#define SDRGRID_EVOLUTION_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sdrgrid/timestamp.h"

namespace sdrgrid {

struct ActivityTimeline {
  std::vector<Timestamp> times;

  bool operator==(const ActivityTimeline&) const = default;
};

struct ReportStream {
  std::string source;
  std::vector<Timestamp> pub_times;

  bool operator==(const ReportStream&) const = default;
};

struct Linear {
  std::int64_t t = 0;
  std::vector<std::int64_t> multipliers;

  bool operator==(const Linear&) const = default;
};

struct NonLinear {
  std::int64_t t = 0;
  // Index k of the first gap times[k+1] - times[k] that is not a multiple of t.
  std::size_t failing_gap = 0;

  bool operator==(const NonLinear&) const = default;
};

using Linearity = std::variant<Linear, NonLinear>;

// Throws std::invalid_argument for an empty or non-increasing timeline, or a
// non-positive explicit t. Without t, the smallest gap is used.
Linearity classify_linearity(const ActivityTimeline& timeline,
                             std::optional<std::int64_t> t = std::nullopt);

struct Synchronous {
  bool operator==(const Synchronous&) const = default;
};

struct AsyncWitness {
  enum class Kind { kLength, kTime };
  Kind kind = Kind::kTime;
  std::size_t first_stream = 0;
  std::size_t second_stream = 0;
  std::string first_source;
  std::string second_source;
  // For kTime the offending report index; for kLength the shorter length.
  std::size_t index = 0;

  bool operator==(const AsyncWitness&) const = default;
};

struct Asynchronous {
  AsyncWitness witness;

  bool operator==(const Asynchronous&) const = default;
};

using Synchronicity = std::variant<Synchronous, Asynchronous>;

// Throws std::invalid_argument on fewer than two streams, non-increasing
// streams or a negative tolerance.
Synchronicity classify_synchronicity(std::span<const ReportStream> streams,
                                     std::int64_t tolerance = 0);

enum class Regime { kLinearSync, kLinearSyncSkips, kNonLinearAsync };

std::string_view regime_name(Regime regime);
std::optional<Regime> parse_regime(std::string_view text);

struct GeneratorParams {
  int sources = 3;
  // Number of activities on the timeline.
  int length = 30;
  std::int64_t unit = kMinutesPerWeek;
  Timestamp start = Timestamp::from_civil(1999, 7, 5);
  // Per-source report counts for kNonLinearAsync.
  int min_reports = 5;
  int max_reports = 12;
};

struct GeneratedStreams {
  ActivityTimeline timeline;
  std::vector<ReportStream> streams;

  bool operator==(const GeneratedStreams&) const = default;
};

GeneratedStreams generate_stream(Regime regime, const GeneratorParams& params,
                                 std::uint64_t seed);

}  // namespace sdrgrid

#endif  // SDRGRID_EVOLUTION_H_
