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

#ifndef SDRGRID_MESSAGE_H_
#define SDRGRID_MESSAGE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sdrgrid/diagnostic.h"
#include "sdrgrid/timestamp.h"
#include "sdrgrid/topic_spec.h"

namespace sdrgrid {

struct EntityRef {
  std::string id;
  auto operator<=>(const EntityRef&) const = default;
};

struct MessageTypeName {
  std::string name;
  auto operator<=>(const MessageTypeName&) const = default;
};

struct ScaledLiteral {
  std::string concept_name;
  std::string value;
  auto operator<=>(const ScaledLiteral&) const = default;
};

using BoundValue = std::variant<EntityRef, MessageTypeName, ScaledLiteral>;

// The identifier a value compares by: entity id, type name or scale value.
const std::string& bound_text(const BoundValue& value);

struct MessageInstance {
  std::string id;
  std::string msg_type;
  std::map<std::string, BoundValue> bindings;
  std::string source;
  Timestamp pub_time;
  Timestamp ref_time;
  std::string doc_id;
  // Sentence index inside the document, when the message came from text.
  std::optional<int> sentence;

  bool operator==(const MessageInstance&) const = default;
};

struct NoTemporal {
  bool operator==(const NoTemporal&) const = default;
};
struct DayOffset {
  std::int64_t days = 0;
  bool operator==(const DayOffset&) const = default;
};
struct MinuteOffset {
  std::int64_t minutes = 0;
  bool operator==(const MinuteOffset&) const = default;
};
// Sets the wall clock on the publication day shifted by `day_offset`.
struct ClockSet {
  int hour = 0;
  int minute = 0;
  std::int64_t day_offset = 0;
  bool operator==(const ClockSet&) const = default;
};

using TemporalExpression = std::variant<NoTemporal, DayOffset, MinuteOffset, ClockSet>;

Timestamp normalize_ref_time(Timestamp pub_time, const TemporalExpression& expr);

std::vector<Diagnostic> validate_message(const MessageInstance& message,
                                         const TopicSpec& spec);

// Report-stream documents: one JSON object per line,
//   {"doc_id", "source", "pub_time": "YYYYMMDDHHMM",
//    "messages": [{"id", "type", "bindings": {arg: {"entity"|"msgtype"|"scaled"}},
//                  "temporal": {"kind", ...}, "sentence"?}]}
// Every message is validated; the first failure is reported with its line.
std::vector<MessageInstance> parse_message_stream(std::string_view text,
                                                  const TopicSpec& spec);

// Inverse of parse_message_stream. Reference times are written as minute
// offsets from the publication time so the stream round-trips exactly.
std::string write_message_stream(std::span<const MessageInstance> messages);

}  // namespace sdrgrid

#endif  // SDRGRID_MESSAGE_H_
