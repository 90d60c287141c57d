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

#include "sdrgrid/json_codec.h"

#include <stdexcept>

namespace sdrgrid::json_codec {
namespace {

std::string kind_of(const Json& j) {
  return j.is_object() && j.contains("kind") && j["kind"].is_string()
             ? j["kind"].get<std::string>()
             : std::string();
}

std::int64_t require_int(const Json& j, const char* field) {
  const Json& v = require(j, field);
  if (!v.is_number_integer()) {
    throw std::invalid_argument(std::string("field '") + field +
                                "' must be an integer");
  }
  return v.get<std::int64_t>();
}

}  // namespace

const Json& require(const Json& j, const char* field) {
  if (!j.is_object() || !j.contains(field)) {
    throw std::invalid_argument(std::string("missing field '") + field + "'");
  }
  return j[field];
}

std::string require_string(const Json& j, const char* field) {
  const Json& v = require(j, field);
  if (!v.is_string()) {
    throw std::invalid_argument(std::string("field '") + field +
                                "' must be a string");
  }
  return v.get<std::string>();
}

Timestamp decode_timestamp(const Json& j) {
  if (!j.is_string()) throw std::invalid_argument("timestamp must be a string");
  return Timestamp::parse(j.get<std::string>());
}

Json encode_bound_value(const BoundValue& value) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, EntityRef>) {
          return Json{{"entity", v.id}};
        } else if constexpr (std::is_same_v<T, MessageTypeName>) {
          return Json{{"msgtype", v.name}};
        } else {
          return Json{{"scaled", {{"concept", v.concept_name}, {"value", v.value}}}};
        }
      },
      value);
}

BoundValue decode_bound_value(const Json& j) {
  if (!j.is_object() || j.size() != 1) {
    throw std::invalid_argument(
        "binding must be an object with exactly one of entity, msgtype, scaled");
  }
  if (j.contains("entity")) return EntityRef{require_string(j, "entity")};
  if (j.contains("msgtype")) return MessageTypeName{require_string(j, "msgtype")};
  if (j.contains("scaled")) {
    const Json& s = j["scaled"];
    return ScaledLiteral{require_string(s, "concept"), require_string(s, "value")};
  }
  throw std::invalid_argument("unknown binding kind " + j.begin().key());
}

Json encode_temporal(const TemporalExpression& expr) {
  struct Visitor {
    Json operator()(const NoTemporal&) const { return Json{{"kind", "none"}}; }
    Json operator()(const DayOffset& d) const {
      return Json{{"kind", "day_offset"}, {"days", d.days}};
    }
    Json operator()(const MinuteOffset& m) const {
      return Json{{"kind", "minute_offset"}, {"minutes", m.minutes}};
    }
    Json operator()(const ClockSet& c) const {
      return Json{{"kind", "clock_set"},
                  {"hour", c.hour},
                  {"minute", c.minute},
                  {"day_offset", c.day_offset}};
    }
  };
  return std::visit(Visitor{}, expr);
}

TemporalExpression decode_temporal(const Json& j) {
  if (j.is_null()) return NoTemporal{};
  const std::string kind = kind_of(j);
  if (kind == "none") return NoTemporal{};
  if (kind == "day_offset") return DayOffset{require_int(j, "days")};
  if (kind == "minute_offset") return MinuteOffset{require_int(j, "minutes")};
  if (kind == "clock_set") {
    ClockSet c;
    c.hour = static_cast<int>(require_int(j, "hour"));
    c.minute = static_cast<int>(require_int(j, "minute"));
    c.day_offset = j.contains("day_offset") ? require_int(j, "day_offset") : 0;
    if (c.hour < 0 || c.hour > 23) {
      throw std::invalid_argument("clock_set hour out of range");
    }
    if (c.minute < 0 || c.minute > 59) {
      throw std::invalid_argument("clock_set minute out of range");
    }
    return c;
  }
  throw std::invalid_argument("unknown temporal kind '" + kind + "'");
}

Json encode_message(const MessageInstance& message) {
  Json bindings = Json::object();
  for (const auto& [arg, value] : message.bindings) {
    bindings[arg] = encode_bound_value(value);
  }
  Json j = {{"id", message.id},
            {"type", message.msg_type},
            {"bindings", bindings},
            {"source", message.source},
            {"doc_id", message.doc_id},
            {"pub_time", message.pub_time.str()},
            {"ref_time", message.ref_time.str()}};
  if (message.sentence) j["sentence"] = *message.sentence;
  return j;
}

MessageInstance decode_message(const Json& j) {
  MessageInstance m;
  m.id = require_string(j, "id");
  m.msg_type = require_string(j, "type");
  m.source = require_string(j, "source");
  m.doc_id = require_string(j, "doc_id");
  m.pub_time = decode_timestamp(require(j, "pub_time"));
  m.ref_time = decode_timestamp(require(j, "ref_time"));
  const Json& bindings = require(j, "bindings");
  if (!bindings.is_object()) throw std::invalid_argument("bindings must be an object");
  for (const auto& [arg, value] : bindings.items()) {
    m.bindings.emplace(arg, decode_bound_value(value));
  }
  if (j.contains("sentence")) m.sentence = static_cast<int>(require_int(j, "sentence"));
  return m;
}

}  // namespace sdrgrid::json_codec
