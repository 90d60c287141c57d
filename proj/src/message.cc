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

#include "sdrgrid/message.h"

namespace sdrgrid {
namespace {

struct BindingChecker {
  const TopicSpec& spec;
  const ArgSpec& arg;
  std::vector<Diagnostic>& out;

  void report(std::string message) {
    out.push_back({Severity::kError, std::move(message), arg.name, {}});
  }

  void operator()(const EntityRef& entity) {
    auto concept_name = spec.ontology.concept_of(entity.id);
    if (!concept_name) {
      report("unknown entity " + entity.id);
    } else if (!spec.ontology.satisfies(*concept_name, arg.allowed)) {
      report("entity " + entity.id + " (" + *concept_name +
             ") does not satisfy arg " + arg.name);
    }
  }

  void operator()(const MessageTypeName& type) {
    if (spec.find_schema(type.name) == nullptr) {
      report("unknown message type literal " + type.name);
    } else if (!arg.allowed.count(std::string(kMessageTypeLiteral))) {
      report("arg " + arg.name + " does not accept message types");
    }
  }

  void operator()(const ScaledLiteral& scaled) {
    if (!spec.ontology.scale_rank(scaled.concept_name, scaled.value)) {
      report("value " + scaled.value + " is not on scale " + scaled.concept_name);
    } else if (!spec.ontology.satisfies(scaled.concept_name, arg.allowed)) {
      report("scale " + scaled.concept_name + " does not satisfy arg " + arg.name);
    }
  }
};

}  // namespace

const std::string& bound_text(const BoundValue& value) {
  return std::visit(
      [](const auto& v) -> const std::string& {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, EntityRef>) {
          return v.id;
        } else if constexpr (std::is_same_v<T, MessageTypeName>) {
          return v.name;
        } else {
          return v.value;
        }
      },
      value);
}

Timestamp normalize_ref_time(Timestamp pub_time, const TemporalExpression& expr) {
  struct Visitor {
    Timestamp pub;
    Timestamp operator()(const NoTemporal&) const { return pub; }
    Timestamp operator()(const DayOffset& d) const {
      return pub + d.days * kMinutesPerDay;
    }
    Timestamp operator()(const MinuteOffset& m) const { return pub + m.minutes; }
    Timestamp operator()(const ClockSet& c) const {
      return pub.start_of_day() + c.day_offset * kMinutesPerDay +
             c.hour * kMinutesPerHour + c.minute;
    }
  };
  return std::visit(Visitor{pub_time}, expr);
}

std::vector<Diagnostic> validate_message(const MessageInstance& message,
                                         const TopicSpec& spec) {
  std::vector<Diagnostic> out;
  auto report = [&](std::string text) {
    out.push_back({Severity::kError, std::move(text), message.id, {}});
  };
  if (message.id.empty()) report("empty message id");
  if (message.source.empty()) report("empty source");
  const MessageSchema* schema = spec.find_schema(message.msg_type);
  if (schema == nullptr) {
    report("unknown message type " + message.msg_type);
    return out;
  }
  for (const ArgSpec& arg : schema->args) {
    auto it = message.bindings.find(arg.name);
    if (it == message.bindings.end()) {
      report("unbound arg " + arg.name);
      continue;
    }
    std::visit(BindingChecker{spec, arg, out}, it->second);
  }
  for (const auto& [name, value] : message.bindings) {
    if (schema->find_arg(name) == nullptr) report("unexpected arg " + name);
  }
  return out;
}

}  // namespace sdrgrid
