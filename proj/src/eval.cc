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

#include "sdrgrid/eval.h"

#include <algorithm>
#include <cstdio>
#include <map>

#include "sdrgrid/json_codec.h"

namespace sdrgrid {
namespace {

// Serialized match key; string form keeps multiset counting simple.
std::string message_key(const MessageInstance& m, MatchMode mode) {
  json_codec::Json key;
  key["type"] = m.msg_type;
  key["source"] = m.source;
  if (mode == MatchMode::kTypeAndArgs) {
    json_codec::Json b = json_codec::Json::object();
    for (const auto& [arg, value] : m.bindings) b[arg] = json_codec::encode_bound_value(value);
    key["bindings"] = std::move(b);
    key["ref"] = m.ref_time.minutes();
  } else {
    key["doc"] = m.doc_id;
    key["sentence"] = m.sentence.value_or(-1);
  }
  return key.dump();
}

std::size_t multiset_overlap(const std::map<std::string, std::size_t>& a,
                             const std::map<std::string, std::size_t>& b) {
  std::size_t tp = 0;
  for (const auto& [key, n] : a) {
    auto it = b.find(key);
    if (it != b.end()) tp += std::min(n, it->second);
  }
  return tp;
}

std::map<std::string, std::size_t> relation_keys(const Grid& g, MatchMode mode) {
  std::map<std::string, std::size_t> out;
  for (const RelationInstance& r : g.relations) {
    std::string key = r.name + "\n" + message_key(g.message(r.first), mode) + "\n" +
                      message_key(g.message(r.second), mode);
    out[key]++;
  }
  return out;
}

}  // namespace

double f_measure(double p, double r) {
  if (p + r <= 0) return 0;
  return 2 * p * r / (p + r);
}

ScoreReport ScoreReport::from_counts(std::size_t tp, std::size_t predicted, std::size_t gold) {
  if (tp > predicted || tp > gold) throw std::invalid_argument("true positives exceed a total");
  ScoreReport s;
  s.true_positives = tp;
  s.predicted = predicted;
  s.gold = gold;
  s.precision = predicted ? static_cast<double>(tp) / static_cast<double>(predicted) : 0;
  s.recall = gold ? static_cast<double>(tp) / static_cast<double>(gold) : 0;
  s.f_measure = sdrgrid::f_measure(s.precision, s.recall);
  return s;
}

std::string_view match_mode_name(MatchMode mode) {
  return mode == MatchMode::kTypeOnly ? "type-only" : "type-and-args";
}

std::optional<MatchMode> parse_match_mode(std::string_view text) {
  if (text == "type-only") return MatchMode::kTypeOnly;
  if (text == "type-and-args") return MatchMode::kTypeAndArgs;
  return std::nullopt;
}

ScoreReport score_messages(std::span<const MessageInstance> predicted,
                           std::span<const MessageInstance> gold, MatchMode mode,
                           const TopicSpec* spec) {
  if (spec) {
    for (auto side : {predicted, gold}) {
      for (const MessageInstance& m : side) {
        if (has_errors(validate_message(m, *spec))) {
          throw SpecMismatch("message " + m.id + " does not conform to topic " + spec->name);
        }
      }
    }
  }
  std::map<std::string, std::size_t> p;
  std::map<std::string, std::size_t> g;
  for (const MessageInstance& m : predicted) p[message_key(m, mode)]++;
  for (const MessageInstance& m : gold) g[message_key(m, mode)]++;
  return ScoreReport::from_counts(multiset_overlap(p, g), predicted.size(), gold.size());
}

ScoreReport score_relations(const Grid& predicted, const Grid& gold, MatchMode mode) {
  if (predicted.topic != gold.topic) {
    throw SpecMismatch("topic " + predicted.topic + " does not match " + gold.topic);
  }
  return ScoreReport::from_counts(
      multiset_overlap(relation_keys(predicted, mode), relation_keys(gold, mode)),
      predicted.relations.size(), gold.relations.size());
}

std::string format_score_table(const ScoreReport& r, std::string_view label) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%-10s %9s %9s %9s %6s %6s %6s\n%-10.*s %8.2f%% %8.2f%% %8.2f%% %6zu %6zu %6zu\n",
                "", "Precision", "Recall", "F", "tp", "pred", "gold",
                static_cast<int>(label.size()), label.data(), r.precision * 100,
                r.recall * 100, r.f_measure * 100, r.true_positives, r.predicted, r.gold);
  return buf;
}

}  // namespace sdrgrid
