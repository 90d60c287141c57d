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

#include "sdrgrid/grid.h"

#include <algorithm>
#include <deque>

#include "sdrgrid/json_codec.h"

namespace sdrgrid {
namespace {

using json_codec::Json;

void insert_messages(Grid& grid, std::span<const MessageInstance> msgs, const TopicSpec& spec) {
  for (const MessageInstance& m : msgs) {
    for (const Diagnostic& d : validate_message(m, spec)) {
      if (d.is_error()) throw GridError("message " + m.id + ": " + d.message);
    }
    if (!grid.messages.emplace(m.id, m).second) {
      throw GridError("duplicate message id " + m.id);
    }
  }
}

void require_valid(const Grid& grid) {
  auto problems = grid_invariant_violations(grid);
  if (!problems.empty()) throw GridError(problems.front());
}

Json encode_relation(const RelationInstance& r) {
  return Json{{"name", r.name},
              {"type", std::string(relation_type_name(r.type))},
              {"first", r.first},
              {"second", r.second}};
}

RelationInstance decode_relation(const Json& j) {
  RelationInstance r;
  r.name = json_codec::require_string(j, "name");
  std::string type = json_codec::require_string(j, "type");
  auto t = parse_relation_type(type);
  if (!t) throw std::invalid_argument("unknown relation type " + type);
  r.type = *t;
  r.first = json_codec::require_string(j, "first");
  r.second = json_codec::require_string(j, "second");
  return r;
}

bool binds_entity(const MessageInstance& m, const std::set<std::string>& ids) {
  return std::any_of(m.bindings.begin(), m.bindings.end(), [&](const auto& kv) {
    const auto* e = std::get_if<EntityRef>(&kv.second);
    return e && ids.count(e->id);
  });
}

}  // namespace

FrameConfig FrameConfig::from(const TopicConfig& config) {
  return {config.planner_mode, config.time_unit_minutes, config.sync_window_minutes};
}

const MessageInstance& Grid::message(const std::string& id) const {
  auto it = messages.find(id);
  if (it == messages.end()) throw GridError("unknown message " + id);
  return it->second;
}

std::vector<MessageInstance> Grid::message_list() const {
  std::vector<MessageInstance> out;
  for (const auto& [id, m] : messages) out.push_back(m);
  return out;
}

std::map<std::string, std::vector<std::string>> Grid::by_source() const {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& [id, m] : messages) out[m.source].push_back(id);
  return out;
}

std::map<std::string, std::vector<std::string>> Grid::by_type() const {
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& [id, m] : messages) out[m.msg_type].push_back(id);
  return out;
}

std::map<Timestamp, std::vector<std::string>> Grid::by_frame() const {
  std::map<Timestamp, std::vector<std::string>> out;
  for (const auto& [id, key] : assign_frames(*this)) out[key].push_back(id);
  return out;
}

std::map<std::string, Timestamp> assign_frames(const Grid& grid) {
  std::map<std::string, Timestamp> out;
  if (grid.frame.mode == PlannerMode::kLinear) {
    const std::int64_t unit = std::max<std::int64_t>(grid.frame.time_unit, 1);
    for (const auto& [id, m] : grid.messages) {
      out[id] = Timestamp(floor_div(m.ref_time.minutes(), unit) * unit);
    }
    return out;
  }
  std::set<Timestamp> refs;
  for (const auto& [id, m] : grid.messages) refs.insert(m.ref_time);
  std::map<Timestamp, Timestamp> key_of;
  std::optional<Timestamp> prev;
  Timestamp key;
  for (Timestamp t : refs) {
    if (!prev || t - *prev > grid.frame.sync_window) key = t;
    key_of[t] = key;
    prev = t;
  }
  for (const auto& [id, m] : grid.messages) out[id] = key_of[m.ref_time];
  return out;
}

std::vector<std::string> grid_invariant_violations(const Grid& grid) {
  std::vector<std::string> out;
  for (const auto& [id, m] : grid.messages) {
    if (id != m.id) out.push_back("messages[" + id + "]: id mismatch " + m.id);
  }
  std::map<std::string, std::vector<std::string>> succ;
  std::map<std::string, int> indegree;
  for (std::size_t i = 0; i < grid.relations.size(); ++i) {
    const RelationInstance& r = grid.relations[i];
    std::string where = "relations[" + std::to_string(i) + "]: ";
    auto a = grid.messages.find(r.first);
    auto b = grid.messages.find(r.second);
    if (a == grid.messages.end() || b == grid.messages.end()) {
      out.push_back(where + "dangling endpoint");
      continue;
    }
    if (r.type == RelationType::kSynchronic) {
      if (a->second.source == b->second.source) out.push_back(where + "synchronic edge within one source");
    } else {
      if (!(a->second.ref_time < b->second.ref_time)) {
        out.push_back(where + "diachronic edge against time");
      }
      succ[r.first].push_back(r.second);
      indegree[r.second]++;
      indegree.try_emplace(r.first, 0);
    }
  }
  if (!std::is_sorted(grid.relations.begin(), grid.relations.end()) ||
      std::adjacent_find(grid.relations.begin(), grid.relations.end()) != grid.relations.end()) {
    out.push_back("relations: not in canonical order");
  }
  // Kahn's algorithm over the diachronic subgraph.
  std::deque<std::string> ready;
  for (const auto& [id, d] : indegree) {
    if (d == 0) ready.push_back(id);
  }
  std::size_t visited = 0;
  while (!ready.empty()) {
    std::string id = ready.front();
    ready.pop_front();
    ++visited;
    for (const std::string& next : succ[id]) {
      if (--indegree[next] == 0) ready.push_back(next);
    }
  }
  if (visited != indegree.size()) out.push_back("relations: diachronic cycle");
  return out;
}

Grid build_grid(std::span<const MessageInstance> msgs, const TopicSpec& spec) {
  Grid grid;
  grid.topic = spec.name;
  grid.frame = FrameConfig::from(spec.config);
  insert_messages(grid, msgs, spec);
  std::vector<MessageInstance> all = grid.message_list();
  grid.relations = extract_relations(all, spec);
  require_valid(grid);
  return grid;
}

Grid extend_grid(const Grid& grid, std::span<const MessageInstance> added,
                 const TopicSpec& spec) {
  if (grid.topic != spec.name) {
    throw GridError("grid topic " + grid.topic + " does not match " + spec.name);
  }
  Grid out = grid;
  out.frame = FrameConfig::from(spec.config);
  insert_messages(out, added, spec);
  std::vector<MessageInstance> old = grid.message_list();
  auto fresh = extract_new_relations(old, added, spec);
  out.relations.insert(out.relations.end(), fresh.begin(), fresh.end());
  std::sort(out.relations.begin(), out.relations.end());
  out.relations.erase(std::unique(out.relations.begin(), out.relations.end()),
                      out.relations.end());
  require_valid(out);
  return out;
}

bool GridQuery::empty() const {
  return !universal && !entities && !types && !sources && !from && !to;
}

Grid query_subgrid(const Grid& grid, const GridQuery& query) {
  if (query.empty()) throw std::invalid_argument("query sets no filter");
  Grid out;
  out.topic = grid.topic;
  out.frame = grid.frame;
  for (const auto& [id, m] : grid.messages) {
    if (query.entities && !binds_entity(m, *query.entities)) continue;
    if (query.types && !query.types->count(m.msg_type)) continue;
    if (query.sources && !query.sources->count(m.source)) continue;
    if (query.from && m.ref_time < *query.from) continue;
    if (query.to && *query.to < m.ref_time) continue;
    out.messages.emplace(id, m);
  }
  for (const RelationInstance& r : grid.relations) {
    if (out.messages.count(r.first) && out.messages.count(r.second)) out.relations.push_back(r);
  }
  return out;
}

std::string serialize_grid(const Grid& grid) {
  Json msgs = Json::array();
  for (const auto& [id, m] : grid.messages) msgs.push_back(json_codec::encode_message(m));
  Json rels = Json::array();
  for (const RelationInstance& r : grid.relations) rels.push_back(encode_relation(r));
  Json doc{{"topic", grid.topic},
           {"frame",
            {{"mode", std::string(planner_mode_name(grid.frame.mode))},
             {"time_unit", grid.frame.time_unit},
             {"sync_window", grid.frame.sync_window}}},
           {"messages", std::move(msgs)},
           {"relations", std::move(rels)}};
  return doc.dump(2) + "\n";
}

Grid deserialize_grid(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed grid document: ") + e.what(),
                     {0, static_cast<int>(e.byte)});
  }
  Grid grid;
  std::string where = "grid";
  try {
    if (!doc.is_object()) throw std::invalid_argument("expected an object");
    grid.topic = json_codec::require_string(doc, "topic");
    if (doc.contains("frame")) {
      where = "frame";
      const Json& f = doc["frame"];
      std::string mode = json_codec::require_string(f, "mode");
      auto m = parse_planner_mode(mode);
      if (!m) throw std::invalid_argument("unknown mode " + mode);
      grid.frame.mode = *m;
      grid.frame.time_unit = json_codec::require(f, "time_unit").get<std::int64_t>();
      grid.frame.sync_window = json_codec::require(f, "sync_window").get<std::int64_t>();
      if (grid.frame.time_unit < 1 || grid.frame.sync_window < 0) {
        throw std::invalid_argument("invalid frame settings");
      }
    }
    const Json& msgs = json_codec::require(doc, "messages");
    if (!msgs.is_array()) throw std::invalid_argument("messages must be an array");
    for (std::size_t i = 0; i < msgs.size(); ++i) {
      where = "messages[" + std::to_string(i) + "]";
      MessageInstance m = json_codec::decode_message(msgs[i]);
      if (!grid.messages.emplace(m.id, m).second) {
        throw std::invalid_argument("duplicate message id " + m.id);
      }
    }
    const Json& rels = json_codec::require(doc, "relations");
    if (!rels.is_array()) throw std::invalid_argument("relations must be an array");
    for (std::size_t i = 0; i < rels.size(); ++i) {
      where = "relations[" + std::to_string(i) + "]";
      grid.relations.push_back(decode_relation(rels[i]));
    }
  } catch (const std::invalid_argument& e) {
    throw GridError(where + ": " + e.what());
  } catch (const Json::exception& e) {
    throw GridError(where + ": " + e.what());
  }
  require_valid(grid);
  return grid;
}

}  // namespace sdrgrid
