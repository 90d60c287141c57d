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

#include "sdrgrid/planner.h"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

#include "sdrgrid/json_codec.h"

namespace sdrgrid {
namespace {

using json_codec::Json;

constexpr std::string_view kReservedSlots[] = {"time", "date", "source"};

std::string upper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

const std::map<Consensus, std::string>& default_consensus() {
  static const std::map<Consensus, std::string> phrases{
      {Consensus::kAllSources, "According to all sources, "},
      {Consensus::kSomeSources, "According to some sources, "},
      {Consensus::kSingleSource, "According to {source}, "},
      {Consensus::kConflicting, "The sources disagree: "},
  };
  return phrases;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void join(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Calls fn(slot) for each {slot}; returns the text with slots replaced.
template <typename Fn>
std::string expand(std::string_view tmpl, Fn fn) {
  std::string out;
  std::size_t i = 0;
  while (i < tmpl.size()) {
    std::size_t open = tmpl.find('{', i);
    if (open == std::string_view::npos) {
      out.append(tmpl.substr(i));
      break;
    }
    std::size_t close = tmpl.find('}', open);
    if (close == std::string_view::npos) throw std::invalid_argument("unterminated slot");
    out.append(tmpl.substr(i, open - i));
    out += fn(std::string(tmpl.substr(open + 1, close - open - 1)));
    i = close + 1;
  }
  return out;
}

std::string entity_text(const std::string& id, const TemplatePack& pack) {
  auto it = pack.labels.find(id);
  if (it != pack.labels.end()) return it->second;
  std::string out = id;
  std::replace(out.begin(), out.end(), '_', ' ');
  return out;
}

std::string render_message(const MessageInstance& m, const TemplatePack& pack) {
  auto it = pack.messages.find(m.msg_type);
  if (it == pack.messages.end()) throw MissingTemplate(m.msg_type);
  return expand(it->second, [&](const std::string& slot) -> std::string {
    if (slot == "time") return m.ref_time.clock_str();
    if (slot == "date") return m.ref_time.str().substr(0, 8);
    if (slot == "source") return m.source;
    auto b = m.bindings.find(slot);
    if (b == m.bindings.end()) {
      throw std::invalid_argument("template for " + m.msg_type + " uses unbound slot " + slot);
    }
    if (const auto* s = std::get_if<ScaledLiteral>(&b->second)) return s->value;
    return entity_text(bound_text(b->second), pack);
  });
}

std::string finish_sentence(std::string s) {
  s = std::string(trim(s));
  if (s.empty()) return s;
  s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  char last = s.back();
  if (last != '.' && last != '!' && last != '?') s += '.';
  return s;
}

std::string render_cluster(const MessageCluster& cluster, const DocumentPlan& plan,
                           const TemplatePack& pack) {
  auto phrase_it = pack.consensus.find(cluster.consensus);
  std::string prefix = phrase_it != pack.consensus.end()
                           ? phrase_it->second
                           : default_consensus().at(cluster.consensus);
  auto message = [&](const std::string& id) -> const MessageInstance& {
    auto it = plan.messages.find(id);
    if (it == plan.messages.end()) throw std::invalid_argument("plan lacks message " + id);
    return it->second;
  };
  const MessageInstance& lead = message(cluster.messages.front());
  std::string body;
  if (cluster.consensus == Consensus::kConflicting) {
    std::vector<std::string> parts;
    for (const std::string& id : cluster.messages) {
      const MessageInstance& m = message(id);
      std::string part = m.source + " reports that " + render_message(m, pack);
      if (std::find(parts.begin(), parts.end(), part) == parts.end()) parts.push_back(part);
    }
    for (std::size_t i = 0; i < parts.size(); ++i) body += (i ? "; " : "") + parts[i];
  } else {
    body = render_message(lead, pack);
  }
  std::string head = expand(prefix, [&](const std::string& slot) -> std::string {
    if (slot == "source") return lead.source;
    throw std::invalid_argument("unknown slot in consensus phrase: " + slot);
  });
  if (!head.empty() && !std::isspace(static_cast<unsigned char>(head.back()))) head += ' ';
  return finish_sentence(head + body);
}

}  // namespace

std::string_view consensus_name(Consensus c) {
  switch (c) {
    case Consensus::kAllSources:
      return "AllSources";
    case Consensus::kSomeSources:
      return "SomeSources";
    case Consensus::kSingleSource:
      return "SingleSource";
    case Consensus::kConflicting:
      return "Conflicting";
  }
  return "";
}

std::optional<Consensus> parse_consensus(std::string_view text) {
  for (Consensus c : {Consensus::kAllSources, Consensus::kSomeSources, Consensus::kSingleSource,
                      Consensus::kConflicting}) {
    if (consensus_name(c) == text) return c;
  }
  return std::nullopt;
}

bool is_conflict_relation(std::string_view name) {
  std::string u = upper(name);
  return u.find("DISAGREE") != std::string::npos || u.find("CONTRADICT") != std::string::npos;
}

bool is_agreement_relation(std::string_view name) {
  return !is_conflict_relation(name) && upper(name).find("AGREE") != std::string::npos;
}

DocumentPlan build_document_plan(const Grid& grid) {
  return build_document_plan(grid, grid.frame.mode);
}

DocumentPlan build_document_plan(const Grid& grid, PlannerMode mode) {
  Grid framed = grid;
  framed.frame.mode = mode;
  std::map<std::string, Timestamp> frame_of = assign_frames(framed);

  DocumentPlan plan;
  plan.topic = grid.topic;
  plan.messages = grid.messages;

  std::map<Timestamp, std::vector<std::string>> buckets;
  for (const auto& [id, key] : frame_of) buckets[key].push_back(id);

  std::map<std::string, std::size_t> frame_index;
  for (const auto& [key, ids] : buckets) {
    std::map<std::string, std::size_t> local;
    for (std::size_t i = 0; i < ids.size(); ++i) local[ids[i]] = i;
    UnionFind uf(ids.size());
    std::vector<const RelationInstance*> edges;
    for (const RelationInstance& r : grid.relations) {
      if (r.type != RelationType::kSynchronic) continue;
      auto a = local.find(r.first);
      auto b = local.find(r.second);
      if (a == local.end() || b == local.end()) continue;
      uf.join(a->second, b->second);
      edges.push_back(&r);
    }
    std::set<std::string> bucket_sources;
    for (const std::string& id : ids) bucket_sources.insert(grid.message(id).source);

    std::map<std::size_t, MessageCluster> by_root;
    for (std::size_t i = 0; i < ids.size(); ++i) by_root[uf.find(i)].messages.push_back(ids[i]);

    PlanFrame frame{key, {}};
    for (auto& [root, cluster] : by_root) {
      std::set<std::string> sources;
      for (const std::string& id : cluster.messages) sources.insert(grid.message(id).source);
      bool conflict = false;
      bool all_agree = true;
      for (const RelationInstance* r : edges) {
        if (uf.find(local[r->first]) != root) continue;
        conflict = conflict || is_conflict_relation(r->name);
        all_agree = all_agree && is_agreement_relation(r->name);
      }
      if (conflict) {
        cluster.consensus = Consensus::kConflicting;
      } else if (sources.size() == 1) {
        cluster.consensus = Consensus::kSingleSource;
      } else if (sources == bucket_sources && all_agree) {
        cluster.consensus = Consensus::kAllSources;
      } else {
        cluster.consensus = Consensus::kSomeSources;
      }
      frame.clusters.push_back(std::move(cluster));
    }
    std::sort(frame.clusters.begin(), frame.clusters.end(),
              [&](const MessageCluster& a, const MessageCluster& b) {
                const std::string& ta = grid.message(a.messages.front()).msg_type;
                const std::string& tb = grid.message(b.messages.front()).msg_type;
                return std::tie(ta, a.messages.front()) < std::tie(tb, b.messages.front());
              });
    for (const std::string& id : ids) frame_index[id] = plan.frames.size();
    plan.frames.push_back(std::move(frame));
  }

  std::set<Connective> connectives;
  for (const RelationInstance& r : grid.relations) {
    if (r.type != RelationType::kDiachronic) continue;
    std::size_t from = frame_index.at(r.first);
    std::size_t to = frame_index.at(r.second);
    if (from != to) connectives.insert({from, to, r.name});
  }
  plan.connectives.assign(connectives.begin(), connectives.end());
  return plan;
}

std::string serialize_plan(const DocumentPlan& plan) {
  Json frames = Json::array();
  for (const PlanFrame& f : plan.frames) {
    Json clusters = Json::array();
    for (const MessageCluster& c : f.clusters) {
      clusters.push_back({{"messages", c.messages},
                          {"consensus", std::string(consensus_name(c.consensus))}});
    }
    frames.push_back({{"bucket", f.bucket.str()}, {"clusters", std::move(clusters)}});
  }
  Json connectives = Json::array();
  for (const Connective& c : plan.connectives) {
    connectives.push_back({{"from", c.from}, {"to", c.to}, {"relation", c.relation}});
  }
  Json messages = Json::array();
  for (const auto& [id, m] : plan.messages) messages.push_back(json_codec::encode_message(m));
  Json doc{{"topic", plan.topic},
           {"frames", std::move(frames)},
           {"connectives", std::move(connectives)},
           {"messages", std::move(messages)}};
  return doc.dump(2) + "\n";
}

DocumentPlan deserialize_plan(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed plan document: ") + e.what(),
                     {0, static_cast<int>(e.byte)});
  }
  DocumentPlan plan;
  std::string where = "plan";
  try {
    plan.topic = json_codec::require_string(doc, "topic");
    const Json& frames = json_codec::require(doc, "frames");
    for (std::size_t i = 0; i < frames.size(); ++i) {
      where = "frames[" + std::to_string(i) + "]";
      PlanFrame frame;
      frame.bucket = json_codec::decode_timestamp(json_codec::require(frames[i], "bucket"));
      for (const Json& c : json_codec::require(frames[i], "clusters")) {
        MessageCluster cluster;
        cluster.messages = json_codec::require(c, "messages").get<std::vector<std::string>>();
        std::string label = json_codec::require_string(c, "consensus");
        auto consensus = parse_consensus(label);
        if (!consensus) throw std::invalid_argument("unknown consensus " + label);
        if (cluster.messages.empty()) throw std::invalid_argument("empty cluster");
        cluster.consensus = *consensus;
        frame.clusters.push_back(std::move(cluster));
      }
      plan.frames.push_back(std::move(frame));
    }
    const Json& connectives = json_codec::require(doc, "connectives");
    for (std::size_t i = 0; i < connectives.size(); ++i) {
      where = "connectives[" + std::to_string(i) + "]";
      Connective c{json_codec::require(connectives[i], "from").get<std::size_t>(),
                   json_codec::require(connectives[i], "to").get<std::size_t>(),
                   json_codec::require_string(connectives[i], "relation")};
      if (c.from >= plan.frames.size() || c.to >= plan.frames.size()) {
        throw std::invalid_argument("frame index out of range");
      }
      plan.connectives.push_back(std::move(c));
    }
    if (doc.contains("messages")) {
      const Json& messages = doc["messages"];
      for (std::size_t i = 0; i < messages.size(); ++i) {
        where = "messages[" + std::to_string(i) + "]";
        MessageInstance m = json_codec::decode_message(messages[i]);
        plan.messages.emplace(m.id, std::move(m));
      }
    }
  } catch (const std::invalid_argument& e) {
    throw GridError(where + ": " + e.what());
  } catch (const Json::exception& e) {
    throw GridError(where + ": " + e.what());
  }
  return plan;
}

TemplatePack TemplatePack::parse(std::string_view text) {
  TemplatePack pack;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view raw = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", {line_no, 1});
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "messages" && section != "connectives" && section != "labels" &&
          section != "consensus") {
        throw ParseError("unknown section " + section, {line_no, 2});
      }
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key = value", {line_no, 1});
    if (section.empty()) throw ParseError("entry outside a section", {line_no, 1});
    std::string key(trim(line.substr(0, eq)));
    std::string_view value_raw = line.substr(eq + 1);
    while (!value_raw.empty() && value_raw.front() == ' ') value_raw.remove_prefix(1);
    std::string value(value_raw);
    if (key.empty()) throw ParseError("empty key", {line_no, 1});
    bool fresh = true;
    if (section == "messages") {
      fresh = pack.messages.emplace(key, value).second;
    } else if (section == "connectives") {
      fresh = pack.connectives.emplace(key, value).second;
    } else if (section == "labels") {
      fresh = pack.labels.emplace(key, value).second;
    } else {
      static const std::map<std::string, Consensus> keys{
          {"all", Consensus::kAllSources},
          {"some", Consensus::kSomeSources},
          {"single", Consensus::kSingleSource},
          {"conflicting", Consensus::kConflicting}};
      auto k = keys.find(key);
      if (k == keys.end()) throw ParseError("unknown consensus key " + key, {line_no, 1});
      fresh = pack.consensus.emplace(k->second, value).second;
    }
    if (!fresh) throw ParseError("duplicate declaration: " + key, {line_no, 1});
  }
  return pack;
}

std::vector<Diagnostic> validate_templates(const TemplatePack& pack, const TopicSpec& spec) {
  std::vector<Diagnostic> out;
  for (const auto& [type, tmpl] : pack.messages) {
    const MessageSchema* schema = spec.find_schema(type);
    if (!schema) {
      out.push_back({Severity::kError, "template for unknown message type " + type, type, {}});
      continue;
    }
    try {
      expand(tmpl, [&](const std::string& slot) {
        bool reserved = std::find(std::begin(kReservedSlots), std::end(kReservedSlots), slot) !=
                        std::end(kReservedSlots);
        if (!reserved && !schema->find_arg(slot)) {
          out.push_back({Severity::kError, "slot {" + slot + "} is not an argument of " + type,
                         type, {}});
        }
        return std::string();
      });
    } catch (const std::invalid_argument& e) {
      out.push_back({Severity::kError, type + ": " + e.what(), type, {}});
    }
  }
  std::set<std::string> relations;
  for (const RelationSchema& r : spec.relations) relations.insert(r.name);
  for (const auto& [name, phrase] : pack.connectives) {
    if (!relations.count(name)) {
      out.push_back({Severity::kWarning, "connective for unknown relation " + name, name, {}});
    }
  }
  for (const auto& [type, schema] : spec.schemas) {
    if (!pack.messages.count(type)) {
      out.push_back({Severity::kWarning, "no template for message type " + type, type, {}});
    }
  }
  return out;
}

std::string realize(const DocumentPlan& plan, const TemplatePack& templates) {
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < plan.frames.size(); ++i) {
    std::vector<std::string> sentences;
    for (const Connective& c : plan.connectives) {
      if (c.to != i) continue;
      auto it = templates.connectives.find(c.relation);
      if (it == templates.connectives.end()) continue;
      std::string s = finish_sentence(it->second);
      if (std::find(sentences.begin(), sentences.end(), s) == sentences.end()) {
        sentences.push_back(std::move(s));
      }
    }
    for (const MessageCluster& cluster : plan.frames[i].clusters) {
      sentences.push_back(render_cluster(cluster, plan, templates));
    }
    std::string line;
    for (std::size_t k = 0; k < sentences.size(); ++k) line += (k ? " " : "") + sentences[k];
    lines.push_back(std::move(line));
  }
  std::string out;
  for (const std::string& l : lines) out += l + "\n";
  return out;
}

}  // namespace sdrgrid
