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

#include "sdrgrid/extraction.h"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <sstream>
#include <tuple>

#include "sdrgrid/json_codec.h"

namespace sdrgrid {
namespace {

using json_codec::Json;

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string tok;
  while (in >> tok) out.push_back(lower(tok));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Calls fn(line_number, content) for non-blank, non-comment lines.
template <typename Fn>
void for_each_line(std::string_view text, Fn fn) {
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::string_view body = trim(line);
    if (!body.empty() && body.front() != '#') fn(line_no, line);
    pos = nl + 1;
  }
}

std::vector<std::string> decode_tokens(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("tokens must be an array");
  std::vector<std::string> out;
  for (const Json& t : j) {
    if (!t.is_string()) throw std::invalid_argument("tokens must be strings");
    out.push_back(t.get<std::string>());
  }
  if (out.empty()) throw std::invalid_argument("empty sentence");
  return out;
}

// Value a mention contributes when bound.
BoundValue mention_value(const Mention& m) {
  if (m.concept_name == kMessageTypeLiteral) return MessageTypeName{m.canonical_id};
  return EntityRef{m.canonical_id};
}

bool compatible(const Mention& m, const ArgSpec& arg, const TopicSpec& spec) {
  if (m.concept_name == kMessageTypeLiteral) {
    return arg.allowed.count(std::string(kMessageTypeLiteral)) > 0 &&
           spec.find_schema(m.canonical_id) != nullptr;
  }
  if (spec.ontology.instances.count(m.canonical_id)) {
    return spec.ontology.satisfies(m.concept_name, arg.allowed);
  }
  // Scale value.
  return arg.allowed.count(m.concept_name) > 0;
}

std::optional<std::string> scale_of(const Ontology& onto, const std::string& value) {
  for (const auto& [concept_name, values] : onto.ordered_scales) {
    if (std::find(values.begin(), values.end(), value) != values.end()) return concept_name;
  }
  return std::nullopt;
}

}  // namespace

std::vector<Document> parse_documents(std::string_view text) {
  std::vector<Document> docs;
  for_each_line(text, [&](int line_no, std::string_view line) {
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw ParseError("malformed JSON: " + std::string(e.what()),
                       {line_no, static_cast<int>(e.byte)});
    }
    try {
      Document doc;
      doc.doc_id = json_codec::require_string(j, "doc_id");
      doc.source = json_codec::require_string(j, "source");
      doc.pub_time = json_codec::decode_timestamp(json_codec::require(j, "pub_time"));
      const Json& sentences = json_codec::require(j, "sentences");
      if (!sentences.is_array()) throw std::invalid_argument("sentences must be an array");
      for (const Json& s : sentences) {
        Sentence sentence;
        if (s.is_object()) {
          sentence.tokens = decode_tokens(json_codec::require(s, "tokens"));
          if (s.contains("temporal")) sentence.temporal = json_codec::decode_temporal(s["temporal"]);
        } else {
          sentence.tokens = decode_tokens(s);
        }
        doc.sentences.push_back(std::move(sentence));
      }
      if (doc.doc_id.empty()) throw std::invalid_argument("empty doc_id");
      docs.push_back(std::move(doc));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), {line_no, 1});
    } catch (const Json::exception& e) {
      throw ParseError(e.what(), {line_no, 1});
    }
  });
  return docs;
}

void Gazetteer::add(std::string_view surface, GazetteerEntry entry) {
  std::vector<std::string> key = split_ws(surface);
  if (key.empty()) throw std::invalid_argument("empty surface form");
  max_tokens_ = std::max(max_tokens_, key.size());
  entries_[std::move(key)] = std::move(entry);
}

Gazetteer Gazetteer::load(std::string_view text, const TopicSpec& spec) {
  Gazetteer gaz;
  for_each_line(text, [&](int line_no, std::string_view line) {
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos) {
      throw ParseError("expected surface<TAB>entity", {line_no, 1});
    }
    std::string surface(trim(line.substr(0, tab)));
    std::string id(trim(line.substr(tab + 1)));
    GazetteerEntry entry{id, ""};
    if (auto c = spec.ontology.concept_of(id)) {
      entry.concept_name = *c;
    } else if (spec.find_schema(id)) {
      entry.concept_name = std::string(kMessageTypeLiteral);
    } else if (auto scale = scale_of(spec.ontology, id)) {
      entry.concept_name = *scale;
    } else {
      throw ParseError("unknown entity " + id, {line_no, static_cast<int>(tab) + 2});
    }
    if (surface.empty()) throw ParseError("empty surface form", {line_no, 1});
    gaz.add(surface, std::move(entry));
  });
  return gaz;
}

std::optional<std::pair<std::size_t, const GazetteerEntry*>> Gazetteer::longest_match(
    std::span<const std::string> tokens, std::size_t begin) const {
  std::size_t limit = std::min(max_tokens_, tokens.size() - begin);
  std::vector<std::string> key;
  for (std::size_t i = 0; i < limit; ++i) key.push_back(lower(tokens[begin + i]));
  for (std::size_t len = limit; len > 0; --len) {
    key.resize(len);
    auto it = entries_.find(key);
    if (it != entries_.end()) return std::make_pair(len, &it->second);
  }
  return std::nullopt;
}

void TriggerLexicon::add(std::string_view token, std::string msg_type) {
  entries_[lower(token)] = std::move(msg_type);
}

TriggerLexicon TriggerLexicon::load(std::string_view text, const TopicSpec& spec) {
  TriggerLexicon lex;
  for_each_line(text, [&](int line_no, std::string_view line) {
    std::vector<std::string> parts;
    std::istringstream in{std::string(line)};
    std::string part;
    while (in >> part) parts.push_back(part);
    if (parts.size() != 2) throw ParseError("expected token and message type", {line_no, 1});
    if (!spec.find_schema(parts[1])) {
      throw ParseError("unknown message type " + parts[1], {line_no, 1});
    }
    lex.add(parts[0], parts[1]);
  });
  return lex;
}

const std::string* TriggerLexicon::lookup(std::string_view token) const {
  auto it = entries_.find(lower(token));
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<Mention> recognize_entities(const Document& doc, const Gazetteer& gaz) {
  std::vector<Mention> out;
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    const auto& tokens = doc.sentences[s].tokens;
    std::size_t i = 0;
    while (i < tokens.size()) {
      auto hit = gaz.longest_match(tokens, i);
      if (!hit) {
        ++i;
        continue;
      }
      out.push_back({static_cast<int>(s), static_cast<int>(i),
                     static_cast<int>(i + hit->first), hit->second->canonical_id,
                     hit->second->concept_name});
      i += hit->first;
    }
  }
  return out;
}

std::optional<Trigger> classify_sentence(std::span<const std::string> tokens,
                                         const TriggerLexicon& lexicon) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (const std::string* type = lexicon.lookup(tokens[i])) {
      return Trigger{*type, static_cast<int>(i)};
    }
  }
  return std::nullopt;
}

MessageInstance fill_arguments(const Document& doc, int sentence_index,
                               const Trigger& trigger,
                               std::span<const Mention> mentions,
                               const TopicSpec& spec, int window) {
  const MessageSchema* schema = spec.find_schema(trigger.msg_type);
  if (!schema) throw std::invalid_argument("unknown message type " + trigger.msg_type);

  // Document-wide token offsets so distances can cross sentence boundaries.
  std::vector<std::int64_t> offset(doc.sentences.size() + 1, 0);
  for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
    offset[s + 1] = offset[s] + static_cast<std::int64_t>(doc.sentences[s].tokens.size());
  }
  const std::int64_t anchor = offset.at(sentence_index) + trigger.token;

  std::vector<bool> used(mentions.size(), false);
  MessageInstance msg;
  msg.msg_type = schema->name;
  for (const ArgSpec& arg : schema->args) {
    std::optional<std::size_t> best;
    std::tuple<int, std::int64_t, std::int64_t> best_key;
    for (std::size_t k = 0; k < mentions.size(); ++k) {
      const Mention& m = mentions[k];
      int sdist = std::abs(m.sentence - sentence_index);
      if (used[k] || sdist > window) continue;
      if (m.sentence < 0 || m.sentence >= static_cast<int>(doc.sentences.size())) continue;
      if (!compatible(m, arg, spec)) continue;
      std::int64_t pos = offset[m.sentence] + m.begin;
      std::int64_t tdist = pos < anchor ? anchor - (offset[m.sentence] + m.end - 1) : pos - anchor;
      auto key = std::make_tuple(sdist, std::abs(tdist), pos);
      if (!best || key < best_key) {
        best = k;
        best_key = key;
      }
    }
    if (!best) throw FillError(arg.name);
    used[*best] = true;
    const Mention& m = mentions[*best];
    if (m.concept_name != kMessageTypeLiteral && !spec.ontology.instances.count(m.canonical_id)) {
      msg.bindings[arg.name] = ScaledLiteral{m.concept_name, m.canonical_id};
    } else {
      msg.bindings[arg.name] = mention_value(m);
    }
  }
  msg.id = doc.doc_id + ".s" + std::to_string(sentence_index);
  msg.source = doc.source;
  msg.doc_id = doc.doc_id;
  msg.pub_time = doc.pub_time;
  msg.ref_time = normalize_ref_time(doc.pub_time, doc.sentences.at(sentence_index).temporal);
  msg.sentence = sentence_index;
  return msg;
}

std::vector<MessageInstance> extract_messages(std::span<const Document> docs,
                                              const TopicSpec& spec,
                                              const Gazetteer& gaz,
                                              const TriggerLexicon& lexicon,
                                              std::vector<ExtractionIssue>* issues) {
  std::vector<MessageInstance> out;
  for (const Document& doc : docs) {
    std::vector<Mention> mentions = recognize_entities(doc, gaz);
    for (std::size_t s = 0; s < doc.sentences.size(); ++s) {
      auto trigger = classify_sentence(doc.sentences[s].tokens, lexicon);
      if (!trigger) continue;
      try {
        out.push_back(fill_arguments(doc, static_cast<int>(s), *trigger, mentions, spec));
      } catch (const FillError& e) {
        if (issues) issues->push_back({doc.doc_id, static_cast<int>(s), e.what()});
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const MessageInstance& a, const MessageInstance& b) {
    return std::tie(a.doc_id, *a.sentence) < std::tie(b.doc_id, *b.sentence);
  });
  return out;
}

}  // namespace sdrgrid
