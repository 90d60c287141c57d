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

#include <algorithm>
#include <sstream>

#include "sdrgrid/json_codec.h"
#include "sdrgrid/message.h"

namespace sdrgrid {

using json_codec::Json;

std::vector<MessageInstance> parse_message_stream(std::string_view text,
                                                  const TopicSpec& spec) {
  std::vector<MessageInstance> out;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }

    Json record;
    try {
      record = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw ParseError("malformed JSON: " + std::string(e.what()),
                       {line_no, static_cast<int>(e.byte)});
    }
    try {
      if (!record.is_object()) throw std::invalid_argument("record must be an object");
      const std::string doc_id = json_codec::require_string(record, "doc_id");
      const std::string source = json_codec::require_string(record, "source");
      const Timestamp pub = json_codec::decode_timestamp(
          json_codec::require(record, "pub_time"));
      const Json& messages = json_codec::require(record, "messages");
      if (!messages.is_array()) throw std::invalid_argument("messages must be an array");
      for (const Json& entry : messages) {
        MessageInstance m;
        m.id = json_codec::require_string(entry, "id");
        m.msg_type = json_codec::require_string(entry, "type");
        if (spec.find_schema(m.msg_type) == nullptr) {
          throw ParseError("unknown message type " + m.msg_type, {line_no, 1});
        }
        m.source = source;
        m.doc_id = doc_id;
        m.pub_time = pub;
        const Json& bindings = json_codec::require(entry, "bindings");
        if (!bindings.is_object()) {
          throw std::invalid_argument("bindings must be an object");
        }
        for (const auto& [arg, value] : bindings.items()) {
          m.bindings.emplace(arg, json_codec::decode_bound_value(value));
        }
        TemporalExpression temporal = NoTemporal{};
        if (entry.contains("temporal")) {
          temporal = json_codec::decode_temporal(entry["temporal"]);
        }
        m.ref_time = normalize_ref_time(pub, temporal);
        if (entry.contains("sentence")) {
          if (!entry["sentence"].is_number_integer()) {
            throw std::invalid_argument("field 'sentence' must be an integer");
          }
          m.sentence = entry["sentence"].get<int>();
        }
        for (const Diagnostic& d : validate_message(m, spec)) {
          if (d.is_error()) {
            throw ParseError("message " + m.id + ": " + d.message, {line_no, 1});
          }
        }
        out.push_back(std::move(m));
      }
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), {line_no, 1});
    } catch (const Json::exception& e) {
      throw ParseError(e.what(), {line_no, 1});
    }
    if (end == text.size()) break;
  }
  return out;
}

std::string write_message_stream(std::span<const MessageInstance> messages) {
  // Group into documents in order of first appearance.
  struct DocKey {
    std::string doc_id;
    std::string source;
    Timestamp pub;
    bool operator==(const DocKey&) const = default;
  };
  std::vector<std::pair<DocKey, Json>> docs;
  for (const MessageInstance& m : messages) {
    DocKey key{m.doc_id, m.source, m.pub_time};
    auto it = std::find_if(docs.begin(), docs.end(),
                           [&](const auto& d) { return d.first == key; });
    if (it == docs.end()) {
      Json doc = {{"doc_id", m.doc_id},
                  {"source", m.source},
                  {"pub_time", m.pub_time.str()},
                  {"messages", Json::array()}};
      docs.emplace_back(key, std::move(doc));
      it = std::prev(docs.end());
    }
    Json bindings = Json::object();
    for (const auto& [arg, value] : m.bindings) {
      bindings[arg] = json_codec::encode_bound_value(value);
    }
    Json entry = {{"id", m.id}, {"type", m.msg_type}, {"bindings", bindings}};
    if (m.ref_time != m.pub_time) {
      entry["temporal"] = json_codec::encode_temporal(MinuteOffset{m.ref_time - m.pub_time});
    }
    if (m.sentence) entry["sentence"] = *m.sentence;
    it->second["messages"].push_back(std::move(entry));
  }
  std::string out;
  for (const auto& [key, doc] : docs) {
    out += doc.dump();
    out += '\n';
  }
  return out;
}

}  // namespace sdrgrid
