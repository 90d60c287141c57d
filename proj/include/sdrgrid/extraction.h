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

// Deterministic message extraction: gazetteer entity recognition, trigger
// based sentence typing and argument filling from nearby mentions.

#ifndef SDRGRID_EXTRACTION_H_
#define SDRGRID_EXTRACTION_H_

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sdrgrid/message.h"
#include "sdrgrid/topic_spec.h"

namespace sdrgrid {

struct Sentence {
  std::vector<std::string> tokens;
  // Annotation that shifts the reference time of messages in this sentence.
  TemporalExpression temporal = NoTemporal{};
};

struct Document {
  std::string doc_id;
  std::string source;
  Timestamp pub_time;
  std::vector<Sentence> sentences;
};

// Tokenized documents, one JSON object per line:
//   {"doc_id", "source", "pub_time", "sentences": [[tok, ...] | {"tokens", "temporal"}]}
std::vector<Document> parse_documents(std::string_view text);

struct GazetteerEntry {
  std::string canonical_id;
  // Ontology concept, or kMessageTypeLiteral for message-type mentions.
  std::string concept_name;
};

// Case-insensitive multi-token surface forms.
class Gazetteer {
 public:
  void add(std::string_view surface, GazetteerEntry entry);

  // Lines "surface form<TAB>canonical id". The concept comes from the
  // ontology instance map, or is kMessageTypeLiteral when the id names a
  // message schema. Throws ParseError on unknown ids.
  static Gazetteer load(std::string_view text, const TopicSpec& spec);

  // Longest entry matching tokens[begin..]; returns its token length.
  std::optional<std::pair<std::size_t, const GazetteerEntry*>> longest_match(
      std::span<const std::string> tokens, std::size_t begin) const;

  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::vector<std::string>, GazetteerEntry> entries_;
  std::size_t max_tokens_ = 0;
};

class TriggerLexicon {
 public:
  void add(std::string_view token, std::string msg_type);

  // Lines "token<whitespace>message-type". Throws ParseError on types the
  // topic does not declare.
  static TriggerLexicon load(std::string_view text, const TopicSpec& spec);

  const std::string* lookup(std::string_view token) const;

 private:
  std::map<std::string, std::string> entries_;
};

struct Mention {
  int sentence = 0;
  // Token span [begin, end) within the sentence.
  int begin = 0;
  int end = 0;
  std::string canonical_id;
  std::string concept_name;

  bool operator==(const Mention&) const = default;
};

// Leftmost-longest, non-overlapping matches per sentence.
std::vector<Mention> recognize_entities(const Document& doc, const Gazetteer& gaz);

struct Trigger {
  std::string msg_type;
  int token = 0;
};

// The first token (left to right) found in the lexicon decides the type.
std::optional<Trigger> classify_sentence(std::span<const std::string> tokens,
                                         const TriggerLexicon& lexicon);

class FillError : public std::runtime_error {
 public:
  explicit FillError(std::string arg)
      : std::runtime_error("no compatible mention for argument " + arg),
        arg_(std::move(arg)) {}
  const std::string& arg() const { return arg_; }

 private:
  std::string arg_;
};

// Binds each schema argument, in declaration order, to the closest unused
// compatible mention: sentence distance first (up to `window`), then token
// distance from the trigger, then position. Throws FillError naming the
// first argument left unbound.
MessageInstance fill_arguments(const Document& doc, int sentence_index,
                               const Trigger& trigger,
                               std::span<const Mention> mentions,
                               const TopicSpec& spec, int window = 2);

struct ExtractionIssue {
  std::string doc_id;
  int sentence = 0;
  std::string message;
};

// Runs the three stages over every sentence. Sentences without a trigger
// yield nothing; sentences whose arguments cannot be filled are skipped and
// reported through `issues`. Output is ordered by (doc_id, sentence).
std::vector<MessageInstance> extract_messages(
    std::span<const Document> docs, const TopicSpec& spec, const Gazetteer& gaz,
    const TriggerLexicon& lexicon, std::vector<ExtractionIssue>* issues = nullptr);

}  // namespace sdrgrid

#endif  // SDRGRID_EXTRACTION_H_
