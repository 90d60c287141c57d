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
#include <random>
#include <sstream>

#include "doctest.h"
#include "sdrgrid/extraction.h"
#include "world.h"

namespace sdrgrid {
namespace {

std::vector<std::string> words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

Document one_sentence(const std::string& text, const std::string& id = "doc") {
  return {id, "A", Timestamp::parse("200602120000"), {{words(text), NoTemporal{}}}};
}

TopicSpec arrivals() { return parse_topic_spec(testing::read_fixture("arrivals.topic")); }
TopicSpec hostages() { return parse_topic_spec(testing::read_fixture("hostages.topic")); }

Gazetteer arrivals_gazetteer(const TopicSpec& spec) {
  return Gazetteer::load("Boeing 747\tBoeing 747\nairport of Stanstend\tairport of Stanstend\n",
                         spec);
}

TEST_CASE("gazetteer finds multi-token entities") {
  TopicSpec spec = arrivals();
  Document doc = one_sentence("The Boeing 747 arrived yesterday at the airport of Stanstend");
  auto mentions = recognize_entities(doc, arrivals_gazetteer(spec));
  REQUIRE(mentions.size() == 2);
  CHECK(mentions[0] == Mention{0, 1, 3, "Boeing 747", "Airplane"});
  CHECK(mentions[1] == Mention{0, 7, 10, "airport of Stanstend", "Location"});
}

TEST_CASE("no gazetteer hits") {
  TopicSpec spec = arrivals();
  CHECK(recognize_entities(one_sentence("nothing to see here"), arrivals_gazetteer(spec)).empty());
}

TEST_CASE("longest match wins over a prefix entry") {
  TopicSpec spec = hostages();
  Gazetteer gaz;
  gaz.add("negotiating", {"negotiate", std::string(kMessageTypeLiteral)});
  gaz.add("negotiating team", {"negotiating_team", "RescueTeam"});
  auto mentions = recognize_entities(one_sentence("the Negotiating TEAM arrived"), gaz);
  REQUIRE(mentions.size() == 1);
  CHECK(mentions[0] == Mention{0, 1, 3, "negotiating_team", "RescueTeam"});

  auto alone = recognize_entities(one_sentence("negotiating again"), gaz);
  REQUIRE(alone.size() == 1);
  CHECK(alone[0].canonical_id == "negotiate");
}

TEST_CASE("overlapping entries resolve leftmost first") {
  Gazetteer gaz;
  gaz.add("a b", {"ab", "X"});
  gaz.add("b c d", {"bcd", "X"});
  auto mentions = recognize_entities(one_sentence("a b c d"), gaz);
  REQUIRE(mentions.size() == 1);
  CHECK(mentions[0].canonical_id == "ab");
}

TEST_CASE("gazetteer rejects unknown ids") {
  CHECK_THROWS_AS(Gazetteer::load("zeppelin\tzeppelin\n", arrivals()), ParseError);
  CHECK_THROWS_AS(Gazetteer::load("no tab here\n", arrivals()), ParseError);
  CHECK_THROWS_AS(TriggerLexicon::load("flew fly\n", arrivals()), ParseError);
}

TEST_CASE("first trigger decides the sentence type") {
  TopicSpec spec = hostages();
  TriggerLexicon lex = TriggerLexicon::load(testing::read_fixture("hostages.lex"), spec);
  auto free_type = classify_sentence(
      words("The negotiating team managed to convince the hijackers to let free the children"),
      lex);
  REQUIRE(free_type);
  CHECK(free_type->msg_type == "free");
  CHECK(free_type->token == 10);

  CHECK_FALSE(classify_sentence(words("nothing happened today"), lex));

  auto first = classify_sentence(words("the negotiations aim to free the children"), lex);
  REQUIRE(first);
  CHECK(first->msg_type == "negotiate");
}

TEST_CASE("argument filling from the arrival sentence") {
  TopicSpec spec = arrivals();
  Document doc = one_sentence("The Boeing 747 arrived yesterday at the airport of Stanstend");
  doc.sentences[0].temporal = DayOffset{-1};
  auto mentions = recognize_entities(doc, arrivals_gazetteer(spec));
  MessageInstance m = fill_arguments(doc, 0, {"arrive", 3}, mentions, spec);
  CHECK(m.msg_type == "arrive");
  CHECK(m.bindings.at("what") == BoundValue{EntityRef{"Boeing 747"}});
  CHECK(m.bindings.at("place") == BoundValue{EntityRef{"airport of Stanstend"}});
  CHECK(m.ref_time == Timestamp::parse("200602110000"));
  CHECK(validate_message(m, spec).empty());
}

TEST_CASE("argument filling for the freeing sentence") {
  TopicSpec spec = hostages();
  Gazetteer gaz = Gazetteer::load(testing::read_fixture("hostages.gaz"), spec);
  TriggerLexicon lex = TriggerLexicon::load(testing::read_fixture("hostages.lex"), spec);
  Document doc = one_sentence(
      "The negotiating team managed to convince the hijackers to let free the children from "
      "the bus .");
  auto trigger = classify_sentence(doc.sentences[0].tokens, lex);
  REQUIRE(trigger);
  MessageInstance m = fill_arguments(doc, 0, *trigger, recognize_entities(doc, gaz), spec);
  CHECK(m.bindings.at("who") == BoundValue{EntityRef{"hijackers"}});
  CHECK(m.bindings.at("whom") == BoundValue{EntityRef{"children"}});
  CHECK(m.bindings.at("from") == BoundValue{EntityRef{"bus"}});
}

TEST_CASE("missing argument raises a fill error naming it") {
  TopicSpec spec = hostages();
  Gazetteer gaz = Gazetteer::load(testing::read_fixture("hostages.gaz"), spec);
  Document doc = one_sentence("the negotiating team started negotiations about free");
  try {
    fill_arguments(doc, 0, {"negotiate", 4}, recognize_entities(doc, gaz), spec);
    FAIL("expected a fill error");
  } catch (const FillError& e) {
    CHECK(e.arg() == "with_whom");
  }
}

TEST_CASE("sentence distance dominates token distance") {
  TopicSpec spec = hostages();
  Gazetteer gaz = Gazetteer::load(testing::read_fixture("hostages.gaz"), spec);
  Document doc{"d", "A", Timestamp::parse("199907151200"),
               {{words("children"), NoTemporal{}},
                {words("hijackers freed x x x x x x x x x x x x x bus passengers"), NoTemporal{}},
                {words("y"), NoTemporal{}},
                {words("y"), NoTemporal{}},
                {words("airport"), NoTemporal{}}}};
  auto mentions = recognize_entities(doc, gaz);
  MessageInstance m = fill_arguments(doc, 1, {"free", 1}, mentions, spec);
  CHECK(m.bindings.at("whom") == BoundValue{EntityRef{"passengers"}});
  CHECK(m.bindings.at("from") == BoundValue{EntityRef{"bus"}});

  // Outside the window of two sentences nothing is found.
  Document far{"d", "A", Timestamp::parse("199907151200"),
               {{words("hijackers freed"), NoTemporal{}},
                {words("y"), NoTemporal{}},
                {words("y"), NoTemporal{}},
                {words("children bus"), NoTemporal{}}}};
  CHECK_THROWS_AS(fill_arguments(far, 0, {"free", 1}, recognize_entities(far, gaz), spec),
                  FillError);
  CHECK_NOTHROW(fill_arguments(far, 0, {"free", 1}, recognize_entities(far, gaz), spec, 3));
}

TEST_CASE("a mention binds at most one argument") {
  TopicSpec spec = parse_topic_spec(
      "TOPIC t\nONTOLOGY\n  CONCEPT P\n  INSTANCE ann : P\n  INSTANCE bob : P\n"
      "MESSAGES\n  meet(a: P, b: P)\n");
  Gazetteer gaz = Gazetteer::load("ann\tann\nbob\tbob\n", spec);
  Document doc = one_sentence("ann met bob");
  MessageInstance m = fill_arguments(doc, 0, {"meet", 1}, recognize_entities(doc, gaz), spec);
  CHECK(m.bindings.at("a") == BoundValue{EntityRef{"ann"}});
  CHECK(m.bindings.at("b") == BoundValue{EntityRef{"bob"}});
  Document lonely = one_sentence("ann met");
  CHECK_THROWS_AS(
      fill_arguments(lonely, 0, {"meet", 1}, recognize_entities(lonely, gaz), spec), FillError);
}

TEST_CASE("hostage documents extract to the annotated messages") {
  TopicSpec spec = hostages();
  Gazetteer gaz = Gazetteer::load(testing::read_fixture("hostages.gaz"), spec);
  TriggerLexicon lex = TriggerLexicon::load(testing::read_fixture("hostages.lex"), spec);
  auto docs = parse_documents(testing::read_fixture("hostages_docs.jsonl"));
  std::vector<ExtractionIssue> issues;
  auto got = extract_messages(docs, spec, gaz, lex, &issues);
  CHECK(issues.empty());
  auto gold = parse_message_stream(testing::read_fixture("hostages_reports.jsonl"), spec);
  REQUIRE(got.size() == gold.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CAPTURE(i);
    CHECK(got[i].msg_type == gold[i].msg_type);
    CHECK(got[i].bindings == gold[i].bindings);
    CHECK(got[i].source == gold[i].source);
    CHECK(got[i].pub_time == gold[i].pub_time);
    CHECK(got[i].ref_time == gold[i].ref_time);
    CHECK(validate_message(got[i], spec).empty());
  }
}

TEST_CASE("empty inputs") {
  TopicSpec spec = hostages();
  Gazetteer gaz = Gazetteer::load(testing::read_fixture("hostages.gaz"), spec);
  TriggerLexicon lex = TriggerLexicon::load(testing::read_fixture("hostages.lex"), spec);
  CHECK(extract_messages({}, spec, gaz, lex).empty());
  std::vector<Document> docs{one_sentence("the bus was parked near the airport")};
  CHECK(extract_messages(docs, spec, gaz, lex).empty());
}

TEST_CASE("fill failures are skipped and reported") {
  TopicSpec spec = hostages();
  Gazetteer gaz = Gazetteer::load(testing::read_fixture("hostages.gaz"), spec);
  TriggerLexicon lex = TriggerLexicon::load(testing::read_fixture("hostages.lex"), spec);
  std::vector<Document> docs{one_sentence("the hijackers freed nobody", "x"),
                             one_sentence("the hijackers freed the children from the bus", "y")};
  std::vector<ExtractionIssue> issues;
  auto got = extract_messages(docs, spec, gaz, lex, &issues);
  REQUIRE(got.size() == 1);
  CHECK(got[0].id == "y.s0");
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].doc_id == "x");
}

// Random sentences over the hostage vocabulary.
std::vector<Document> random_docs(std::mt19937_64& rng) {
  const std::vector<std::string> vocab = {
      "the", "hijackers", "negotiating", "team", "children", "bus", "free", "freed",
      "negotiations", "police", "airport", "passengers", "minister", "with", "freeing", "holds"};
  std::vector<Document> docs;
  int n = 1 + static_cast<int>(rng() % 4);
  for (int d = 0; d < n; ++d) {
    Document doc{"doc" + std::to_string(d), std::string(1, static_cast<char>('A' + rng() % 3)),
                 Timestamp::parse("199907151200") + 60 * static_cast<std::int64_t>(rng() % 5),
                 {}};
    int sentences = 1 + static_cast<int>(rng() % 4);
    for (int s = 0; s < sentences; ++s) {
      std::vector<std::string> tokens;
      int len = 1 + static_cast<int>(rng() % 12);
      for (int k = 0; k < len; ++k) tokens.push_back(vocab[rng() % vocab.size()]);
      doc.sentences.push_back({tokens, NoTemporal{}});
    }
    docs.push_back(doc);
  }
  return docs;
}

TEST_CASE("extraction is deterministic and order independent") {
  TopicSpec spec = hostages();
  Gazetteer gaz = Gazetteer::load(testing::read_fixture("hostages.gaz"), spec);
  TriggerLexicon lex = TriggerLexicon::load(testing::read_fixture("hostages.lex"), spec);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    auto docs = random_docs(rng);
    auto a = extract_messages(docs, spec, gaz, lex);
    CHECK(a == extract_messages(docs, spec, gaz, lex));
    std::reverse(docs.begin(), docs.end());
    CHECK(a == extract_messages(docs, spec, gaz, lex));
    for (const MessageInstance& m : a) CHECK(validate_message(m, spec).empty());
  }
}

TEST_CASE("adding a gazetteer entry keeps other mentions covered") {
  TopicSpec spec = hostages();
  std::string base = testing::read_fixture("hostages.gaz");
  Gazetteer before = Gazetteer::load(base, spec);
  const std::vector<std::string> extra = {"team\tpolice", "the bus\tbus", "hijackers with\thijackers",
                                          "freed children\tchildren", "airport\tborder"};
  std::mt19937_64 rng(4);
  for (int i = 0; i < 300; ++i) {
    auto docs = random_docs(rng);
    const std::string& line = extra[rng() % extra.size()];
    Gazetteer after = Gazetteer::load(base + line + "\n", spec);
    std::string added_surface = line.substr(0, line.find('\t'));
    for (const Document& doc : docs) {
      auto old_mentions = recognize_entities(doc, before);
      auto new_mentions = recognize_entities(doc, after);
      for (const Mention& m : old_mentions) {
        std::string surface;
        for (int k = m.begin; k < m.end; ++k) {
          surface += (k > m.begin ? " " : "") + doc.sentences[m.sentence].tokens[k];
        }
        if (surface == added_surface) continue;
        bool kept = std::any_of(new_mentions.begin(), new_mentions.end(), [&](const Mention& n) {
          return n.sentence == m.sentence && n.begin < m.end && m.begin < n.end;
        });
        CHECK(kept);
      }
    }
  }
}

}  // namespace
}  // namespace sdrgrid
