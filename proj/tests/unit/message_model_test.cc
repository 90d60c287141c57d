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

#include <random>

#include "doctest.h"
#include "sdrgrid/message.h"
#include "world.h"

namespace sdrgrid {
namespace {

TopicSpec arrivals() { return parse_topic_spec(testing::read_fixture("arrivals.topic")); }
TopicSpec hostages() { return parse_topic_spec(testing::read_fixture("hostages.topic")); }

Timestamp ts(const char* text) { return Timestamp::parse(text); }

TEST_CASE("timestamps render as twelve digits") {
  CHECK(ts("200602120000").str() == "200602120000");
  CHECK(ts("199907151830").hour() == 18);
  CHECK(ts("199907151830").minute() == 30);
  CHECK(ts("199907151830").clock_str() == "18:30");
  CHECK(ts("199907151830").start_of_day() == ts("199907150000"));
  CHECK(ts("197001010000").minutes() == 0);
  CHECK(ts("197001010001") - ts("196912312359") == 2);
  CHECK(ts("200602120000") < ts("200602120001"));
  for (const char* bad : {"2006021200", "2006021300000", "200613120000", "200602300000",
                          "200602122400", "200602121260", "2006x2120000", ""}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Timestamp::parse(bad), std::invalid_argument);
  }
}

TEST_CASE("timestamp text round-trips") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 5000; ++i) {
    Timestamp t(static_cast<std::int64_t>(rng() % 60'000'000) - 10'000'000);
    std::string s = t.str();
    CHECK(s.size() == 12);
    CHECK(Timestamp::parse(s) == t);
    CHECK(Timestamp::parse(s).str() == s);
  }
}

TEST_CASE("reference time normalization") {
  CHECK(normalize_ref_time(ts("200602120000"), DayOffset{-1}) == ts("200602110000"));
  CHECK(normalize_ref_time(ts("199907151900"), MinuteOffset{-60}) == ts("199907151800"));
  CHECK(normalize_ref_time(ts("199907151700"), ClockSet{12, 0, 0}) == ts("199907151200"));
  CHECK(normalize_ref_time(ts("199907150030"), ClockSet{23, 15, -1}) == ts("199907142315"));
}

TEST_CASE("no temporal expression is the identity") {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 1000; ++i) {
    Timestamp t(static_cast<std::int64_t>(rng() % 40'000'000));
    CHECK(normalize_ref_time(t, NoTemporal{}) == t);
  }
}

TEST_CASE("offset kinds commute with translation") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    Timestamp t(static_cast<std::int64_t>(rng() % 40'000'000));
    std::int64_t delta = static_cast<std::int64_t>(rng() % 200'000) - 100'000;
    std::int64_t k = static_cast<std::int64_t>(rng() % 20'000) - 10'000;
    std::int64_t d = static_cast<std::int64_t>(rng() % 60) - 30;
    CHECK(normalize_ref_time(t + delta, MinuteOffset{k}) ==
          normalize_ref_time(t, MinuteOffset{k}) + delta);
    CHECK(normalize_ref_time(t + delta, DayOffset{d}) ==
          normalize_ref_time(t, DayOffset{d}) + delta);
  }
}

MessageInstance arrive(const std::string& what, const std::string& place) {
  MessageInstance m;
  m.id = "a1";
  m.msg_type = "arrive";
  m.bindings = {{"what", EntityRef{what}}, {"place", EntityRef{place}}};
  m.source = "A";
  m.pub_time = ts("200602120000");
  m.ref_time = ts("200602110000");
  m.doc_id = "doc";
  return m;
}

TEST_CASE("message validation") {
  TopicSpec spec = arrivals();
  CHECK(validate_message(arrive("Boeing 747", "airport of Stanstend"), spec).empty());

  MessageInstance missing = arrive("Boeing 747", "airport of Stanstend");
  missing.bindings.erase("place");
  auto diags = validate_message(missing, spec);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].is_error());
  CHECK(diags[0].message == "unbound arg place");

  // Wrong concept: a location where a vehicle is expected.
  CHECK(has_errors(validate_message(arrive("airport of Luton", "airport of Stanstend"), spec)));
  CHECK(has_errors(validate_message(arrive("Boeing 747", "nowhere"), spec)));

  MessageInstance extra = arrive("Boeing 747", "airport of Stanstend");
  extra.bindings["speed"] = EntityRef{"Boeing 747"};
  CHECK(has_errors(validate_message(extra, spec)));

  MessageInstance unknown = arrive("Boeing 747", "airport of Stanstend");
  unknown.msg_type = "fly";
  CHECK(has_errors(validate_message(unknown, spec)));
}

TEST_CASE("union-typed arguments accept subconcepts") {
  TopicSpec spec = hostages();
  MessageInstance m;
  m.id = "m3";
  m.msg_type = "free";
  m.bindings = {{"who", EntityRef{"hijackers"}},
                {"whom", EntityRef{"children"}},
                {"from", EntityRef{"bus"}}};
  m.source = "A";
  m.doc_id = "d3";
  CHECK(validate_message(m, spec).empty());

  m.bindings["from"] = EntityRef{"airport"};
  CHECK(validate_message(m, spec).empty());

  m.bindings["from"] = EntityRef{"children"};
  CHECK(has_errors(validate_message(m, spec)));

  MessageInstance n;
  n.id = "m1";
  n.msg_type = "negotiate";
  n.bindings = {{"who", EntityRef{"negotiating_team"}},
                {"with_whom", EntityRef{"hijackers"}},
                {"about", MessageTypeName{"free"}}};
  n.source = "A";
  n.doc_id = "d1";
  CHECK(validate_message(n, spec).empty());
  n.bindings["about"] = MessageTypeName{"fly"};
  CHECK(has_errors(validate_message(n, spec)));
  n.bindings["about"] = EntityRef{"bus"};
  CHECK(has_errors(validate_message(n, spec)));
}

TEST_CASE("scaled values must lie on the scale") {
  TopicSpec spec = parse_topic_spec(testing::read_fixture("football.topic"));
  MessageInstance m;
  m.id = "p";
  m.msg_type = "performance";
  m.bindings = {{"of_whom", EntityRef{"aek"}},
                {"in_what", EntityRef{"attack"}},
                {"time_span", EntityRef{"whole_match"}},
                {"value", ScaledLiteral{"Degree", "good"}}};
  m.source = "A";
  m.doc_id = "d";
  CHECK(validate_message(m, spec).empty());
  m.bindings["value"] = ScaledLiteral{"Degree", "superb"};
  CHECK(has_errors(validate_message(m, spec)));
}

TEST_CASE("report stream parsing") {
  TopicSpec spec = arrivals();
  auto msgs = parse_message_stream(
      R"({"doc_id":"d","source":"A","pub_time":"200602120000","messages":[)"
      R"({"id":"a1","type":"arrive","bindings":{"what":{"entity":"Boeing 747"},)"
      R"("place":{"entity":"airport of Stanstend"}},"temporal":{"kind":"day_offset","days":-1}}]})",
      spec);
  REQUIRE(msgs.size() == 1);
  CHECK(msgs[0].ref_time == ts("200602110000"));
  CHECK(msgs[0].pub_time == ts("200602120000"));
  CHECK(msgs[0].source == "A");

  CHECK(parse_message_stream("", spec).empty());
  CHECK(parse_message_stream("\n\n", spec).empty());

  try {
    parse_message_stream(
        "\n" R"({"doc_id":"d","source":"A","pub_time":"200602120000","messages":[)"
        R"({"id":"x","type":"fly","bindings":{}}]})",
        spec);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.message() == "unknown message type fly");
    CHECK(e.location().line == 2);
  }
  CHECK_THROWS_AS(parse_message_stream("{not json", spec), ParseError);
  CHECK_THROWS_AS(
      parse_message_stream(R"({"doc_id":"d","source":"A","pub_time":"2006","messages":[]})", spec),
      ParseError);
  CHECK_THROWS_AS(
      parse_message_stream(
          R"({"doc_id":"d","source":"A","pub_time":"200602120000","messages":[)"
          R"({"id":"a","type":"arrive","bindings":{"what":{"entity":"Boeing 747"}}}]})",
          spec),
      ParseError);
  CHECK_THROWS_AS(
      parse_message_stream(
          R"({"doc_id":"d","source":"A","pub_time":"200602120000","messages":[)"
          R"({"id":"a","type":"arrive","bindings":{"what":{"entity":"Boeing 747"},)"
          R"("place":{"entity":"airport of Luton"}},"temporal":{"kind":"clock_set","hour":24,"minute":0}}]})",
          spec),
      ParseError);
}

TEST_CASE("hostage report stream") {
  auto msgs = parse_message_stream(testing::read_fixture("hostages_reports.jsonl"), hostages());
  REQUIRE(msgs.size() == 5);
  CHECK(msgs[3].id == "m4");
  CHECK(msgs[3].pub_time == ts("199907151700"));
  CHECK(msgs[3].ref_time == ts("199907151200"));
  CHECK(msgs[4].ref_time == ts("199907151800"));
}

TEST_CASE("written streams parse back to the same messages") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    CAPTURE(seed);
    testing::World w = testing::random_world(seed);
    std::string text = write_message_stream(w.messages);
    CHECK(parse_message_stream(text, w.spec) == w.messages);
    CHECK(write_message_stream(parse_message_stream(text, w.spec)) == text);
  }
}

}  // namespace
}  // namespace sdrgrid
