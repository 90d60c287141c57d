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
#include <string>

#include "doctest.h"
#include "sdrgrid/topic_spec.h"
#include "world.h"

namespace sdrgrid {
namespace {

const char* kArrivals = R"(TOPIC arrivals
ONTOLOGY
  CONCEPT Vehicle
  CONCEPT Airplane : Vehicle
  CONCEPT Location
  INSTANCE "Boeing 747" : Airplane
  INSTANCE stanstend : Location
MESSAGES
  arrive(vehicle: Vehicle, place: Location)
RELATIONS
  RELATION DISAGREEMENT : Synchronic {
    pairs: (arrive, arrive)
    constraint: 1.vehicle = 2.vehicle and 1.place != 2.place
  }
)";

std::string football_with(const std::string& scale_line) {
  return "TOPIC football\nONTOLOGY\n  CONCEPT Player\n  CONCEPT Degree\n  CONCEPT ActionArea\n" +
         scale_line +
         "MESSAGES\n  performance(of_whom: Player, in_what: ActionArea, value: Degree)\n"
         "RELATIONS\n  RELATION POSITIVE_GRADUATION : Diachronic {\n"
         "    pairs: (performance, performance)\n"
         "    constraint: 1.of_whom = 2.of_whom and 1.in_what = 2.in_what and 1.value < 2.value\n"
         "  }\nCONFIG\n  time_unit = 10080\n  diachronic = exact 1\n  planner = linear\n";
}

std::string error_of(const std::string& text) {
  try {
    parse_topic_spec(text);
  } catch (const ParseError& e) {
    return e.message();
  }
  return "";
}

TEST_CASE("disagreement block parses into a synchronic schema") {
  TopicSpec spec = parse_topic_spec(kArrivals);
  REQUIRE(spec.relations.size() == 1);
  RelationSchema expected;
  expected.name = "DISAGREEMENT";
  expected.type = RelationType::kSynchronic;
  expected.pairs = {{"arrive", "arrive"}};
  expected.constraint.atoms = {
      {ArgRef{Side::kFirst, "vehicle"}, CompareOp::kEq, ArgRef{Side::kSecond, "vehicle"}},
      {ArgRef{Side::kFirst, "place"}, CompareOp::kNeq, ArgRef{Side::kSecond, "place"}},
  };
  CHECK(spec.relations[0] == expected);
  CHECK(spec.ontology.concept_of("Boeing 747") == "Airplane");
  CHECK(spec.config == TopicConfig{});
}

TEST_CASE("unicode connectives are accepted") {
  std::string text = kArrivals;
  text.replace(text.find(" and "), 5, " \xE2\x88\xA7 ");
  text.replace(text.find("!="), 2, "\xE2\x89\xA0");
  CHECK(parse_topic_spec(text) == parse_topic_spec(kArrivals));
}

TEST_CASE("empty relations section") {
  TopicSpec spec = parse_topic_spec(
      "TOPIC t\nONTOLOGY\n  CONCEPT A\nMESSAGES\n  m(x: A)\nRELATIONS\n");
  CHECK(spec.relations.empty());
  CHECK(spec.schemas.size() == 1);
}

TEST_CASE("undeclared concept is a dangling reference") {
  std::string text = "TOPIC t\nONTOLOGY\n  CONCEPT A\nMESSAGES\n  fly(what: Spaceship)\n";
  try {
    parse_topic_spec(text);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.message() == "dangling reference: Spaceship");
    CHECK(e.location().line == 5);
  }
}

TEST_CASE("ordered comparison needs a scale") {
  TopicSpec with_scale =
      parse_topic_spec(football_with("  SCALE Degree : low < average < good < excellent\n"));
  CHECK(validate_topic_spec(with_scale).empty());

  CHECK(error_of(football_with("")) == "Lt over unordered concept Degree");
}

TEST_CASE("cyclic parents are reported") {
  TopicSpec spec;
  spec.name = "t";
  spec.ontology.concepts = {{"A", "B"}, {"B", "A"}};
  auto diags = validate_topic_spec(spec);
  REQUIRE(diags.size() >= 1);
  CHECK(diags[0].is_error());
  CHECK(diags[0].message.rfind("ontology cycle", 0) == 0);

  CHECK(error_of("TOPIC t\nONTOLOGY\n  CONCEPT A : B\n  CONCEPT B : A\n").rfind(
            "ontology cycle", 0) == 0);
}

TEST_CASE("duplicate declarations") {
  CHECK(error_of("TOPIC t\nONTOLOGY\n  CONCEPT A\n  CONCEPT A\n") == "duplicate declaration: A");
  CHECK(error_of("TOPIC t\nONTOLOGY\n  CONCEPT A\nMESSAGES\n  m(x: A)\n  m(y: A)\n") ==
        "duplicate declaration: m");
  CHECK(error_of("TOPIC t\nONTOLOGY\n  CONCEPT A\nMESSAGES\n  m(x: A, x: A)\n").find(
            "duplicate declaration") == 0);
  CHECK(error_of("TOPIC t\nCONFIG\n  time_unit = 5\n  time_unit = 6\n").find(
            "duplicate declaration") == 0);
}

TEST_CASE("a relation name may span blocks with disjoint pairs") {
  TopicSpec spec = parse_topic_spec(testing::read_file(testing::fixture_path("hostages.topic")));
  int agreements = 0;
  for (const RelationSchema& r : spec.relations) agreements += r.name == "AGREEMENT";
  CHECK(agreements == 2);

  std::string clash = std::string(kArrivals) +
                      "  RELATION DISAGREEMENT : Synchronic {\n    pairs: (arrive, arrive)\n"
                      "    constraint: 1.vehicle = 2.vehicle\n  }\n";
  CHECK(error_of(clash).rfind("duplicate declaration: DISAGREEMENT", 0) == 0);
}

TEST_CASE("syntax errors carry a location") {
  try {
    parse_topic_spec("TOPIC t\nONTOLOGY\n  CONCEPT\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.location().line == 3);
    CHECK(e.location().column > 0);
  }
  CHECK_THROWS_AS(parse_topic_spec("TOPIC t\nCONFIG\n  diachronic = exact 0\n"), ParseError);
  CHECK_THROWS_AS(parse_topic_spec("TOPIC t\nCONFIG\n  time_unit = 0\n"), ParseError);
  CHECK_THROWS_AS(parse_topic_spec("TOPIC t\n\xC3\x28\n"), ParseError);
}

TEST_CASE("config values") {
  TopicSpec spec = parse_topic_spec(testing::read_file(testing::fixture_path("football.topic")));
  CHECK(spec.config.time_unit_minutes == 10080);
  CHECK(spec.config.sync_window_minutes == 0);
  CHECK(spec.config.diachronic_policy == DiachronicPolicy::exact(1));
  CHECK(spec.config.planner_mode == PlannerMode::kLinear);
}

TEST_CASE("asymmetric synchronic constraint on a homogeneous pair warns") {
  std::string text = std::string(kArrivals) +
                     "  RELATION SKEW : Synchronic {\n    pairs: (arrive, arrive)\n"
                     "    constraint: 1.vehicle isa Airplane\n  }\n";
  std::vector<Diagnostic> warnings;
  parse_topic_spec(text, &warnings);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].severity == Severity::kWarning);
  CHECK(warnings[0].location.line > 0);
}

TEST_CASE("print then parse is the identity on fixtures") {
  for (const char* name : {"hostages.topic", "football.topic", "arrivals.topic"}) {
    CAPTURE(name);
    TopicSpec spec = parse_topic_spec(testing::read_file(testing::fixture_path(name)));
    CHECK(parse_topic_spec(print_topic_spec(spec)) == spec);
  }
}

TEST_CASE("print then parse is the identity on random topics") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    CAPTURE(seed);
    testing::World w = testing::random_world(seed);
    REQUIRE_FALSE(has_errors(validate_topic_spec(w.spec)));
    CHECK(parse_topic_spec(print_topic_spec(w.spec)) == w.spec);
  }
}

TEST_CASE("accepted specs never carry errors") {
  // Random single-byte edits of a valid pack either fail to parse or parse
  // into a spec that validates cleanly.
  std::string base = testing::read_file(testing::fixture_path("hostages.topic"));
  std::mt19937_64 rng(11);
  const std::string alphabet = "abcAB(){}:,.=<>!| \n12#\"";
  int accepted = 0;
  for (int i = 0; i < 2000; ++i) {
    std::string text = base;
    int edits = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < edits; ++k) {
      std::size_t pos = rng() % text.size();
      switch (rng() % 3) {
        case 0:
          text.erase(pos, 1);
          break;
        case 1:
          text.insert(pos, 1, alphabet[rng() % alphabet.size()]);
          break;
        default:
          text[pos] = alphabet[rng() % alphabet.size()];
      }
    }
    try {
      TopicSpec spec = parse_topic_spec(text);
      CHECK_FALSE(has_errors(validate_topic_spec(spec)));
      ++accepted;
    } catch (const ParseError&) {
    }
  }
  CHECK(accepted > 0);
}

}  // namespace
}  // namespace sdrgrid
