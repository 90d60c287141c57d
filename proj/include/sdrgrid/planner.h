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

#ifndef SDRGRID_PLANNER_H_
#define SDRGRID_PLANNER_H_

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sdrgrid/diagnostic.h"
#include "sdrgrid/grid.h"
#include "sdrgrid/message.h"
#include "sdrgrid/topic_spec.h"

namespace sdrgrid {

enum class Consensus { kAllSources, kSomeSources, kSingleSource, kConflicting };

std::string_view consensus_name(Consensus c);
std::optional<Consensus> parse_consensus(std::string_view text);

// Relation families are recognized by name.
bool is_agreement_relation(std::string_view name);
bool is_conflict_relation(std::string_view name);

struct MessageCluster {
  // Sorted ids.
  std::vector<std::string> messages;
  Consensus consensus = Consensus::kSingleSource;

  bool operator==(const MessageCluster&) const = default;
};

struct PlanFrame {
  Timestamp bucket;
  std::vector<MessageCluster> clusters;

  bool operator==(const PlanFrame&) const = default;
};

struct Connective {
  std::size_t from = 0;
  std::size_t to = 0;
  std::string relation;

  auto operator<=>(const Connective&) const = default;
};

struct DocumentPlan {
  std::string topic;
  std::vector<PlanFrame> frames;
  std::vector<Connective> connectives;
  // Messages referenced by the frames, so a plan can be realized on its own.
  std::map<std::string, MessageInstance> messages;

  bool operator==(const DocumentPlan&) const = default;
};

// Frames follow the grid's frame assignment under `mode`; clusters are the
// synchronic components inside a frame ordered by (type, first id);
// connectives lift diachronic edges between distinct frames.
DocumentPlan build_document_plan(const Grid& grid, PlannerMode mode);
DocumentPlan build_document_plan(const Grid& grid);

std::string serialize_plan(const DocumentPlan& plan);
DocumentPlan deserialize_plan(std::string_view text);

class MissingTemplate : public std::runtime_error {
 public:
  explicit MissingTemplate(std::string type)
      : std::runtime_error("no template for message type " + type), type_(std::move(type)) {}
  const std::string& type() const { return type_; }

 private:
  std::string type_;
};

// Keyed text file:
//
//   [messages]
//   negotiate = the negotiations between {with_whom} and {who} started at {time}
//   [connectives]
//   CONTINUATION = The negotiations continued
//   [labels]
//   negotiating_team = the negotiating team
//   [consensus]
//   all = According to all sources,
//
// Slots name message arguments or one of {time}, {date} and {source}.
struct TemplatePack {
  std::map<std::string, std::string> messages;
  std::map<std::string, std::string> connectives;
  std::map<std::string, std::string> labels;
  std::map<Consensus, std::string> consensus;

  static TemplatePack parse(std::string_view text);
  bool operator==(const TemplatePack&) const = default;
};

// Unknown message types, relations and slots.
std::vector<Diagnostic> validate_templates(const TemplatePack& pack, const TopicSpec& spec);

// One line per frame. Throws MissingTemplate for a message type without a
// template.
std::string realize(const DocumentPlan& plan, const TemplatePack& templates);

}  // namespace sdrgrid

#endif  // SDRGRID_PLANNER_H_
