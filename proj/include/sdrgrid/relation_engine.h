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

#ifndef SDRGRID_RELATION_ENGINE_H_
#define SDRGRID_RELATION_ENGINE_H_

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sdrgrid/message.h"
#include "sdrgrid/topic_spec.h"

namespace sdrgrid {

struct RelationInstance {
  std::string name;
  RelationType type = RelationType::kSynchronic;
  std::string first;
  std::string second;

  auto operator<=>(const RelationInstance&) const = default;
};

using MessagePair = std::pair<const MessageInstance*, const MessageInstance*>;

// Pairs from different sources whose reference times are at most `window`
// minutes apart, each ordered so that first.source < second.source.
std::vector<MessagePair> synchronic_candidates(std::span<const MessageInstance> msgs,
                                               std::int64_t window);

// Same-source pairs (earlier, later) by reference time with distinct
// publication times, filtered by the distance policy.
std::vector<MessagePair> diachronic_candidates(std::span<const MessageInstance> msgs,
                                               const DiachronicPolicy& policy,
                                               std::int64_t time_unit);

bool synchronic_gate(const MessageInstance& a, const MessageInstance& b,
                     std::int64_t window);
bool diachronic_gate(const MessageInstance& a, const MessageInstance& b,
                     const DiachronicPolicy& policy, std::int64_t time_unit);

// Evaluates the schema constraint with `first` on side 1 and `second` on
// side 2. Types are not checked here.
bool evaluate_constraints(const MessageInstance& first, const MessageInstance& second,
                          const RelationSchema& schema, const TopicSpec& spec);

// True when the gated pair (in candidate order) instantiates `schema`.
// Synchronic schemas also try the swapped role assignment.
bool relation_holds(const MessageInstance& first, const MessageInstance& second,
                    const RelationSchema& schema, const TopicSpec& spec);

// Sorted by (name, first, second), without duplicates.
std::vector<RelationInstance> extract_relations(std::span<const MessageInstance> msgs,
                                                const TopicSpec& spec);

// Relations among old ∪ added that involve at least one added message.
std::vector<RelationInstance> extract_new_relations(
    std::span<const MessageInstance> old_msgs,
    std::span<const MessageInstance> added, const TopicSpec& spec);

}  // namespace sdrgrid

#endif  // SDRGRID_RELATION_ENGINE_H_
