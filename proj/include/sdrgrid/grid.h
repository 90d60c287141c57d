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

#ifndef SDRGRID_GRID_H_
#define SDRGRID_GRID_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sdrgrid/message.h"
#include "sdrgrid/relation_engine.h"
#include "sdrgrid/topic_spec.h"

namespace sdrgrid {

class GridError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// How reference times are grouped into time frames.
struct FrameConfig {
  PlannerMode mode = PlannerMode::kNonLinear;
  std::int64_t time_unit = 1440;
  std::int64_t sync_window = 0;

  static FrameConfig from(const TopicConfig& config);
  bool operator==(const FrameConfig&) const = default;
};

struct Grid {
  std::string topic;
  FrameConfig frame;
  std::map<std::string, MessageInstance> messages;
  // Sorted by (name, first, second).
  std::vector<RelationInstance> relations;

  const MessageInstance& message(const std::string& id) const;
  std::vector<MessageInstance> message_list() const;
  std::map<std::string, std::vector<std::string>> by_source() const;
  std::map<std::string, std::vector<std::string>> by_type() const;
  // Frame key -> member ids.
  std::map<Timestamp, std::vector<std::string>> by_frame() const;

  bool operator==(const Grid&) const = default;
};

// Frame key for every message. Linear mode floors reference times to the
// time unit; non-linear mode chains reference times no more than the sync
// window apart and keys each chain by its earliest time.
std::map<std::string, Timestamp> assign_frames(const Grid& grid);

// Empty when the grid is well formed.
std::vector<std::string> grid_invariant_violations(const Grid& grid);

// Throws GridError on duplicate ids or invalid messages.
Grid build_grid(std::span<const MessageInstance> msgs, const TopicSpec& spec);
Grid extend_grid(const Grid& grid, std::span<const MessageInstance> added,
                 const TopicSpec& spec);

struct GridQuery {
  std::optional<std::set<std::string>> entities;
  std::optional<std::set<std::string>> types;
  std::optional<std::set<std::string>> sources;
  std::optional<Timestamp> from;
  std::optional<Timestamp> to;
  bool universal = false;

  static GridQuery all() {
    GridQuery q;
    q.universal = true;
    return q;
  }
  bool empty() const;
};

// Throws std::invalid_argument on a query with no filters that is not
// explicitly universal.
Grid query_subgrid(const Grid& grid, const GridQuery& query);

std::string serialize_grid(const Grid& grid);
// Throws ParseError on malformed JSON and GridError, prefixed with the
// offending position, on structural problems.
Grid deserialize_grid(std::string_view text);

}  // namespace sdrgrid

#endif  // SDRGRID_GRID_H_
