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

#ifndef SDRGRID_EVAL_H_
#define SDRGRID_EVAL_H_

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include "sdrgrid/grid.h"
#include "sdrgrid/message.h"

namespace sdrgrid {

class SpecMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScoreReport {
  double precision = 0;
  double recall = 0;
  double f_measure = 0;
  std::size_t true_positives = 0;
  std::size_t predicted = 0;
  std::size_t gold = 0;

  static ScoreReport from_counts(std::size_t tp, std::size_t predicted, std::size_t gold);
  bool operator==(const ScoreReport&) const = default;
};

// Harmonic mean of p and r; 0 when both are 0.
double f_measure(double p, double r);

enum class MatchMode { kTypeOnly, kTypeAndArgs };

std::string_view match_mode_name(MatchMode mode);
std::optional<MatchMode> parse_match_mode(std::string_view text);

// One-to-one exact matching of message keys. TypeAndArgs keys are
// (type, bindings, source, ref_time); TypeOnly keys are (type, source,
// doc_id, sentence). With a spec, every message must validate against it or
// SpecMismatch is thrown.
ScoreReport score_messages(std::span<const MessageInstance> predicted,
                           std::span<const MessageInstance> gold, MatchMode mode,
                           const TopicSpec* spec = nullptr);

// Edges match when names agree and both endpoints match under `mode`.
// Throws SpecMismatch when the grids carry different topics.
ScoreReport score_relations(const Grid& predicted, const Grid& gold,
                            MatchMode mode = MatchMode::kTypeAndArgs);

std::string format_score_table(const ScoreReport& report, std::string_view label);

}  // namespace sdrgrid

#endif  // SDRGRID_EVAL_H_
