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

#include "sdrgrid/evolution.h"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace sdrgrid {
namespace {

void require_increasing(std::span<const Timestamp> times, const char* what) {
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i - 1] < times[i])) {
      throw std::invalid_argument(std::string(what) + " is not strictly increasing at " +
                                  std::to_string(i));
    }
  }
}

std::string source_name(int i) {
  std::string name = "S";
  name += std::to_string(i + 1);
  return name;
}

std::vector<Timestamp> times_from_gaps(Timestamp start, const std::vector<std::int64_t>& gaps) {
  std::vector<Timestamp> out{start};
  for (std::int64_t g : gaps) out.push_back(out.back() + g);
  return out;
}

}  // namespace

Linearity classify_linearity(const ActivityTimeline& timeline, std::optional<std::int64_t> t) {
  if (timeline.times.empty()) throw std::invalid_argument("empty timeline");
  require_increasing(timeline.times, "timeline");
  if (t && *t <= 0) throw std::invalid_argument("time unit must be positive");

  std::vector<std::int64_t> gaps;
  for (std::size_t i = 1; i < timeline.times.size(); ++i) {
    gaps.push_back(timeline.times[i] - timeline.times[i - 1]);
  }
  std::int64_t unit = t ? *t : (gaps.empty() ? 0 : *std::min_element(gaps.begin(), gaps.end()));
  Linear linear{unit, {}};
  for (std::size_t k = 0; k < gaps.size(); ++k) {
    if (gaps[k] % unit != 0) return NonLinear{unit, k};
    linear.multipliers.push_back(gaps[k] / unit);
  }
  return linear;
}

Synchronicity classify_synchronicity(std::span<const ReportStream> streams,
                                     std::int64_t tolerance) {
  if (streams.size() < 2) throw std::invalid_argument("need at least two streams");
  if (tolerance < 0) throw std::invalid_argument("negative tolerance");
  for (const ReportStream& s : streams) require_increasing(s.pub_times, "stream");

  auto witness = [&](AsyncWitness::Kind kind, std::size_t i, std::size_t j, std::size_t idx) {
    return Asynchronous{{kind, i, j, streams[i].source, streams[j].source, idx}};
  };
  for (std::size_t i = 0; i < streams.size(); ++i) {
    for (std::size_t j = i + 1; j < streams.size(); ++j) {
      std::size_t a = streams[i].pub_times.size();
      std::size_t b = streams[j].pub_times.size();
      if (a != b) return witness(AsyncWitness::Kind::kLength, i, j, std::min(a, b));
    }
  }
  for (std::size_t i = 0; i < streams.size(); ++i) {
    for (std::size_t j = i + 1; j < streams.size(); ++j) {
      for (std::size_t k = 0; k < streams[i].pub_times.size(); ++k) {
        if (std::abs(streams[i].pub_times[k] - streams[j].pub_times[k]) > tolerance) {
          return witness(AsyncWitness::Kind::kTime, i, j, k);
        }
      }
    }
  }
  return Synchronous{};
}

std::string_view regime_name(Regime regime) {
  switch (regime) {
    case Regime::kLinearSync:
      return "linear-sync";
    case Regime::kLinearSyncSkips:
      return "linear-sync-skips";
    case Regime::kNonLinearAsync:
      return "nonlinear-async";
  }
  return "";
}

std::optional<Regime> parse_regime(std::string_view text) {
  for (Regime r : {Regime::kLinearSync, Regime::kLinearSyncSkips, Regime::kNonLinearAsync}) {
    if (regime_name(r) == text) return r;
  }
  return std::nullopt;
}

GeneratedStreams generate_stream(Regime regime, const GeneratorParams& params,
                                 std::uint64_t seed) {
  if (params.sources < 1) throw std::invalid_argument("need at least one source");
  if (params.length < 1) throw std::invalid_argument("need at least one activity");
  if (params.unit < 1) throw std::invalid_argument("time unit must be positive");
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  const std::size_t gap_count = static_cast<std::size_t>(params.length - 1);

  GeneratedStreams out;
  std::vector<std::int64_t> gaps(gap_count);
  switch (regime) {
    case Regime::kLinearSync:
      std::fill(gaps.begin(), gaps.end(), params.unit);
      break;
    case Regime::kLinearSyncSkips: {
      if (params.length < 3) throw std::invalid_argument("skips need at least three activities");
      std::vector<std::int64_t> m(gap_count);
      for (auto& x : m) x = uniform(1, 3);
      std::size_t one = static_cast<std::size_t>(uniform(0, gap_count - 1));
      std::size_t skip = static_cast<std::size_t>(uniform(0, gap_count - 2));
      if (skip >= one) ++skip;
      m[one] = 1;
      m[skip] = std::max<std::int64_t>(m[skip], 2);
      for (std::size_t k = 0; k < gap_count; ++k) gaps[k] = m[k] * params.unit;
      break;
    }
    case Regime::kNonLinearAsync: {
      if (params.sources < 2) throw std::invalid_argument("asynchrony needs two sources");
      if (params.length < 3) throw std::invalid_argument("need at least three activities");
      if (params.min_reports < 1 || params.min_reports > params.max_reports ||
          params.max_reports > params.length) {
        throw std::invalid_argument("report counts must satisfy 1 <= min <= max <= length");
      }
      for (auto& g : gaps) g = uniform(2, std::max<std::int64_t>(2, params.unit));
      std::int64_t min_gap = *std::min_element(gaps.begin(), gaps.end());
      bool all_multiples = std::all_of(gaps.begin(), gaps.end(),
                                       [&](std::int64_t g) { return g % min_gap == 0; });
      if (all_multiples) {
        // Bump the last gap that is not the minimum, or the last gap when all
        // are equal. The smallest gap stays at least 2, so the bump breaks
        // divisibility.
        std::size_t k = gap_count - 1;
        for (std::size_t i = gap_count; i-- > 0;) {
          if (gaps[i] != min_gap) {
            k = i;
            break;
          }
        }
        gaps[k] += 1;
      }
      break;
    }
  }
  out.timeline.times = times_from_gaps(params.start, gaps);

  for (int s = 0; s < params.sources; ++s) {
    ReportStream stream{source_name(s), {}};
    if (regime == Regime::kNonLinearAsync) {
      auto count = static_cast<std::size_t>(uniform(params.min_reports, params.max_reports));
      std::vector<std::size_t> idx(out.timeline.times.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::shuffle(idx.begin(), idx.end(), rng);
      idx.resize(count);
      std::sort(idx.begin(), idx.end());
      for (std::size_t i : idx) stream.pub_times.push_back(out.timeline.times[i]);
    } else {
      stream.pub_times = out.timeline.times;
    }
    out.streams.push_back(std::move(stream));
  }
  if (regime == Regime::kNonLinearAsync &&
      std::holds_alternative<Synchronous>(classify_synchronicity(out.streams))) {
    auto& times = out.streams[1].pub_times;
    if (times.size() > 1) {
      times.pop_back();
    } else {
      times.front() = times.front() == out.timeline.times.front() ? out.timeline.times.back()
                                                                  : out.timeline.times.front();
    }
  }
  return out;
}

}  // namespace sdrgrid
