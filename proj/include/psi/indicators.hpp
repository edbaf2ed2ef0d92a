// Copyright 2026 The psi Authors.
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

#ifndef PSI_INDICATORS_H_
#define PSI_INDICATORS_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "psi/lexicon.hpp"
#include "psi/stats.hpp"
#include "psi/types.hpp"

namespace psi {

enum class Facet { kCommunication, kCooperation, kCulture, kLeadership, kLearning };

std::string_view facet_name(Facet f);  // lowercase label used in files

// How an indicator's daily score is assembled.
enum class Level {
  kTeam,              // mean of signed pooled z over team-window components
  kPersonDispersion,  // per-person signed composite, score = -population SD
  kGroupGap,          // non-PM group composite minus PM group composite
  kDirect,            // value used as-is (already in [0, 1])
};

struct ComponentRef {
  std::string name;
  bool reversed = false;  // multiply the z-score by -1
};

// One row of the indicator catalog. Scores are emitted PS-aligned
// (higher = safer); originally negative constructs carry a "no_" name.
struct IndicatorSpec {
  std::string name;
  Facet facet;
  bool negative_construct = false;
  Level level = Level::kTeam;
  std::vector<ComponentRef> components;
};

// The full 15-indicator catalog, three per facet.
const std::vector<IndicatorSpec>& indicator_table();

const IndicatorSpec* find_indicator(std::string_view name);

// Machine-readable catalog (name, facet, orientation, level, components,
// signs) for documentation and tests.
std::string indicator_table_json();

struct IndicatorScore {
  std::string team_id;
  int64_t day = 0;
  std::string indicator;
  std::optional<double> value;  // nullopt marks MISSING (rendered as a gap)
  int n_messages = 0;
  bool flagged = false;
};

struct IndicatorSeries {
  std::vector<IndicatorScore> scores;
};

struct ComputeOptions {
  int window_days = 7;
};

struct ComputeDiagnostics {
  // component names with no defined value anywhere in the run
  std::vector<std::string> degenerate_components;
  std::map<std::string, int> missing_by_indicator;
};

// Full three-phase pipeline: raw component extraction per window, pooled
// standardization across all teams and days of the run, then composite
// assembly. One score per (team, day, indicator) from the window_days-th
// day of each corpus onward. Deterministic.
IndicatorSeries compute_all(const std::vector<TeamCorpus>& corpora, const Lexicon& lexicon,
                            const ComputeOptions& options = {},
                            ComputeDiagnostics* diagnostics = nullptr);

// Mean over thread parents whose first reply falls inside the window of
// (first_reply.ts - parent.ts), in seconds. nullopt when no thread
// qualifies. `messages` is the full corpus (replies may precede the window's
// parents in other windows); the window is [span_begin, span_end).
std::optional<double> mean_time_to_first_reply(const std::vector<Message>& messages,
                                               Micros span_begin, Micros span_end);

std::map<std::string, int> missing_tally(const IndicatorSeries& series);

}  // namespace psi

#endif  // PSI_INDICATORS_H_
