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

#ifndef PSI_SYNTH_H_
#define PSI_SYNTH_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "psi/types.hpp"

namespace psi {

// Deterministic multi-team corpus generator with plantable properties.
// Per-team knobs accept a scalar (broadcast to every team) or one value per
// team in the profile JSON; varying a knob across teams inside one run is
// how monotonicity tests plant cross-team differences, since pooled
// standardization re-centres every separate run.
struct SynthProfile {
  uint64_t seed = 1;
  int teams = 6;
  int members_per_team = 16;
  int days = 84;
  int tokens_per_message = 12;
  int64_t start_day = 20094;  // 2025-01-06

  std::vector<double> msgs_per_member_per_week{33.0};
  std::vector<double> participation_skew{0.0};   // 0 = uniform, geometric decay otherwise
  std::vector<double> reply_latency_mean{1800};  // seconds
  std::vector<double> thread_probability{0.25};
  std::map<std::string, std::vector<double>> category_rates;  // injection prob per token

  static SynthProfile from_json_file(const std::filesystem::path& path);
  static SynthProfile from_json_text(const std::string& text, const std::string& where);

  // Knob value for one team (broadcasts single-element vectors).
  double knob(const std::vector<double>& values, int team) const;

  void validate() const;  // throws ValidationError
};

// Default per-token injection rates used when the profile defines none.
std::map<std::string, std::vector<double>> default_category_rates();

// Words the generator draws from for one category; all of them match the
// bundled demonstration lexicon's category.
const std::vector<std::string>& injection_words(const std::string& category);

// Category-free filler vocabulary (matches no lexicon category).
const std::vector<std::string>& neutral_words();

// Categories the generator can inject.
std::vector<std::string> injectable_categories();

// Writes messages/<team_id>.jsonl (normalized format), roles.csv,
// exclude.txt and profile.json under out_dir. Deterministic per seed.
void generate_corpus(const SynthProfile& profile, const std::filesystem::path& out_dir);

}  // namespace psi

#endif  // PSI_SYNTH_H_
