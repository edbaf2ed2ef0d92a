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

#ifndef PSI_STATS_H_
#define PSI_STATS_H_

#include <map>
#include <optional>
#include <span>
#include <string>

#include "psi/types.hpp"

namespace psi {

// Trailing window for one labelled day: messages with
// ts in [span_begin, span_end), i.e. [day-(w-1) 00:00, day+1 00:00) UTC.
// begin/end index into the corpus' ts-sorted message vector.
struct WindowSlice {
  int64_t day = 0;
  Micros span_begin = 0;
  Micros span_end = 0;
  size_t begin = 0;
  size_t end = 0;

  size_t message_count() const { return end - begin; }
};

// Day range [first, last] covered by a corpus, from min/max ts.
std::pair<int64_t, int64_t> corpus_day_range(const TeamCorpus& corpus);

// One slice per day in [first_day, last_day]. Half-open span: a message at
// span start is included, at span end excluded.
std::vector<WindowSlice> window_slices(const TeamCorpus& corpus, int64_t first_day,
                                       int64_t last_day, int window_days);

// Key of one raw component cell: analysis unit (team, team/person or
// team/group) and labelled day.
struct UnitDay {
  std::string unit;
  int64_t day = 0;

  auto operator<=>(const UnitDay&) const = default;
};

// component name -> (unit, day) -> raw value; nullopt marks MISSING.
struct ComponentMatrix {
  std::map<std::string, std::map<UnitDay, std::optional<double>>> components;

  void set(const std::string& component, UnitDay key, std::optional<double> value);
};

using ZMatrix = std::map<std::string, std::map<UnitDay, double>>;

// Pooled standardization: per component, mean and population std over all
// non-missing cells; z = (x - mean) / std. A constant component maps to all
// zeros, and MISSING cells are imputed at z = 0 (the population mean).
// A component with no values at all throws ValidationError naming it.
ZMatrix pooled_z(const ComponentMatrix& matrix);

// Lenient variant for full pipeline runs: components with no values
// standardize to all-zero z and are appended to degenerate (if given)
// instead of throwing.
ZMatrix pooled_z_lenient(const ComponentMatrix& matrix,
                         std::vector<std::string>* degenerate);

// Multiply by -1 when the component relates negatively to the indicator.
inline double reverse_score(double z, bool reversed) { return reversed ? -z : z; }

// Arithmetic mean of signed z-values.
double composite_mean(std::span<const double> signed_z);

// Gini coefficient over per-member contribution counts, zero-count members
// included: sum_i sum_j |x_i - x_j| / (2 n^2 mean). nullopt when mean is 0.
// Expects n >= 2.
std::optional<double> gini(std::span<const double> counts);

// Population standard deviation; nullopt with fewer than two values.
std::optional<double> dispersion_sd(std::span<const double> values);

double population_mean(std::span<const double> values);
double population_sd(std::span<const double> values);

}  // namespace psi

#endif  // PSI_STATS_H_
