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

#ifndef PSI_REPORTING_H_
#define PSI_REPORTING_H_

#include <cstddef>
#include <filesystem>
#include <string>

#include "psi/indicators.hpp"

namespace psi {

// Shortest round-trip decimal form of a double; deterministic.
std::string format_value(double v);

// Number of cells to flag: ceil(q * n), guarded against floating error.
size_t flag_count(size_t n_non_missing, double q);

// Marks the flag_count smallest non-missing values of each indicator,
// ascending value order with ties broken by (team, day). Missing cells are
// never flagged.
void flag_low_quantile(IndicatorSeries& series, double q);

// CSV schema: team_id,date,facet,indicator,value,n_messages,flagged
// Rows sorted by (indicator, team_id, date); MISSING serializes as an empty
// value field; byte output is deterministic.
void write_series_csv(const IndicatorSeries& series, const std::filesystem::path& path);
std::string series_to_csv(const IndicatorSeries& series);

// JSON-lines twin with identical content and ordering.
void write_series_jsonl(const IndicatorSeries& series, const std::filesystem::path& path);
std::string series_to_jsonl(const IndicatorSeries& series);

// Reads either format (by extension: .jsonl/.ndjson, otherwise CSV).
IndicatorSeries read_series(const std::filesystem::path& path);

// One SVG per indicator, named <facet>__<indicator>.svg: rows are teams,
// columns are days, darker cells are safer, flagged cells carry a circular
// marker, missing cells render as blank gaps.
void render_heatmaps(const IndicatorSeries& series, const std::filesystem::path& out_dir);

}  // namespace psi

#endif  // PSI_REPORTING_H_
