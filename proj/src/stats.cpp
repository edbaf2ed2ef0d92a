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

#include "psi/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace psi {

std::pair<int64_t, int64_t> corpus_day_range(const TeamCorpus& corpus) {
  if (corpus.messages.empty()) {
    throw ValidationError("corpus '" + corpus.team_id + "' has no messages");
  }
  return {day_of(corpus.messages.front().ts), day_of(corpus.messages.back().ts)};
}

std::vector<WindowSlice> window_slices(const TeamCorpus& corpus, int64_t first_day,
                                       int64_t last_day, int window_days) {
  if (window_days < 1) throw ValidationError("window_days must be >= 1");
  if (first_day > last_day) throw ValidationError("window range is empty");
  std::vector<WindowSlice> slices;
  slices.reserve(static_cast<size_t>(last_day - first_day + 1));
  const auto& msgs = corpus.messages;
  auto lower = [&](Micros ts) {
    return static_cast<size_t>(
        std::lower_bound(msgs.begin(), msgs.end(), ts,
                         [](const Message& m, Micros t) { return m.ts < t; }) -
        msgs.begin());
  };
  for (int64_t day = first_day; day <= last_day; ++day) {
    WindowSlice s;
    s.day = day;
    s.span_begin = (day - window_days + 1) * kMicrosPerDay;
    s.span_end = (day + 1) * kMicrosPerDay;
    s.begin = lower(s.span_begin);
    s.end = lower(s.span_end);
    slices.push_back(s);
  }
  return slices;
}

void ComponentMatrix::set(const std::string& component, UnitDay key,
                          std::optional<double> value) {
  components[component][std::move(key)] = value;
}

namespace {

ZMatrix pooled_z_impl(const ComponentMatrix& matrix, bool lenient,
                      std::vector<std::string>* degenerate) {
  ZMatrix out;
  for (const auto& [name, cells] : matrix.components) {
    std::vector<double> values;
    values.reserve(cells.size());
    for (const auto& [key, value] : cells) {
      if (value.has_value()) values.push_back(*value);
    }
    auto& zs = out[name];
    if (values.empty()) {
      if (!lenient) throw ValidationError("component has no values: " + name);
      if (degenerate != nullptr) degenerate->push_back(name);
      for (const auto& [key, value] : cells) zs[key] = 0.0;
      continue;
    }
    const double mean = population_mean(values);
    const double sd = population_sd(values);
    for (const auto& [key, value] : cells) {
      if (!value.has_value() || sd == 0.0) {
        zs[key] = 0.0;
      } else {
        zs[key] = (*value - mean) / sd;
      }
    }
  }
  return out;
}

}  // namespace

ZMatrix pooled_z(const ComponentMatrix& matrix) {
  return pooled_z_impl(matrix, /*lenient=*/false, nullptr);
}

ZMatrix pooled_z_lenient(const ComponentMatrix& matrix,
                         std::vector<std::string>* degenerate) {
  return pooled_z_impl(matrix, /*lenient=*/true, degenerate);
}

double composite_mean(std::span<const double> signed_z) {
  if (signed_z.empty()) throw ValidationError("composite of zero components");
  double sum = 0.0;
  for (double z : signed_z) sum += z;
  return sum / static_cast<double>(signed_z.size());
}

std::optional<double> gini(std::span<const double> counts) {
  const size_t n = counts.size();
  if (n < 2) throw ValidationError("gini needs at least 2 members");
  double total = 0.0;
  for (double x : counts) total += x;
  if (total <= 0.0) return std::nullopt;
  std::vector<double> sorted(counts.begin(), counts.end());
  std::sort(sorted.begin(), sorted.end());
  // sum_{i<j} (x_j - x_i) via prefix sums; G = that / (n^2 * mean).
  double pairwise = 0.0;
  double prefix = 0.0;
  for (size_t j = 0; j < n; ++j) {
    pairwise += sorted[j] * static_cast<double>(j) - prefix;
    prefix += sorted[j];
  }
  const double mean = total / static_cast<double>(n);
  return pairwise / (static_cast<double>(n) * static_cast<double>(n) * mean);
}

double population_mean(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double population_sd(std::span<const double> values) {
  const double mean = population_mean(values);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(values.size()));
}

std::optional<double> dispersion_sd(std::span<const double> values) {
  if (values.size() < 2) return std::nullopt;
  return population_sd(values);
}

}  // namespace psi
