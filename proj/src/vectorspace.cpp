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

#include "psi/vectorspace.hpp"

#include <algorithm>
#include <cmath>

namespace psi {

TermVector embed(const std::vector<std::string>& tokens) {
  TermVector v;
  for (const std::string& t : tokens) v[t] += 1.0;
  return v;
}

double dot(const TermVector& a, const TermVector& b) {
  const TermVector& small = a.size() <= b.size() ? a : b;
  const TermVector& large = a.size() <= b.size() ? b : a;
  double sum = 0.0;
  for (const auto& [term, w] : small) {
    const auto it = large.find(term);
    if (it != large.end()) sum += w * it->second;
  }
  return sum;
}

double norm(const TermVector& v) {
  double ss = 0.0;
  for (const auto& [term, w] : v) ss += w * w;
  return std::sqrt(ss);
}

double cosine(const TermVector& a, const TermVector& b) {
  if (a.empty() || b.empty()) return 0.0;
  const double d = dot(a, b) / (norm(a) * norm(b));
  return std::clamp(d, 0.0, 1.0);
}

std::optional<double> mimicry_score(std::span<const StreamEntry> stream) {
  const StreamEntry* prev = nullptr;
  double sum = 0.0;
  int pairs = 0;
  for (const StreamEntry& cur : stream) {
    if (cur.vec == nullptr || cur.vec->empty()) continue;
    if (prev != nullptr && *prev->author != *cur.author) {
      sum += cosine(*prev->vec, *cur.vec);
      ++pairs;
    }
    prev = &cur;
  }
  if (pairs == 0) return std::nullopt;
  return sum / pairs;
}

std::optional<double> forward_flow(std::span<const StreamEntry> stream) {
  // Running sum of preceding vectors stands in for their centroid: cosine is
  // invariant under the 1/n scaling.
  TermVector sum;
  double sum_sq = 0.0;
  int used = 0;
  double dist_total = 0.0;
  int dists = 0;
  for (const StreamEntry& cur : stream) {
    if (cur.vec == nullptr || cur.vec->empty()) continue;
    const TermVector& v = *cur.vec;
    double v_sq = 0.0;
    for (const auto& [term, w] : v) v_sq += w * w;
    const double d = dot(v, sum);
    if (used >= 1) {
      const double cos = sum_sq > 0.0
                             ? std::clamp(d / std::sqrt(v_sq * sum_sq), 0.0, 1.0)
                             : 0.0;
      dist_total += 1.0 - cos;
      ++dists;
    }
    for (const auto& [term, w] : v) sum[term] += w;
    sum_sq += 2.0 * d + v_sq;
    ++used;
  }
  if (used < 2) return std::nullopt;
  return dist_total / dists;
}

}  // namespace psi
