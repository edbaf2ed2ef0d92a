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

#ifndef PSI_VECTORSPACE_H_
#define PSI_VECTORSPACE_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace psi {

// Deterministic bag-of-words message embedding: term -> raw count. Both
// similarity measures are scale-invariant, so no normalization is stored.
// Ordered map keeps floating-point accumulation order reproducible.
using TermVector = std::map<std::string, double>;

TermVector embed(const std::vector<std::string>& tokens);

double dot(const TermVector& a, const TermVector& b);
double norm(const TermVector& v);

// Cosine similarity clamped to [0, 1]; zero when either vector is empty.
double cosine(const TermVector& a, const TermVector& b);

// One message in a team-wide chronological stream.
struct StreamEntry {
  const TermVector* vec = nullptr;
  const std::string* author = nullptr;
};

// Mean cosine similarity between each message and its nearest preceding
// different-author message. Token-empty messages are skipped. nullopt when
// no valid pair exists.
std::optional<double> mimicry_score(std::span<const StreamEntry> stream);

// Mean over i >= 2 of 1 - cosine(e_i, centroid(e_1..e_{i-1})), skipping
// token-empty messages. Values near 0 mean static topics; near 1, high
// topic evolution. nullopt with fewer than two usable messages.
std::optional<double> forward_flow(std::span<const StreamEntry> stream);

}  // namespace psi

#endif  // PSI_VECTORSPACE_H_
