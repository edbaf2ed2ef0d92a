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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "test_util.hpp"

using namespace psi;

namespace {

// O(n^2) pairwise oracle for the Gini coefficient.
std::optional<double> gini_oracle(const std::vector<double>& xs) {
  const size_t n = xs.size();
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(n);
  if (mean <= 0.0) return std::nullopt;
  double total = 0.0;
  for (double a : xs) {
    for (double b : xs) total += std::abs(a - b);
  }
  return total / (2.0 * static_cast<double>(n) * static_cast<double>(n) * mean);
}

TeamCorpus corpus_with_days(const std::vector<double>& ts_seconds) {
  TeamCorpus corpus;
  corpus.team_id = "t";
  corpus.roster = test::simple_roster({"a"});
  for (double s : ts_seconds) corpus.messages.push_back(test::make_message(s, "a", "x"));
  return corpus;
}

}  // namespace

TEST_CASE("window spans are half open") {
  const double day = 86400.0;
  // probe messages exactly at span start and span end of day 9's window
  TeamCorpus corpus = corpus_with_days({3 * day, 3 * day + 1, 10 * day - 1, 10 * day});
  const auto slices = window_slices(corpus, 9, 10, 7);
  REQUIRE(slices.size() == 2);
  const WindowSlice& day9 = slices[0];
  CHECK(day9.span_begin == static_cast<Micros>(3 * day * 1e6));
  // ts == span start included; the two middle messages; ts == span end excluded
  CHECK(day9.message_count() == 3);
  const WindowSlice& day10 = slices[1];
  CHECK(day10.message_count() == 2);  // 10*day-1 and 10*day
}

TEST_CASE("first emitted slice is the seventh day") {
  // corpus running from day 0 through day 79 (80 days)
  std::vector<double> ts;
  for (int d = 0; d < 80; ++d) ts.push_back(d * 86400.0 + 100.0);
  TeamCorpus corpus = corpus_with_days(ts);
  const auto [first, last] = corpus_day_range(corpus);
  CHECK(first == 0);
  CHECK(last == 79);
  const auto slices = window_slices(corpus, first + 6, last, 7);
  CHECK(slices.size() == 74);
  CHECK(slices.front().day == 6);   // seventh day of the corpus
  CHECK(slices.back().day == 79);
}

TEST_CASE("consecutive slices overlap by six days") {
  std::vector<double> ts;
  for (int d = 0; d < 20; ++d) {
    for (int k = 0; k < 3; ++k) ts.push_back(d * 86400.0 + 1000.0 * (k + 1));
  }
  TeamCorpus corpus = corpus_with_days(ts);
  const auto slices = window_slices(corpus, 6, 19, 7);
  for (size_t i = 1; i < slices.size(); ++i) {
    CHECK(slices[i].span_begin - slices[i - 1].span_begin == kMicrosPerDay);
    CHECK(slices[i].span_end - slices[i - 1].span_end == kMicrosPerDay);
    // six of the seven days are shared
    CHECK(slices[i - 1].span_end - slices[i].span_begin == 6 * kMicrosPerDay);
  }
}

TEST_CASE("pooled z of a three-point component") {
  ComponentMatrix m;
  m.set("c", {"u1", 0}, 1.0);
  m.set("c", {"u2", 0}, 2.0);
  m.set("c", {"u3", 0}, 3.0);
  const auto z = pooled_z(m);
  CHECK(z.at("c").at({"u1", 0}) == doctest::Approx(-1.224744871391589).epsilon(1e-12));
  CHECK(z.at("c").at({"u2", 0}) == doctest::Approx(0.0));
  CHECK(z.at("c").at({"u3", 0}) == doctest::Approx(1.224744871391589).epsilon(1e-12));
}

TEST_CASE("constant component standardizes to zeros") {
  ComponentMatrix m;
  m.set("c", {"u1", 0}, 5.0);
  m.set("c", {"u2", 0}, 5.0);
  m.set("c", {"u3", 0}, 5.0);
  const auto z = pooled_z(m);
  for (const auto& [key, value] : z.at("c")) CHECK(value == 0.0);
}

TEST_CASE("missing cells impute to zero") {
  ComponentMatrix m;
  m.set("c", {"u1", 0}, 1.0);
  m.set("c", {"u2", 0}, std::nullopt);
  m.set("c", {"u3", 0}, 3.0);
  const auto z = pooled_z(m);
  CHECK(z.at("c").at({"u2", 0}) == 0.0);
  CHECK(z.at("c").at({"u1", 0}) == doctest::Approx(-1.0));
  CHECK(z.at("c").at({"u3", 0}) == doctest::Approx(1.0));
}

TEST_CASE("entirely missing component errors by name") {
  ComponentMatrix m;
  m.set("ghost", {"u1", 0}, std::nullopt);
  CHECK_THROWS_WITH_AS(pooled_z(m), doctest::Contains("ghost"), ValidationError);
  std::vector<std::string> degenerate;
  const auto z = pooled_z_lenient(m, &degenerate);
  CHECK(z.at("ghost").at({"u1", 0}) == 0.0);
  CHECK(degenerate == std::vector<std::string>{"ghost"});
}

TEST_CASE("standardized components have mean 0 and population std 1") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-50.0, 200.0);
  ComponentMatrix m;
  for (int i = 0; i < 400; ++i) {
    m.set("c", {"u" + std::to_string(i % 7), i / 7}, dist(rng));
  }
  const auto z = pooled_z(m);
  std::vector<double> zs;
  for (const auto& [key, value] : z.at("c")) zs.push_back(value);
  CHECK(std::abs(population_mean(zs)) < 1e-9);
  CHECK(std::abs(population_sd(zs) - 1.0) < 1e-9);
}

TEST_CASE("reverse scoring") {
  CHECK(reverse_score(0.7, true) == -0.7);
  CHECK(reverse_score(0.7, false) == 0.7);
  CHECK(reverse_score(reverse_score(0.7, true), true) == 0.7);
}

TEST_CASE("composite mean") {
  const double parts[] = {0.5, 0.3};
  CHECK(composite_mean(parts) == doctest::Approx(0.4));
  const double single[] = {-1.5};
  CHECK(composite_mean(single) == -1.5);
  const double imputed[] = {0.0, 0.0, 0.0};
  CHECK(composite_mean(imputed) == 0.0);
}

TEST_CASE("gini identities") {
  const std::vector<double> equal = {10, 10, 10, 10};
  CHECK(*gini(equal) == 0.0);
  const std::vector<double> solo = {4, 0, 0, 0};
  CHECK(*gini(solo) == 0.75);
  const std::vector<double> zeros = {0, 0, 0};
  CHECK_FALSE(gini(zeros).has_value());
}

TEST_CASE("gini matches the pairwise oracle on random vectors") {
  std::mt19937 rng(3);
  for (int round = 0; round < 1000; ++round) {
    const size_t n = 2 + rng() % 7;  // n <= 8
    std::vector<double> xs(n);
    for (double& x : xs) x = static_cast<double>(rng() % 21);  // values <= 20
    const auto fast = gini(xs);
    const auto slow = gini_oracle(xs);
    REQUIRE(fast.has_value() == slow.has_value());
    if (fast.has_value()) CHECK(*fast == doctest::Approx(*slow).epsilon(1e-12));
  }
}

TEST_CASE("gini is scale and permutation invariant") {
  std::mt19937 rng(5);
  for (int round = 0; round < 200; ++round) {
    std::vector<double> xs(4 + rng() % 4);
    for (double& x : xs) x = static_cast<double>(rng() % 30);
    if (!gini(xs).has_value()) continue;
    const double base = *gini(xs);
    std::vector<double> scaled = xs;
    for (double& x : scaled) x *= 7.0;
    CHECK(*gini(scaled) == doctest::Approx(base).epsilon(1e-12));
    std::vector<double> shuffled = xs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(*gini(shuffled) == doctest::Approx(base).epsilon(1e-12));
    // 1 - 1/n bounds every vector from above
    CHECK(base <= 1.0 - 1.0 / static_cast<double>(xs.size()) + 1e-12);
  }
}

TEST_CASE("dispersion standard deviation") {
  const std::vector<double> flat = {1, 1, 1};
  CHECK(*dispersion_sd(flat) == 0.0);
  const std::vector<double> pair = {0, 2};
  CHECK(*dispersion_sd(pair) == doctest::Approx(1.0));
  const std::vector<double> one = {42};
  CHECK_FALSE(dispersion_sd(one).has_value());
  const std::vector<double> a = {3, 1, 4, 1, 5};
  std::vector<double> b = {5, 1, 4, 3, 1};
  CHECK(*dispersion_sd(a) == doctest::Approx(*dispersion_sd(b)).epsilon(1e-12));
}
