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

#include "psi/indicators.hpp"

#include <doctest.h>

#include <set>

#include "test_util.hpp"

using namespace psi;

namespace {

// The published catalog: facet, indicator, orientation, level and the exact
// component list with reverse-scoring. The implementation table must match
// row for row.
struct CatalogRow {
  const char* facet;
  const char* name;
  bool negative;
  Level level;
  std::vector<std::pair<const char*, bool>> components;  // (name, reversed)
};

const std::vector<CatalogRow>& catalog() {
  static const std::vector<CatalogRow> rows = {
      {"communication", "no_delay_and_discreetness", true, Level::kTeam,
       {{"mean_time_to_first_reply", true}, {"thread_count", false}, {"reply_count", false}}},
      {"communication", "collective_decision_making", false, Level::kTeam,
       {{"causation", false},
        {"negation", false},
        {"insight", false},
        {"auxiliary_verb", false},
        {"article", false},
        {"differentiation", false},
        {"personal_pronoun", false}}},
      {"communication", "turn_taking", false, Level::kDirect,
       {{"gini_message_counts", false}, {"gini_word_counts", false}}},
      {"cooperation", "initiative", false, Level::kTeam,
       {{"verb", false}, {"word_count", true}, {"time_words", true}}},
      {"cooperation", "no_low_effort", true, Level::kTeam,
       {{"personal_pronoun", true}, {"assent", false}, {"definite_article", false}}},
      {"cooperation", "dedication", false, Level::kTeam,
       {{"positive_emotion", false}, {"inhibition", true}}},
      {"culture", "community", false, Level::kTeam,
       {{"mimicry", false}, {"word_count", false}, {"we_pronoun", true}}},
      {"culture", "no_blame", false, Level::kTeam,
       {{"positive_emotion", false}, {"causation", false}}},
      {"culture", "no_fear", true, Level::kTeam,
       {{"word_count", false},
        {"we_pronoun", false},
        {"you_pronoun", false},
        {"certainty", false},
        {"i_pronoun", true}}},
      {"leadership", "no_overwhelmed_leaders", true, Level::kGroupGap,
       {{"no_low_effort_gap", false}}},
      {"leadership", "shared_leadership", false, Level::kPersonDispersion,
       {{"auxiliary_verb", true},
        {"number", false},
        {"affiliation", false},
        {"quote_freq", true}}},
      {"leadership", "no_social_hierarchy", true, Level::kPersonDispersion,
       {{"word_count", false},
        {"tone", false},
        {"anger", true},
        {"tentative", true},
        {"filler", true}}},
      {"learning", "embrace_critiques", false, Level::kTeam,
       {{"word_count", false}, {"exclusive", false}}},
      {"learning", "adapt_and_improve", false, Level::kDirect, {{"forward_flow", false}}},
      {"learning", "embrace_mistakes", false, Level::kTeam,
       {{"long_word_freq", true},
        {"present_tense_verb", false},
        {"discrepancy", false},
        {"i_pronoun", false},
        {"article", true}}},
  };
  return rows;
}

// Normalized corpus builder: every call appends one message at an absolute
// second offset.
struct CorpusBuilder {
  TeamCorpus corpus;

  explicit CorpusBuilder(std::string team_id, std::vector<Teammate> roster) {
    corpus.team_id = std::move(team_id);
    corpus.roster = std::move(roster);
  }
  CorpusBuilder& say(double ts_s, const std::string& who, const std::string& text) {
    corpus.messages.push_back(test::make_message(ts_s, who, text));
    return *this;
  }
  CorpusBuilder& reply(double ts_s, const std::string& who, const std::string& text,
                       double root_s) {
    Message m = test::make_message(ts_s, who, text);
    m.thread_root = static_cast<Micros>(root_s * 1e6 + 0.5);
    corpus.messages.push_back(std::move(m));
    return *this;
  }
  TeamCorpus build() {
    std::sort(corpus.messages.begin(), corpus.messages.end(),
              [](const Message& a, const Message& b) { return a.ts < b.ts; });
    return corpus;
  }
};

double day_s(int day) { return day * 86400.0; }

// Eight-day two-member corpus with enough text for every window; callers
// overlay extra traffic before build().
CorpusBuilder base_team(const std::string& team_id) {
  CorpusBuilder b(team_id, test::simple_roster({team_id + "_pm", team_id + "_m2"}, 1));
  for (int d = 0; d < 8; ++d) {
    b.say(day_s(d) + 3600, team_id + "_pm", "we will fix the servo bracket today");
    b.say(day_s(d) + 7200, team_id + "_m2", "sure the gasket looks great to me");
  }
  return b;
}

const IndicatorScore& score_of(const IndicatorSeries& series, const std::string& team,
                               int64_t day, const std::string& indicator) {
  for (const IndicatorScore& s : series.scores) {
    if (s.team_id == team && s.day == day && s.indicator == indicator) return s;
  }
  REQUIRE_MESSAGE(false, "score not found: " + team + " " + indicator);
  static IndicatorScore dummy;
  return dummy;
}

}  // namespace

TEST_CASE("catalog covers all fifteen indicators, three per facet") {
  const auto& table = indicator_table();
  REQUIRE(table.size() == 15);
  std::map<std::string, int> per_facet;
  std::set<std::string> names;
  for (const IndicatorSpec& spec : table) {
    per_facet[std::string(facet_name(spec.facet))]++;
    CHECK(names.insert(spec.name).second);
  }
  REQUIRE(per_facet.size() == 5);
  for (const auto& [facet, count] : per_facet) CHECK(count == 3);
}

TEST_CASE("catalog rows match the published component lists and stars") {
  for (const CatalogRow& row : catalog()) {
    const IndicatorSpec* spec = find_indicator(row.name);
    REQUIRE_MESSAGE(spec != nullptr, row.name);
    CHECK(facet_name(spec->facet) == row.facet);
    CHECK(spec->negative_construct == row.negative);
    CHECK(spec->level == row.level);
    REQUIRE_MESSAGE(spec->components.size() == row.components.size(), row.name);
    for (size_t i = 0; i < row.components.size(); ++i) {
      CHECK(spec->components[i].name == row.components[i].first);
      CHECK_MESSAGE(spec->components[i].reversed == row.components[i].second,
                    row.name << "/" << row.components[i].first);
    }
  }
}

TEST_CASE("catalog json lists every row") {
  const std::string json = indicator_table_json();
  for (const CatalogRow& row : catalog()) {
    CHECK(json.find(row.name) != std::string::npos);
  }
}

TEST_CASE("mean time to first reply") {
  SUBCASE("uses the first reply only") {
    std::vector<Message> msgs;
    Message parent = test::make_message(100.0, "a", "q");
    parent.thread_root = parent.ts;
    msgs.push_back(parent);
    Message r1 = test::make_message(160.0, "b", "a1");
    r1.thread_root = parent.ts;
    msgs.push_back(r1);
    Message r2 = test::make_message(400.0, "c", "a2");
    r2.thread_root = parent.ts;
    msgs.push_back(r2);
    const auto mean = mean_time_to_first_reply(msgs, 0, 1000 * kMicrosPerSecond);
    REQUIRE(mean.has_value());
    CHECK(*mean == doctest::Approx(60.0));
  }
  SUBCASE("averages across qualifying threads") {
    std::vector<Message> msgs;
    Message r1 = test::make_message(160.0, "b", "x");
    r1.thread_root = 100 * kMicrosPerSecond;
    Message r2 = test::make_message(680.0, "b", "y");
    r2.thread_root = 500 * kMicrosPerSecond;
    msgs.push_back(r1);
    msgs.push_back(r2);
    const auto mean = mean_time_to_first_reply(msgs, 0, 1000 * kMicrosPerSecond);
    REQUIRE(mean.has_value());
    CHECK(*mean == doctest::Approx(120.0));
  }
  SUBCASE("no replies in window is missing") {
    std::vector<Message> msgs = {test::make_message(100.0, "a", "hello")};
    CHECK_FALSE(mean_time_to_first_reply(msgs, 0, 1000 * kMicrosPerSecond).has_value());
  }
  SUBCASE("first reply outside the window disqualifies the thread") {
    std::vector<Message> msgs;
    Message r1 = test::make_message(160.0, "b", "x");
    r1.thread_root = 100 * kMicrosPerSecond;
    Message r2 = test::make_message(2000.0, "c", "y");
    r2.thread_root = 100 * kMicrosPerSecond;
    msgs.push_back(r1);
    msgs.push_back(r2);
    // window sees only the second reply
    CHECK_FALSE(
        mean_time_to_first_reply(msgs, 1000 * kMicrosPerSecond, 3000 * kMicrosPerSecond)
            .has_value());
  }
}

TEST_CASE("turn taking identities through the pipeline") {
  const Lexicon& lex = test::demo_lexicon();
  SUBCASE("equal contributions give exactly 1") {
    CorpusBuilder b("t", test::simple_roster({"a", "b", "c", "d"}, 1));
    for (int d = 0; d < 7; ++d) {
      for (const char* who : {"a", "b", "c", "d"}) {
        b.say(day_s(d) + 3600 + (who[0] - 'a') * 60, who, "servo bracket gasket");
      }
    }
    const auto series = compute_all({b.build()}, lex);
    const auto& s = score_of(series, "t", 6, "turn_taking");
    REQUIRE(s.value.has_value());
    CHECK(*s.value == 1.0);
  }
  SUBCASE("single speaker among four gives exactly 0.25") {
    CorpusBuilder b("t", test::simple_roster({"a", "b", "c", "d"}, 1));
    for (int d = 0; d < 7; ++d) {
      for (int k = 0; k < 4; ++k) b.say(day_s(d) + 3600 + k * 60, "a", "servo bracket gasket");
    }
    const auto series = compute_all({b.build()}, lex);
    const auto& s = score_of(series, "t", 6, "turn_taking");
    REQUIRE(s.value.has_value());
    CHECK(*s.value == 0.25);
  }
}

TEST_CASE("zero message windows are missing for every indicator") {
  const Lexicon& lex = test::demo_lexicon();
  // traffic on days 0..6 and day 20; day 15's window (days 9..15) is empty
  CorpusBuilder gap("g", test::simple_roster({"a", "b"}, 1));
  for (int d = 0; d < 7; ++d) gap.say(day_s(d) + 60, "a", "hello there servo");
  gap.say(day_s(20) + 60, "b", "long silence ends");
  const auto gapped = compute_all({gap.build()}, lex);
  for (const IndicatorSpec& spec : indicator_table()) {
    const auto& s = score_of(gapped, "g", 15, spec.name);
    CHECK(s.n_messages == 0);
    CHECK_FALSE(s.value.has_value());
  }
  // the day-20 window sees exactly one message again
  CHECK(score_of(gapped, "g", 20, "turn_taking").n_messages == 1);
}

TEST_CASE("group effort gap semantics") {
  const Lexicon& lex = test::demo_lexicon();
  // Vocabulary plan: non-PM text is identical to PM text in run A; in run B
  // the PM group shows involvement markers (assent, definite articles) while
  // non-PMs use personal pronouns.
  auto build = [&](bool pm_more_effort) {
    CorpusBuilder b("t", test::simple_roster({"pm1", "m1"}, 1));
    for (int d = 0; d < 7; ++d) {
      if (pm_more_effort) {
        b.say(day_s(d) + 100, "pm1", "yes sure the bracket the gasket okay agree");
        b.say(day_s(d) + 200, "m1", "they them he she servo bracket gasket flange");
      } else {
        b.say(day_s(d) + 100, "pm1", "servo bracket gasket flange dowel shim");
        b.say(day_s(d) + 200, "m1", "servo bracket gasket flange dowel shim");
      }
    }
    return b.build();
  };
  SUBCASE("identical group texts give zero") {
    const auto series = compute_all({build(false)}, lex);
    const auto& s = score_of(series, "t", 6, "no_overwhelmed_leaders");
    REQUIRE(s.value.has_value());
    CHECK(*s.value == doctest::Approx(0.0));
  }
  SUBCASE("more PM effort drives the score negative") {
    const auto series = compute_all({build(true)}, lex);
    const auto& s = score_of(series, "t", 6, "no_overwhelmed_leaders");
    REQUIRE(s.value.has_value());
    CHECK(*s.value < 0.0);
  }
  SUBCASE("swapping the groups' texts negates the score") {
    CorpusBuilder swapped("t", test::simple_roster({"pm1", "m1"}, 1));
    for (int d = 0; d < 7; ++d) {
      swapped.say(day_s(d) + 100, "m1", "yes sure the bracket the gasket okay agree");
      swapped.say(day_s(d) + 200, "pm1", "they them he she servo bracket gasket flange");
    }
    const auto a = compute_all({build(true)}, lex);
    const auto b = compute_all({swapped.build()}, lex);
    const auto& sa = score_of(a, "t", 6, "no_overwhelmed_leaders");
    const auto& sb = score_of(b, "t", 6, "no_overwhelmed_leaders");
    REQUIRE(sa.value.has_value());
    REQUIRE(sb.value.has_value());
    CHECK(*sa.value == doctest::Approx(-*sb.value).epsilon(1e-9));
  }
}

TEST_CASE("person dispersion scores") {
  const Lexicon& lex = test::demo_lexicon();
  SUBCASE("linguistically identical members score zero, the maximum") {
    CorpusBuilder b("t", test::simple_roster({"a", "b", "c"}, 1));
    for (int d = 0; d < 7; ++d) {
      for (const char* who : {"a", "b", "c"}) {
        b.say(day_s(d) + 100 + (who[0] - 'a') * 50, who, "one servo will support two brackets");
      }
    }
    const auto series = compute_all({b.build()}, lex);
    for (const char* name : {"shared_leadership", "no_social_hierarchy"}) {
      const auto& s = score_of(series, "t", 6, name);
      REQUIRE(s.value.has_value());
      CHECK(*s.value == doctest::Approx(0.0));
    }
  }
  SUBCASE("fewer than two active members is missing") {
    CorpusBuilder b("t", test::simple_roster({"a", "b"}, 1));
    for (int d = 0; d < 7; ++d) b.say(day_s(d) + 100, "a", "talking to the servo alone");
    const auto series = compute_all({b.build()}, lex);
    CHECK_FALSE(score_of(series, "t", 6, "shared_leadership").value.has_value());
    CHECK_FALSE(score_of(series, "t", 6, "no_social_hierarchy").value.has_value());
  }
  SUBCASE("concentrating word volume lowers the hierarchy score") {
    auto build = [&](int loud_factor) {
      CorpusBuilder b("t", test::simple_roster({"a", "b", "c"}, 1));
      for (int d = 0; d < 7; ++d) {
        std::string loud;
        for (int k = 0; k < loud_factor; ++k) loud += "servo bracket gasket flange ";
        b.say(day_s(d) + 100, "a", loud);
        b.say(day_s(d) + 200, "b", "servo bracket gasket flange");
        b.say(day_s(d) + 300, "c", "servo bracket gasket flange");
      }
      return b.build();
    };
    const auto flat = compute_all({build(1)}, lex);
    const auto skewed = compute_all({build(8)}, lex);
    const auto& s_flat = score_of(flat, "t", 6, "no_social_hierarchy");
    const auto& s_skew = score_of(skewed, "t", 6, "no_social_hierarchy");
    REQUIRE(s_flat.value.has_value());
    REQUIRE(s_skew.value.has_value());
    CHECK(*s_skew.value < *s_flat.value);
  }
}

TEST_CASE("orientation: planted positive-emotion raises dedication and no_blame") {
  const Lexicon& lex = test::demo_lexicon();
  auto team = [&](const std::string& id, int pos_words) {
    CorpusBuilder b = base_team(id);
    for (int d = 0; d < 8; ++d) {
      std::string text = "update on the build";
      for (int k = 0; k < pos_words; ++k) text += " great";
      b.say(day_s(d) + 9000, id + "_pm", text);
    }
    return b.build();
  };
  const auto series = compute_all({team("lo", 0), team("hi", 4)}, lex);
  for (const char* name : {"dedication", "no_blame"}) {
    for (int64_t day = 6; day <= 7; ++day) {
      const auto& lo = score_of(series, "lo", day, name);
      const auto& hi = score_of(series, "hi", day, name);
      REQUIRE(lo.value.has_value());
      REQUIRE(hi.value.has_value());
      CHECK_MESSAGE(*hi.value > *lo.value, name);
    }
  }
}

TEST_CASE("compute_all cardinality and determinism") {
  const Lexicon& lex = test::demo_lexicon();
  std::vector<TeamCorpus> corpora = {base_team("t1").build(), base_team("t2").build()};
  const auto series = compute_all(corpora, lex);
  // 8-day corpora: scored days 6 and 7 -> 2 teams x 2 days x 15 indicators
  CHECK(series.scores.size() == 2 * 2 * 15);
  const auto again = compute_all(corpora, lex);
  REQUIRE(series.scores.size() == again.scores.size());
  for (size_t i = 0; i < series.scores.size(); ++i) {
    CHECK(series.scores[i].team_id == again.scores[i].team_id);
    CHECK(series.scores[i].indicator == again.scores[i].indicator);
    CHECK(series.scores[i].value == again.scores[i].value);
  }
}

TEST_CASE("compute_all rejects short corpora") {
  const Lexicon& lex = test::demo_lexicon();
  CorpusBuilder b("t", test::simple_roster({"a", "b"}, 1));
  for (int d = 0; d < 5; ++d) b.say(day_s(d) + 100, "a", "too short a run");
  CHECK_THROWS_AS(compute_all({b.build()}, lex), ValidationError);
}

TEST_CASE("direct indicators stay in the unit interval") {
  const Lexicon& lex = test::demo_lexicon();
  const auto series = compute_all({base_team("t").build()}, lex);
  for (const IndicatorScore& s : series.scores) {
    if (s.indicator == "turn_taking" || s.indicator == "adapt_and_improve") {
      if (s.value.has_value()) {
        CHECK(*s.value >= 0.0);
        CHECK(*s.value <= 1.0);
      }
    }
    if (s.indicator == "shared_leadership" || s.indicator == "no_social_hierarchy") {
      if (s.value.has_value()) CHECK(*s.value <= 1e-12);
    }
  }
}
