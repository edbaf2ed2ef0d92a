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

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include <json.hpp>

#include "psi/textprep.hpp"
#include "psi/vectorspace.hpp"

namespace psi {

std::string_view facet_name(Facet f) {
  switch (f) {
    case Facet::kCommunication: return "communication";
    case Facet::kCooperation: return "cooperation";
    case Facet::kCulture: return "culture";
    case Facet::kLeadership: return "leadership";
    case Facet::kLearning: return "learning";
  }
  return "";
}

namespace {

std::string_view level_name(Level level) {
  switch (level) {
    case Level::kTeam: return "team";
    case Level::kPersonDispersion: return "per_person_dispersion";
    case Level::kGroupGap: return "group_gap";
    case Level::kDirect: return "direct";
  }
  return "";
}

std::vector<IndicatorSpec> make_table() {
  using C = ComponentRef;
  std::vector<IndicatorSpec> t;
  t.push_back({"no_delay_and_discreetness", Facet::kCommunication, true, Level::kTeam,
               {C{"mean_time_to_first_reply", true}, C{"thread_count", false},
                C{"reply_count", false}}});
  t.push_back({"collective_decision_making", Facet::kCommunication, false, Level::kTeam,
               {C{"causation", false}, C{"negation", false}, C{"insight", false},
                C{"auxiliary_verb", false}, C{"article", false}, C{"differentiation", false},
                C{"personal_pronoun", false}}});
  t.push_back({"turn_taking", Facet::kCommunication, false, Level::kDirect,
               {C{"gini_message_counts", false}, C{"gini_word_counts", false}}});
  t.push_back({"initiative", Facet::kCooperation, false, Level::kTeam,
               {C{"verb", false}, C{"word_count", true}, C{"time_words", true}}});
  t.push_back({"no_low_effort", Facet::kCooperation, true, Level::kTeam,
               {C{"personal_pronoun", true}, C{"assent", false},
                C{"definite_article", false}}});
  t.push_back({"dedication", Facet::kCooperation, false, Level::kTeam,
               {C{"positive_emotion", false}, C{"inhibition", true}}});
  t.push_back({"community", Facet::kCulture, false, Level::kTeam,
               {C{"mimicry", false}, C{"word_count", false}, C{"we_pronoun", true}}});
  t.push_back({"no_blame", Facet::kCulture, false, Level::kTeam,
               {C{"positive_emotion", false}, C{"causation", false}}});
  t.push_back({"no_fear", Facet::kCulture, true, Level::kTeam,
               {C{"word_count", false}, C{"we_pronoun", false}, C{"you_pronoun", false},
                C{"certainty", false}, C{"i_pronoun", true}}});
  t.push_back({"no_overwhelmed_leaders", Facet::kLeadership, true, Level::kGroupGap,
               {C{"no_low_effort_gap", false}}});
  t.push_back({"shared_leadership", Facet::kLeadership, false, Level::kPersonDispersion,
               {C{"auxiliary_verb", true}, C{"number", false}, C{"affiliation", false},
                C{"quote_freq", true}}});
  t.push_back({"no_social_hierarchy", Facet::kLeadership, true, Level::kPersonDispersion,
               {C{"word_count", false}, C{"tone", false}, C{"anger", true},
                C{"tentative", true}, C{"filler", true}}});
  t.push_back({"embrace_critiques", Facet::kLearning, false, Level::kTeam,
               {C{"word_count", false}, C{"exclusive", false}}});
  t.push_back({"adapt_and_improve", Facet::kLearning, false, Level::kDirect,
               {C{"forward_flow", false}}});
  t.push_back({"embrace_mistakes", Facet::kLearning, false, Level::kTeam,
               {C{"long_word_freq", true}, C{"present_tense_verb", false},
                C{"discrepancy", false}, C{"i_pronoun", false}, C{"article", true}}});
  return t;
}

// Team and person component names that are not plain category frequencies.
bool is_special_component(std::string_view name) {
  return name == "mean_time_to_first_reply" || name == "thread_count" ||
         name == "reply_count" || name == "word_count" || name == "long_word_freq" ||
         name == "quote_freq" || name == "tone" || name == "mimicry";
}

struct MessageArtifacts {
  TokenizedMessage tok;
  std::vector<int64_t> cats;
  TermVector vec;
};

struct WindowRecord {
  std::string team;
  int64_t day = 0;
  int n_messages = 0;
  std::optional<double> turn_taking;
  std::optional<double> forward_flow_value;
  bool group_ok = false;
  std::vector<std::string> active_person_units;
};

double get_z(const ZMatrix& z, const std::string& component, const UnitDay& key) {
  return z.at(component).at(key);
}

double signed_composite(const std::vector<ComponentRef>& components, const ZMatrix& z,
                        const UnitDay& key) {
  std::vector<double> parts;
  parts.reserve(components.size());
  for (const ComponentRef& c : components) {
    parts.push_back(reverse_score(get_z(z, c.name, key), c.reversed));
  }
  return composite_mean(parts);
}

}  // namespace

const std::vector<IndicatorSpec>& indicator_table() {
  static const std::vector<IndicatorSpec> table = make_table();
  return table;
}

const IndicatorSpec* find_indicator(std::string_view name) {
  for (const IndicatorSpec& spec : indicator_table()) {
    if (spec.name == name) return &spec;
  }
  return nullptr;
}

std::string indicator_table_json() {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const IndicatorSpec& spec : indicator_table()) {
    nlohmann::ordered_json row;
    row["name"] = spec.name;
    row["facet"] = std::string(facet_name(spec.facet));
    row["construct_orientation"] = spec.negative_construct ? "negative" : "positive";
    row["level"] = std::string(level_name(spec.level));
    nlohmann::ordered_json comps = nlohmann::ordered_json::array();
    for (const ComponentRef& c : spec.components) {
      comps.push_back({{"name", c.name}, {"reversed", c.reversed}});
    }
    row["components"] = comps;
    out.push_back(row);
  }
  return out.dump(2) + "\n";
}

std::optional<double> mean_time_to_first_reply(const std::vector<Message>& messages,
                                               Micros span_begin, Micros span_end) {
  std::map<Micros, Micros> first_reply;  // thread root ts -> earliest reply ts
  for (const Message& m : messages) {
    if (!m.is_reply()) continue;
    const auto [it, inserted] = first_reply.emplace(*m.thread_root, m.ts);
    if (!inserted && m.ts < it->second) it->second = m.ts;
  }
  double total = 0.0;
  int threads = 0;
  for (const auto& [root, reply_ts] : first_reply) {
    if (reply_ts >= span_begin && reply_ts < span_end) {
      total += to_seconds(reply_ts - root);
      ++threads;
    }
  }
  if (threads == 0) return std::nullopt;
  return total / threads;
}

IndicatorSeries compute_all(const std::vector<TeamCorpus>& corpora, const Lexicon& lexicon,
                            const ComputeOptions& options,
                            ComputeDiagnostics* diagnostics) {
  if (corpora.empty()) throw ValidationError("no corpora to compute");
  if (options.window_days < 1) throw ValidationError("window_days must be >= 1");
  const int w = options.window_days;

  {
    std::set<std::string> ids;
    for (const TeamCorpus& c : corpora) {
      if (!ids.insert(c.team_id).second) {
        throw ValidationError("duplicate team id: " + c.team_id);
      }
    }
  }

  const auto& table = indicator_table();
  const IndicatorSpec* low_effort = find_indicator("no_low_effort");
  const IndicatorSpec* shared_lead = find_indicator("shared_leadership");
  const IndicatorSpec* hierarchy = find_indicator("no_social_hierarchy");

  // Category-frequency components per matrix level, derived from the table
  // so the two can never drift apart.
  std::vector<std::pair<std::string, int>> team_cats;
  std::vector<std::pair<std::string, int>> person_cats;
  {
    std::set<std::string> seen;
    for (const IndicatorSpec& spec : table) {
      if (spec.level != Level::kTeam) continue;
      for (const ComponentRef& c : spec.components) {
        if (is_special_component(c.name) || !seen.insert(c.name).second) continue;
        team_cats.emplace_back(c.name, lexicon.category_id(c.name));
      }
    }
    seen.clear();
    for (const IndicatorSpec* spec : {shared_lead, hierarchy}) {
      for (const ComponentRef& c : spec->components) {
        if (is_special_component(c.name) || !seen.insert(c.name).second) continue;
        person_cats.emplace_back(c.name, lexicon.category_id(c.name));
      }
    }
  }
  std::vector<std::pair<std::string, int>> group_cats;
  for (const ComponentRef& c : low_effort->components) {
    group_cats.emplace_back(c.name, lexicon.category_id(c.name));
  }
  for (const auto& [name, id] : team_cats) {
    if (id < 0) throw ValidationError("lexicon lacks category: " + name);
  }

  ComponentMatrix team_m, person_m, group_m;
  std::vector<WindowRecord> records;

  for (const TeamCorpus& corpus : corpora) {
    const auto [first_day, last_day] = corpus_day_range(corpus);
    if (last_day - first_day + 1 < w) {
      throw ValidationError("corpus '" + corpus.team_id + "' spans fewer than " +
                            std::to_string(w) + " days");
    }

    const size_t n = corpus.messages.size();
    std::vector<MessageArtifacts> art(n);
    for (size_t i = 0; i < n; ++i) {
      art[i].tok = tokenize(corpus.messages[i].text);
      art[i].cats = lexicon.count(art[i].tok.tokens);
      art[i].vec = embed(art[i].tok.tokens);
    }

    std::set<Micros> anchors;
    for (const Message& m : corpus.messages) {
      if (m.is_reply()) anchors.insert(*m.thread_root);
    }

    std::vector<const Teammate*> members;
    for (const Teammate& t : corpus.roster) {
      if (t.consented) members.push_back(&t);
    }

    const auto slices = window_slices(corpus, first_day + w - 1, last_day, w);
    for (const WindowSlice& slice : slices) {
      WindowRecord rec;
      rec.team = corpus.team_id;
      rec.day = slice.day;
      rec.n_messages = static_cast<int>(slice.message_count());
      const UnitDay team_key{corpus.team_id, slice.day};
      if (rec.n_messages == 0) {
        records.push_back(std::move(rec));
        continue;
      }

      // Team-level tallies and engagement counts.
      WindowTallies team_tallies(lexicon.category_count());
      int replies = 0;
      int threads_started = 0;
      for (size_t i = slice.begin; i < slice.end; ++i) {
        const Message& m = corpus.messages[i];
        const MessageArtifacts& a = art[i];
        team_tallies.word_count += a.tok.word_count;
        team_tallies.long_words += a.tok.long_word_count;
        team_tallies.quote_chars += a.tok.quote_char_count;
        for (size_t c = 0; c < a.cats.size(); ++c) team_tallies.category_hits[c] += a.cats[c];
        if (m.is_reply()) ++replies;
        if (anchors.count(m.ts)) ++threads_started;
      }
      team_m.set("word_count", team_key, static_cast<double>(team_tallies.word_count));
      team_m.set("thread_count", team_key, static_cast<double>(threads_started));
      team_m.set("reply_count", team_key, static_cast<double>(replies));
      team_m.set("mean_time_to_first_reply", team_key,
                 mean_time_to_first_reply(corpus.messages, slice.span_begin, slice.span_end));
      if (team_tallies.word_count >= 1) {
        const CategoryProfile profile = profile_from(team_tallies, lexicon);
        for (const auto& [name, id] : team_cats) team_m.set(name, team_key, profile.freq[id]);
        team_m.set("long_word_freq", team_key, profile.long_word_freq);
      } else {
        for (const auto& [name, id] : team_cats) team_m.set(name, team_key, std::nullopt);
        team_m.set("long_word_freq", team_key, std::nullopt);
      }

      // Similarity measures over the team-wide chronological stream.
      std::vector<StreamEntry> stream;
      stream.reserve(slice.message_count());
      for (size_t i = slice.begin; i < slice.end; ++i) {
        stream.push_back({&art[i].vec, &corpus.messages[i].author});
      }
      team_m.set("mimicry", team_key, mimicry_score(stream));
      rec.forward_flow_value = forward_flow(stream);

      // Per-member contributions.
      std::map<std::string, std::vector<size_t>> by_author;
      for (size_t i = slice.begin; i < slice.end; ++i) {
        by_author[corpus.messages[i].author].push_back(i);
      }

      if (members.size() >= 2) {
        std::vector<double> msg_counts, word_counts;
        msg_counts.reserve(members.size());
        word_counts.reserve(members.size());
        for (const Teammate* t : members) {
          const auto it = by_author.find(t->user_id);
          int64_t msgs = 0, words = 0;
          if (it != by_author.end()) {
            msgs = static_cast<int64_t>(it->second.size());
            for (size_t i : it->second) words += art[i].tok.word_count;
          }
          msg_counts.push_back(static_cast<double>(msgs));
          word_counts.push_back(static_cast<double>(words));
        }
        const auto g_msgs = gini(msg_counts);
        const auto g_words = gini(word_counts);
        if (g_msgs.has_value() && g_words.has_value()) {
          rec.turn_taking = 1.0 - (*g_msgs + *g_words) / 2.0;
        }
      }

      // Person-level components for the dispersion indicators.
      for (const Teammate* t : members) {
        const auto it = by_author.find(t->user_id);
        if (it == by_author.end()) continue;
        WindowTallies pt(lexicon.category_count());
        for (size_t i : it->second) {
          pt.word_count += art[i].tok.word_count;
          pt.long_words += art[i].tok.long_word_count;
          pt.quote_chars += art[i].tok.quote_char_count;
          for (size_t c = 0; c < art[i].cats.size(); ++c) pt.category_hits[c] += art[i].cats[c];
        }
        const UnitDay person_key{corpus.team_id + "/" + t->user_id, slice.day};
        rec.active_person_units.push_back(person_key.unit);
        person_m.set("word_count", person_key, static_cast<double>(pt.word_count));
        if (pt.word_count >= 1) {
          const CategoryProfile profile = profile_from(pt, lexicon);
          for (const auto& [name, id] : person_cats) {
            person_m.set(name, person_key, profile.freq[id]);
          }
          person_m.set("quote_freq", person_key, profile.quote_freq);
          person_m.set("tone", person_key, profile.tone);
        } else {
          for (const auto& [name, id] : person_cats) {
            person_m.set(name, person_key, std::nullopt);
          }
          person_m.set("quote_freq", person_key, std::nullopt);
          person_m.set("tone", person_key, std::nullopt);
        }
      }

      // PM vs non-PM group text units.
      WindowTallies pm_tallies(lexicon.category_count());
      WindowTallies non_pm_tallies(lexicon.category_count());
      int pm_active = 0, non_pm_active = 0;
      for (const Teammate* t : members) {
        const auto it = by_author.find(t->user_id);
        if (it == by_author.end()) continue;
        const bool is_pm = t->role == Role::kPM;
        WindowTallies& gt = is_pm ? pm_tallies : non_pm_tallies;
        (is_pm ? pm_active : non_pm_active) += 1;
        for (size_t i : it->second) {
          gt.word_count += art[i].tok.word_count;
          gt.long_words += art[i].tok.long_word_count;
          gt.quote_chars += art[i].tok.quote_char_count;
          for (size_t c = 0; c < art[i].cats.size(); ++c) gt.category_hits[c] += art[i].cats[c];
        }
      }
      const UnitDay pm_key{corpus.team_id + "/PM", slice.day};
      const UnitDay non_pm_key{corpus.team_id + "/nonPM", slice.day};
      auto set_group = [&](const UnitDay& key, const WindowTallies& gt) {
        if (gt.word_count >= 1) {
          const CategoryProfile profile = profile_from(gt, lexicon);
          for (const auto& [name, id] : group_cats) group_m.set(name, key, profile.freq[id]);
        } else {
          for (const auto& [name, id] : group_cats) group_m.set(name, key, std::nullopt);
        }
      };
      set_group(pm_key, pm_tallies);
      set_group(non_pm_key, non_pm_tallies);
      rec.group_ok = pm_active >= 1 && non_pm_active >= 1 && pm_tallies.word_count >= 1 &&
                     non_pm_tallies.word_count >= 1;

      records.push_back(std::move(rec));
    }
  }

  // Global pooling barrier: standardize each component over every unit-day
  // window of the run.
  std::vector<std::string> degenerate;
  const ZMatrix z_team = pooled_z_lenient(team_m, &degenerate);
  const ZMatrix z_person = pooled_z_lenient(person_m, &degenerate);
  const ZMatrix z_group = pooled_z_lenient(group_m, &degenerate);

  IndicatorSeries series;
  series.scores.reserve(records.size() * table.size());
  for (const WindowRecord& rec : records) {
    const UnitDay team_key{rec.team, rec.day};
    for (const IndicatorSpec& spec : table) {
      IndicatorScore score;
      score.team_id = rec.team;
      score.day = rec.day;
      score.indicator = spec.name;
      score.n_messages = rec.n_messages;
      if (rec.n_messages > 0) {
        switch (spec.level) {
          case Level::kTeam:
            score.value = signed_composite(spec.components, z_team, team_key);
            break;
          case Level::kDirect:
            score.value = spec.name == "turn_taking" ? rec.turn_taking
                                                     : rec.forward_flow_value;
            break;
          case Level::kGroupGap: {
            if (rec.group_ok) {
              const UnitDay pm_key{rec.team + "/PM", rec.day};
              const UnitDay non_pm_key{rec.team + "/nonPM", rec.day};
              score.value = signed_composite(low_effort->components, z_group, non_pm_key) -
                            signed_composite(low_effort->components, z_group, pm_key);
            }
            break;
          }
          case Level::kPersonDispersion: {
            std::vector<double> person_scores;
            person_scores.reserve(rec.active_person_units.size());
            for (const std::string& unit : rec.active_person_units) {
              person_scores.push_back(
                  signed_composite(spec.components, z_person, UnitDay{unit, rec.day}));
            }
            const auto sd = dispersion_sd(person_scores);
            if (sd.has_value()) score.value = -*sd;
            break;
          }
        }
      }
      series.scores.push_back(std::move(score));
    }
  }

  if (diagnostics != nullptr) {
    diagnostics->degenerate_components = degenerate;
    diagnostics->missing_by_indicator = missing_tally(series);
  }
  return series;
}

std::map<std::string, int> missing_tally(const IndicatorSeries& series) {
  std::map<std::string, int> tally;
  for (const IndicatorSpec& spec : indicator_table()) tally[spec.name] = 0;
  for (const IndicatorScore& s : series.scores) {
    if (!s.value.has_value()) ++tally[s.indicator];
  }
  return tally;
}

}  // namespace psi
