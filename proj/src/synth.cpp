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

#include "psi/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace psi {

using nlohmann::json;

namespace {

// Hand-rolled draws on top of mt19937_64 keep the byte output independent of
// the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  int uniform_int(int n) {  // [0, n)
    return std::min(n - 1, static_cast<int>(uniform() * n));
  }

  double exponential(double mean) { return -mean * std::log1p(-uniform()); }

 private:
  std::mt19937_64 eng_;
};

struct CategoryWords {
  const char* category;
  std::vector<std::string> words;
};

const std::vector<CategoryWords>& injection_table() {
  static const std::vector<CategoryWords> table = {
      {"i_pronoun", {"i", "me", "my"}},
      {"we_pronoun", {"we", "us", "our"}},
      {"you_pronoun", {"you", "your"}},
      {"personal_pronoun", {"they", "them", "he", "she"}},
      {"article", {"a", "an", "the"}},
      {"definite_article", {"the"}},
      {"verb", {"make", "take", "run", "fix", "test", "build"}},
      {"auxiliary_verb", {"will", "can", "is", "are", "am", "do"}},
      {"present_tense_verb", {"works", "runs", "makes", "takes"}},
      {"negation", {"not", "no", "never", "nope"}},
      {"insight", {"think", "know", "idea", "understand"}},
      {"causation", {"because", "since", "therefore", "effect"}},
      {"differentiation", {"rather", "versus", "otherwise", "unlike"}},
      {"assent", {"yes", "yeah", "okay", "agree", "sure"}},
      {"certainty", {"always", "exactly", "clearly", "truly", "certain"}},
      {"tentative", {"maybe", "perhaps", "possibly", "somewhat"}},
      {"discrepancy", {"should", "would", "could", "hope"}},
      {"exclusive", {"except", "unless", "only", "either"}},
      {"inhibition", {"stop", "block", "prevent", "avoid"}},
      {"positive_emotion", {"great", "excellent", "awesome", "wonderful", "amazing"}},
      {"negative_emotion", {"bad", "terrible", "awful", "wrong"}},
      {"anger", {"furious", "pissed", "stupid", "dumb"}},
      {"affiliation", {"team", "together", "partner", "support"}},
      {"time_words", {"today", "tomorrow", "soon", "deadline"}},
      {"filler", {"um", "uh", "hmm", "basically"}},
      {"number", {"one", "two", "three", "seven"}},
  };
  return table;
}

std::vector<double> read_knob(const json& v, const std::string& key) {
  std::vector<double> out;
  if (v.is_number()) {
    out.push_back(v.get<double>());
  } else if (v.is_array()) {
    for (const json& x : v) {
      if (!x.is_number()) throw ValidationError("profile field " + key + ": expected numbers");
      out.push_back(x.get<double>());
    }
    if (out.empty()) throw ValidationError("profile field " + key + ": empty array");
  } else {
    throw ValidationError("profile field " + key + ": expected a number or array");
  }
  return out;
}

std::string json_string(const std::string& s) { return json(s).dump(); }

void append_message_line(std::string& out, Micros ts, const std::string& user,
                         const std::string& channel, const std::string& text,
                         std::optional<Micros> thread_root, int reactions) {
  char tsbuf[40];
  std::snprintf(tsbuf, sizeof tsbuf, "%lld.%06lld",
                static_cast<long long>(ts / kMicrosPerSecond),
                static_cast<long long>(ts % kMicrosPerSecond));
  out += "{\"ts\":";
  out += tsbuf;
  out += ",\"user\":" + json_string(user);
  out += ",\"channel\":" + json_string(channel);
  out += ",\"text\":" + json_string(text);
  if (thread_root.has_value()) {
    std::snprintf(tsbuf, sizeof tsbuf, "%lld.%06lld",
                  static_cast<long long>(*thread_root / kMicrosPerSecond),
                  static_cast<long long>(*thread_root % kMicrosPerSecond));
    out += ",\"thread_root\":";
    out += tsbuf;
  }
  if (reactions > 0) out += ",\"reactions\":" + std::to_string(reactions);
  out += "}\n";
}

struct PendingMessage {
  Micros ts;
  int member;
  std::optional<Micros> thread_root;
};

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write file: " + path.string());
  out << content;
}

}  // namespace

std::map<std::string, std::vector<double>> default_category_rates() {
  return {
      {"i_pronoun", {0.035}},      {"we_pronoun", {0.035}},
      {"you_pronoun", {0.02}},     {"article", {0.05}},
      {"verb", {0.07}},            {"auxiliary_verb", {0.035}},
      {"negation", {0.01}},        {"insight", {0.02}},
      {"causation", {0.02}},       {"differentiation", {0.015}},
      {"assent", {0.02}},          {"certainty", {0.01}},
      {"tentative", {0.015}},      {"discrepancy", {0.02}},
      {"exclusive", {0.01}},       {"inhibition", {0.005}},
      {"positive_emotion", {0.03}},{"negative_emotion", {0.01}},
      {"anger", {0.003}},          {"affiliation", {0.02}},
      {"time_words", {0.03}},      {"filler", {0.01}},
      {"number", {0.012}},
  };
}

const std::vector<std::string>& injection_words(const std::string& category) {
  for (const CategoryWords& cw : injection_table()) {
    if (category == cw.category) return cw.words;
  }
  throw ValidationError("no injection words for category: " + category);
}

const std::vector<std::string>& neutral_words() {
  static const std::vector<std::string> words = {
      "servo",   "chassis", "bracket", "flange",  "gasket",   "lathe",
      "piston",  "pulley",  "rivet",   "sprocket","valve",    "nozzle",
      "bezel",   "casing",  "dowel",   "ferrule", "gimbal",   "hinge",
      "jig",     "keel",    "lug",     "mandrel", "pawl",     "plinth",
      "shim",    "spline",  "strut",   "trunnion","washer",   "grommet",
  };
  return words;
}

std::vector<std::string> injectable_categories() {
  std::vector<std::string> out;
  for (const CategoryWords& cw : injection_table()) out.emplace_back(cw.category);
  return out;
}

SynthProfile SynthProfile::from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read profile: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str(), path.string());
}

SynthProfile SynthProfile::from_json_text(const std::string& text, const std::string& where) {
  json obj;
  try {
    obj = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(where + ": malformed JSON: " + e.what());
  }
  if (!obj.is_object()) throw ParseError(where + ": expected a JSON object");
  SynthProfile p;
  for (const auto& [key, value] : obj.items()) {
    if (key == "seed") {
      p.seed = value.get<uint64_t>();
    } else if (key == "teams") {
      p.teams = value.get<int>();
    } else if (key == "members_per_team") {
      p.members_per_team = value.get<int>();
    } else if (key == "days") {
      p.days = value.get<int>();
    } else if (key == "tokens_per_message") {
      p.tokens_per_message = value.get<int>();
    } else if (key == "start_date") {
      p.start_day = parse_date(value.get<std::string>());
    } else if (key == "msgs_per_member_per_week") {
      p.msgs_per_member_per_week = read_knob(value, key);
    } else if (key == "participation_skew") {
      p.participation_skew = read_knob(value, key);
    } else if (key == "reply_latency_mean") {
      p.reply_latency_mean = read_knob(value, key);
    } else if (key == "thread_probability") {
      p.thread_probability = read_knob(value, key);
    } else if (key == "category_rates") {
      if (!value.is_object()) throw ValidationError(where + ": category_rates must be an object");
      for (const auto& [cat, rate] : value.items()) {
        p.category_rates[cat] = read_knob(rate, "category_rates." + cat);
      }
    } else {
      throw ValidationError(where + ": unknown profile field '" + key + "'");
    }
  }
  if (p.category_rates.empty()) p.category_rates = default_category_rates();
  p.validate();
  return p;
}

double SynthProfile::knob(const std::vector<double>& values, int team) const {
  if (values.size() == 1) return values[0];
  return values[static_cast<size_t>(team)];
}

void SynthProfile::validate() const {
  if (teams < 1) throw ValidationError("profile: teams must be >= 1");
  if (members_per_team < 2) throw ValidationError("profile: members_per_team must be >= 2");
  if (days < 1) throw ValidationError("profile: days must be >= 1");
  if (tokens_per_message < 1) throw ValidationError("profile: tokens_per_message must be >= 1");
  auto check_len = [&](const std::vector<double>& v, const char* name) {
    if (v.size() != 1 && v.size() != static_cast<size_t>(teams)) {
      throw ValidationError(std::string("profile: ") + name +
                            " must carry one value or one per team");
    }
  };
  check_len(msgs_per_member_per_week, "msgs_per_member_per_week");
  check_len(participation_skew, "participation_skew");
  check_len(reply_latency_mean, "reply_latency_mean");
  check_len(thread_probability, "thread_probability");
  for (double v : msgs_per_member_per_week) {
    if (v <= 0) throw ValidationError("profile: msgs_per_member_per_week must be positive");
  }
  for (double v : participation_skew) {
    if (v < 0 || v > 1) throw ValidationError("profile: participation_skew must be in [0,1]");
  }
  for (double v : reply_latency_mean) {
    if (v <= 0) throw ValidationError("profile: reply_latency_mean must be positive");
  }
  for (double v : thread_probability) {
    if (v < 0 || v > 1) throw ValidationError("profile: thread_probability must be in [0,1]");
  }
  const auto known = injectable_categories();
  for (int t = 0; t < teams; ++t) {
    double total = 0.0;
    for (const auto& [cat, rates] : category_rates) {
      if (std::find(known.begin(), known.end(), cat) == known.end()) {
        throw ValidationError("profile: no injectable words for category '" + cat + "'");
      }
      check_len(rates, cat.c_str());
      const double r = knob(rates, t);
      if (r < 0 || r > 1) {
        throw ValidationError("profile: rate for '" + cat + "' must be in [0,1]");
      }
      total += r;
    }
    if (total > 1.0) {
      throw ValidationError("profile: category rates sum above 1 for team " +
                            std::to_string(t));
    }
  }
}

void generate_corpus(const SynthProfile& profile, const std::filesystem::path& out_dir) {
  profile.validate();
  std::filesystem::create_directories(out_dir / "messages");

  const int pm_count = profile.members_per_team >= 4 ? 2 : 1;
  const int hrm_count = profile.members_per_team >= 6 ? 2 : 0;

  std::string roles;
  std::string markup_noise[] = {" :tada:", " <https://example.org/spec>", " :+1:",
                                " <@U0000>"};

  for (int t = 0; t < profile.teams; ++t) {
    char team_buf[24];
    std::snprintf(team_buf, sizeof team_buf, "team_%02d", t + 1);
    const std::string team_id = team_buf;

    std::vector<std::string> member_ids;
    for (int m = 0; m < profile.members_per_team; ++m) {
      char member_buf[40];
      std::snprintf(member_buf, sizeof member_buf, "%s_m%02d", team_id.c_str(), m + 1);
      member_ids.emplace_back(member_buf);
      const char* role = m < pm_count ? "PM" : (m < pm_count + hrm_count ? "HRM" : "MEMBER");
      roles += member_ids.back() + "," + role + "," + team_id + "\n";
    }

    Rng rng(profile.seed * 0x9E3779B97F4A7C15ull + static_cast<uint64_t>(t) + 1);

    const double skew = profile.knob(profile.participation_skew, t);
    const double weekly = profile.knob(profile.msgs_per_member_per_week, t);
    const double latency_s = profile.knob(profile.reply_latency_mean, t);
    const double p_thread = profile.knob(profile.thread_probability, t);

    // Geometric participation weights; skew 0 is exactly uniform.
    std::vector<double> weights(member_ids.size());
    double weight_sum = 0.0;
    for (size_t m = 0; m < weights.size(); ++m) {
      weights[m] = skew >= 1.0 ? (m == 0 ? 1.0 : 0.0)
                               : std::pow(1.0 - skew, static_cast<double>(m));
      weight_sum += weights[m];
    }
    // Replies add roughly p * 1.35 extra messages per base message; shrink
    // the base quota so total weekly volume stays near the target.
    const double team_daily = weekly * static_cast<double>(member_ids.size()) / 7.0 /
                              (1.0 + p_thread * 1.35);
    std::vector<double> rate(member_ids.size());
    for (size_t m = 0; m < rate.size(); ++m) {
      rate[m] = team_daily * weights[m] / weight_sum;
    }

    // Per-team category rates, cumulative over sorted names for one-draw
    // token sampling.
    std::vector<std::pair<double, const std::vector<std::string>*>> cumulative;
    {
      double acc = 0.0;
      for (const auto& [cat, rates] : profile.category_rates) {
        const double r = profile.knob(rates, t);
        if (r <= 0.0) continue;
        acc += r;
        cumulative.emplace_back(acc, &injection_words(cat));
      }
    }

    auto draw_text = [&]() {
      std::string text;
      for (int k = 0; k < profile.tokens_per_message; ++k) {
        const double u = rng.uniform();
        const std::vector<std::string>* pool = nullptr;
        for (const auto& [edge, words] : cumulative) {
          if (u < edge) {
            pool = words;
            break;
          }
        }
        if (pool == nullptr) pool = &neutral_words();
        if (!text.empty()) text += ' ';
        text += (*pool)[rng.uniform_int(static_cast<int>(pool->size()))];
      }
      if (rng.uniform() < 0.04) {
        text += markup_noise[rng.uniform_int(4)];
      }
      return text;
    };

    const Micros corpus_end = (profile.start_day + profile.days) * kMicrosPerDay;
    std::vector<std::tuple<Micros, int, std::optional<Micros>, std::string, int>> all;

    for (int d = 0; d < profile.days; ++d) {
      const Micros day_begin = (profile.start_day + d) * kMicrosPerDay;
      std::vector<PendingMessage> base;
      for (size_t m = 0; m < member_ids.size(); ++m) {
        const auto count = static_cast<int64_t>(
            std::floor(rate[m] * (d + 1)) - std::floor(rate[m] * d));
        for (int64_t i = 0; i < count; ++i) {
          const Micros offset =
              9 * 3600 * kMicrosPerSecond +
              static_cast<Micros>(rng.uniform() * 12.0 * 3600.0 * kMicrosPerSecond);
          base.push_back({day_begin + offset, static_cast<int>(m), std::nullopt});
        }
      }
      std::sort(base.begin(), base.end(),
                [](const PendingMessage& a, const PendingMessage& b) {
                  return a.ts != b.ts ? a.ts < b.ts : a.member < b.member;
                });
      for (const PendingMessage& msg : base) {
        std::optional<Micros> root;
        const bool starts_thread = rng.uniform() < p_thread;
        if (starts_thread) root = msg.ts;  // thread parents carry their own ts
        all.emplace_back(msg.ts, msg.member, root, draw_text(),
                         rng.uniform() < 0.1 ? 1 + rng.uniform_int(3) : 0);
        if (starts_thread) {
          Micros reply_ts =
              msg.ts + static_cast<Micros>(rng.exponential(latency_s) * kMicrosPerSecond) + 1;
          int replies = 1 + (rng.uniform() < 0.35 ? 1 : 0);
          for (int r = 0; r < replies; ++r) {
            int responder = rng.uniform_int(static_cast<int>(member_ids.size()));
            if (responder == msg.member) {
              responder = (responder + 1) % static_cast<int>(member_ids.size());
            }
            if (reply_ts < corpus_end) {
              all.emplace_back(reply_ts, responder, msg.ts, draw_text(), 0);
            }
            reply_ts += static_cast<Micros>(rng.exponential(latency_s) * kMicrosPerSecond) + 1;
          }
        }
      }
    }

    std::sort(all.begin(), all.end());
    std::string lines;
    lines.reserve(all.size() * 160);
    for (const auto& [ts, member, root, text, reactions] : all) {
      append_message_line(lines, ts, member_ids[static_cast<size_t>(member)], "general", text,
                          root, reactions);
    }
    write_text_file(out_dir / "messages" / (team_id + ".jsonl"), lines);
  }

  write_text_file(out_dir / "roles.csv", roles);
  write_text_file(out_dir / "exclude.txt", "# user ids to exclude, one per line\n");

  // Echo the resolved profile for reproducibility.
  nlohmann::ordered_json echo;
  echo["seed"] = profile.seed;
  echo["teams"] = profile.teams;
  echo["members_per_team"] = profile.members_per_team;
  echo["days"] = profile.days;
  echo["tokens_per_message"] = profile.tokens_per_message;
  echo["start_date"] = format_date(profile.start_day);
  echo["msgs_per_member_per_week"] = profile.msgs_per_member_per_week;
  echo["participation_skew"] = profile.participation_skew;
  echo["reply_latency_mean"] = profile.reply_latency_mean;
  echo["thread_probability"] = profile.thread_probability;
  echo["category_rates"] = profile.category_rates;
  write_text_file(out_dir / "profile.json", echo.dump(2) + "\n");
}

}  // namespace psi
