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

#include "psi/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include <json.hpp>

namespace psi {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read file: " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": malformed JSON at byte " + std::to_string(e.byte) +
                     ": " + e.what());
  }
}

int reaction_total(const json& msg) {
  int total = 0;
  if (const auto it = msg.find("reactions"); it != msg.end() && it->is_array()) {
    for (const json& r : *it) {
      if (const auto users = r.find("users"); users != r.end() && users->is_array()) {
        total += static_cast<int>(users->size());
      }
    }
  }
  return total;
}

bool tuple_less(const Message& a, const Message& b) {
  return std::tie(a.ts, a.channel, a.author, a.text) <
         std::tie(b.ts, b.channel, b.author, b.text);
}

bool tuple_equal(const Message& a, const Message& b) {
  return a.ts == b.ts && a.author == b.author && a.channel == b.channel && a.text == b.text;
}

}  // namespace

Micros parse_ts_string(std::string_view s) {
  s = trim(s);
  const size_t dot = s.find('.');
  const std::string_view whole = dot == std::string_view::npos ? s : s.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? "" : s.substr(dot + 1);
  if (whole.empty() || frac.size() > 6 ||
      !std::all_of(whole.begin(), whole.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
      !std::all_of(frac.begin(), frac.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw ParseError("bad timestamp: '" + std::string(s) + "'");
  }
  Micros us = 0;
  for (char c : whole) us = us * 10 + (c - '0');
  us *= kMicrosPerSecond;
  Micros scale = kMicrosPerSecond / 10;
  for (char c : frac) {
    us += (c - '0') * scale;
    scale /= 10;
  }
  return us;
}

Micros micros_from_seconds(double seconds) {
  return static_cast<Micros>(std::llround(seconds * 1e6));
}

ParsedExport parse_export(const std::filesystem::path& root) {
  ParsedExport out;
  const auto users_path = root / "users.json";
  if (!std::filesystem::exists(users_path)) {
    throw ParseError("not an export directory (missing users.json): " + root.string());
  }
  const json users = load_json_file(users_path);
  if (!users.is_array()) throw ParseError(users_path.string() + ": expected an array");
  std::map<std::string, UserInfo> table;
  for (const json& u : users) {
    UserInfo info;
    info.id = u.value("id", "");
    if (info.id.empty()) throw ParseError(users_path.string() + ": user entry without id");
    info.name = u.value("name", "");
    info.is_bot = u.value("is_bot", false);
    table[info.id] = info;
    out.users.push_back(info);
  }

  std::vector<std::string> unknown;
  std::vector<std::filesystem::path> channels;
  for (const auto& entry : std::filesystem::directory_iterator(root)) {
    if (entry.is_directory()) channels.push_back(entry.path());
  }
  std::sort(channels.begin(), channels.end());
  for (const auto& channel_dir : channels) {
    const std::string channel = channel_dir.filename().string();
    std::vector<std::filesystem::path> day_files;
    for (const auto& entry : std::filesystem::directory_iterator(channel_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") {
        day_files.push_back(entry.path());
      }
    }
    std::sort(day_files.begin(), day_files.end());
    for (const auto& file : day_files) {
      const json day = load_json_file(file);
      if (!day.is_array()) throw ParseError(file.string() + ": expected an array");
      for (const json& raw : day) {
        ++out.raw_count;
        if (raw.contains("subtype")) {
          ++out.dropped_system;
          continue;
        }
        const auto user_it = raw.find("user");
        if (user_it == raw.end() || !user_it->is_string()) {
          throw ParseError(file.string() + ": message without a user field");
        }
        const std::string user = user_it->get<std::string>();
        const auto known = table.find(user);
        if (known == table.end()) {
          if (std::find(unknown.begin(), unknown.end(), user) == unknown.end()) {
            unknown.push_back(user);
          }
          continue;
        }
        if (known->second.is_bot) {
          ++out.dropped_system;
          continue;
        }
        const auto ts_it = raw.find("ts");
        if (ts_it == raw.end() || !ts_it->is_string()) {
          throw ParseError(file.string() + ": message without a string ts field");
        }
        Message m;
        try {
          m.ts = parse_ts_string(ts_it->get<std::string>());
          if (const auto t = raw.find("thread_ts"); t != raw.end() && t->is_string()) {
            m.thread_root = parse_ts_string(t->get<std::string>());
          }
        } catch (const ParseError& e) {
          throw ParseError(file.string() + ": " + e.what());
        }
        m.author = user;
        m.channel = channel;
        m.text = raw.value("text", "");
        m.reaction_count = reaction_total(raw);
        out.messages.push_back(std::move(m));
      }
    }
  }
  if (!unknown.empty()) {
    std::string ids;
    for (const std::string& id : unknown) {
      if (!ids.empty()) ids += ", ";
      ids += id;
    }
    throw ValidationError("unknown author ids in export: " + ids);
  }
  return out;
}

std::vector<Message> parse_normalized(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ParseError("cannot read file: " + file.string());
  std::vector<Message> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view stripped = trim(line);
    if (stripped.empty()) continue;
    json obj;
    try {
      obj = json::parse(stripped);
    } catch (const json::parse_error& e) {
      throw ParseError(file.string() + ":" + std::to_string(line_no) + ": malformed JSON: " +
                       e.what());
    }
    if (!obj.is_object()) {
      throw ParseError(file.string() + ":" + std::to_string(line_no) + ": expected an object");
    }
    Message m;
    const auto ts = obj.find("ts");
    if (ts == obj.end()) {
      throw ParseError(file.string() + ":" + std::to_string(line_no) + ": missing ts");
    }
    if (ts->is_number()) {
      m.ts = micros_from_seconds(ts->get<double>());
    } else if (ts->is_string()) {
      m.ts = parse_ts_string(ts->get<std::string>());
    } else {
      throw ParseError(file.string() + ":" + std::to_string(line_no) + ": bad ts type");
    }
    if (!obj.contains("user") || !obj.contains("channel")) {
      throw ParseError(file.string() + ":" + std::to_string(line_no) +
                       ": missing user or channel");
    }
    m.author = obj["user"].get<std::string>();
    m.channel = obj["channel"].get<std::string>();
    m.text = obj.value("text", "");
    if (const auto t = obj.find("thread_root"); t != obj.end() && !t->is_null()) {
      if (t->is_number()) {
        m.thread_root = micros_from_seconds(t->get<double>());
      } else if (t->is_string()) {
        m.thread_root = parse_ts_string(t->get<std::string>());
      }
    }
    if (const auto r = obj.find("reactions"); r != obj.end() && r->is_number()) {
      m.reaction_count = r->get<int>();
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<RosterEntry> load_roles(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ParseError("cannot read roles file: " + file.string());
  std::vector<RosterEntry> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss{std::string(stripped)};
    while (std::getline(ss, field, ',')) fields.push_back(std::string(trim(field)));
    if (fields.size() < 2 || fields.size() > 3) {
      throw ParseError(file.string() + ":" + std::to_string(line_no) +
                       ": expected user_id,role[,team_id]");
    }
    if (line_no == 1 && fields[0] == "user_id") continue;  // tolerate a header row
    RosterEntry e;
    e.user_id = fields[0];
    try {
      e.role = parse_role(fields[1]);
    } catch (const ParseError& err) {
      throw ParseError(file.string() + ":" + std::to_string(line_no) + ": " + err.what());
    }
    if (fields.size() == 3) e.team_id = fields[2];
    out.push_back(std::move(e));
  }
  return out;
}

std::set<std::string> load_exclusions(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ParseError("cannot read exclusion file: " + file.string());
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    out.insert(std::string(stripped));
  }
  return out;
}

ExclusionResult apply_exclusions(std::vector<Message> messages,
                                 const std::set<std::string>& excluded) {
  ExclusionResult out;
  if (excluded.empty()) {
    out.messages = std::move(messages);
    return out;
  }
  out.messages.reserve(messages.size());
  for (Message& m : messages) {
    if (excluded.count(m.author)) {
      ++out.removed;
    } else {
      out.messages.push_back(std::move(m));
    }
  }
  return out;
}

TeamCorpus build_corpus(std::vector<Message> messages, std::vector<Teammate> roster,
                        std::string team_id, CorpusStats* stats) {
  std::vector<std::string> missing;
  for (const Message& m : messages) {
    bool found = false;
    for (const Teammate& t : roster) {
      if (t.user_id == m.author) {
        found = true;
        break;
      }
    }
    if (!found &&
        std::find(missing.begin(), missing.end(), m.author) == missing.end()) {
      missing.push_back(m.author);
    }
  }
  if (!missing.empty()) {
    std::string ids;
    for (const std::string& id : missing) {
      if (!ids.empty()) ids += ", ";
      ids += id;
    }
    throw ValidationError("authors missing from roster: " + ids);
  }
  std::sort(messages.begin(), messages.end(), tuple_less);
  const auto dup_begin = std::unique(messages.begin(), messages.end(), tuple_equal);
  const int duplicates = static_cast<int>(messages.end() - dup_begin);
  messages.erase(dup_begin, messages.end());
  for (Message& m : messages) {
    if (m.thread_root.has_value() && *m.thread_root > m.ts) m.thread_root.reset();
  }
  if (stats != nullptr) stats->duplicates_removed = duplicates;
  TeamCorpus corpus;
  corpus.team_id = std::move(team_id);
  corpus.roster = std::move(roster);
  corpus.messages = std::move(messages);
  return corpus;
}

std::vector<Teammate> roster_for_team(const std::vector<RosterEntry>& roles,
                                      const std::string& team_id,
                                      const std::set<std::string>& excluded) {
  std::vector<Teammate> roster;
  for (const RosterEntry& e : roles) {
    if (!e.team_id.empty() && e.team_id != team_id) continue;
    Teammate t;
    t.user_id = e.user_id;
    t.role = e.role;
    t.consented = excluded.count(e.user_id) == 0;
    roster.push_back(std::move(t));
  }
  return roster;
}

}  // namespace psi
