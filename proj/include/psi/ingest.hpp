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

#ifndef PSI_INGEST_H_
#define PSI_INGEST_H_

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "psi/types.hpp"

namespace psi {

// "epochsec.frac" (up to microsecond precision) -> integer microseconds.
Micros parse_ts_string(std::string_view s);

// JSON number (seconds) -> integer microseconds; exact for values written
// with <= 6 fractional digits.
Micros micros_from_seconds(double seconds);

struct UserInfo {
  std::string id;
  std::string name;
  bool is_bot = false;
};

struct ParsedExport {
  std::vector<Message> messages;  // human, non-system messages only
  std::vector<UserInfo> users;
  int raw_count = 0;              // message objects seen
  int dropped_system = 0;         // subtype markers and bot authors
};

// Parses a chat-export directory: <root>/users.json plus per-channel
// subdirectories of daily message arrays. Messages carrying a platform
// "subtype" (joins, renames, bot posts) are dropped and counted.
ParsedExport parse_export(const std::filesystem::path& root);

// Normalized alternative: one JSON object per line with fields
// ts (number), user, channel, text, thread_root (optional), reactions
// (optional count).
std::vector<Message> parse_normalized(const std::filesystem::path& file);

struct RosterEntry {
  std::string user_id;
  Role role = Role::kMember;
  std::string team_id;  // empty: applies to every team
};

// CSV `user_id,role[,team_id]`; '#' comments allowed.
std::vector<RosterEntry> load_roles(const std::filesystem::path& file);

// One user id per line; '#' comments allowed.
std::set<std::string> load_exclusions(const std::filesystem::path& file);

struct ExclusionResult {
  std::vector<Message> messages;
  int removed = 0;
};

ExclusionResult apply_exclusions(std::vector<Message> messages,
                                 const std::set<std::string>& excluded);

struct CorpusStats {
  int duplicates_removed = 0;
};

// Sorts by (ts, channel, author, text), removes exact duplicates and
// validates that every author is a consenting roster member. Replies whose
// thread root lies in the future lose their thread linkage.
TeamCorpus build_corpus(std::vector<Message> messages, std::vector<Teammate> roster,
                        std::string team_id, CorpusStats* stats = nullptr);

// Roster for one team from the shared roles table: rows tagged with this
// team_id plus untagged rows. Excluded users keep their roster slot with
// consented = false.
std::vector<Teammate> roster_for_team(const std::vector<RosterEntry>& roles,
                                      const std::string& team_id,
                                      const std::set<std::string>& excluded);

}  // namespace psi

#endif  // PSI_INGEST_H_
