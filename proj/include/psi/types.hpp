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

#ifndef PSI_TYPES_H_
#define PSI_TYPES_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace psi {

// Timestamps are integer microseconds since the Unix epoch. Chat exports
// carry microsecond precision as decimal strings; integer microseconds keep
// ordering, window boundaries and thread-root equality exact.
using Micros = int64_t;

inline constexpr Micros kMicrosPerSecond = 1'000'000;
inline constexpr Micros kMicrosPerDay = Micros{86'400} * kMicrosPerSecond;

inline double to_seconds(Micros us) {
  return static_cast<double>(us) / static_cast<double>(kMicrosPerSecond);
}

// UTC calendar day index (days since epoch). Timestamps are positive, but
// keep the floor semantics total anyway.
inline int64_t day_of(Micros us) {
  int64_t d = us / kMicrosPerDay;
  if (us < 0 && us % kMicrosPerDay != 0) --d;
  return d;
}

// Day index -> "YYYY-MM-DD" (UTC) and back.
std::string format_date(int64_t day);
int64_t parse_date(std::string_view date);  // throws ParseError on bad input

enum class Role { kPM, kHRM, kMember };

Role parse_role(std::string_view s);  // "PM" | "HRM" | "MEMBER"
std::string_view role_name(Role r);

// One chat utterance. thread_root equals the parent's ts; a thread parent
// carries its own ts there.
struct Message {
  Micros ts = 0;
  std::string author;
  std::string channel;
  std::string text;
  std::optional<Micros> thread_root;
  int reaction_count = 0;

  bool is_reply() const { return thread_root.has_value() && *thread_root != ts; }
};

struct Teammate {
  std::string user_id;
  Role role = Role::kMember;
  bool consented = true;
};

// Consent-filtered, chronologically ordered messages plus roster.
// Sorted by ts ascending, ties broken by (channel, author, text).
struct TeamCorpus {
  std::string team_id;
  std::vector<Teammate> roster;
  std::vector<Message> messages;

  const Teammate* find_member(std::string_view user_id) const;
};

// Malformed input file content. CLI maps this to exit code 2.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Violated precondition or configuration. CLI maps this to exit code 1.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace psi

#endif  // PSI_TYPES_H_
