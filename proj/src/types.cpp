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

#include "psi/types.hpp"

#include <chrono>
#include <cstdio>

namespace psi {

std::string format_date(int64_t day) {
  std::chrono::year_month_day ymd{std::chrono::sys_days{std::chrono::days{day}}};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

int64_t parse_date(std::string_view date) {
  int y = 0, m = 0, d = 0;
  if (date.size() != 10 || date[4] != '-' || date[7] != '-' ||
      std::sscanf(std::string(date).c_str(), "%d-%d-%d", &y, &m, &d) != 3) {
    throw ParseError("bad date: '" + std::string(date) + "' (expected YYYY-MM-DD)");
  }
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                  std::chrono::day{unsigned(d)}};
  if (!ymd.ok()) throw ParseError("bad date: '" + std::string(date) + "'");
  return std::chrono::sys_days{ymd}.time_since_epoch().count();
}

Role parse_role(std::string_view s) {
  if (s == "PM") return Role::kPM;
  if (s == "HRM") return Role::kHRM;
  if (s == "MEMBER") return Role::kMember;
  throw ParseError("bad role: '" + std::string(s) + "' (expected PM, HRM or MEMBER)");
}

std::string_view role_name(Role r) {
  switch (r) {
    case Role::kPM: return "PM";
    case Role::kHRM: return "HRM";
    case Role::kMember: return "MEMBER";
  }
  return "MEMBER";
}

const Teammate* TeamCorpus::find_member(std::string_view user_id) const {
  for (const Teammate& t : roster) {
    if (t.user_id == user_id) return &t;
  }
  return nullptr;
}

}  // namespace psi
