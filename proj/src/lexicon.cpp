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

#include "psi/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "psi/textprep.hpp"
#include "psi/types.hpp"

namespace psi {
namespace {

std::string_view trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool all_digits(std::string_view token) {
  if (token.empty()) return false;
  return std::all_of(token.begin(), token.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

Lexicon Lexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read lexicon file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return from_string(buf.str(), path.string());
}

Lexicon Lexicon::from_string(std::string_view text, std::string_view source_name) {
  Lexicon lex;
  const std::string where(source_name);
  int current = -1;
  size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    const size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos
                                                                          : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ParseError(where + ":" + std::to_string(line_no) + ": bad section header '" +
                         std::string(line) + "'");
      }
      const std::string name(trim(line.substr(1, line.size() - 2)));
      auto [it, inserted] = lex.index_.emplace(name, static_cast<int>(lex.names_.size()));
      if (inserted) {
        lex.names_.push_back(name);
        lex.cats_.emplace_back();
      }
      current = it->second;
      continue;
    }
    if (current < 0) {
      throw ParseError(where + ":" + std::to_string(line_no) +
                       ": pattern before any [category] header");
    }
    std::string pattern(line);
    std::transform(pattern.begin(), pattern.end(), pattern.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    const size_t star = pattern.find('*');
    Category& cat = lex.cats_[current];
    if (star != std::string::npos) {
      if (star != pattern.size() - 1) {
        throw ParseError(where + ":" + std::to_string(line_no) +
                         ": '*' is only allowed as the final character: '" + pattern + "'");
      }
      const std::string stem = pattern.substr(0, star);
      if (stem.empty()) {
        throw ParseError(where + ":" + std::to_string(line_no) + ": empty prefix pattern");
      }
      if (std::find(cat.prefixes.begin(), cat.prefixes.end(), stem) != cat.prefixes.end()) {
        lex.warnings_.push_back("duplicate pattern '" + pattern + "' in category " +
                                lex.names_[current]);
      } else {
        cat.prefixes.push_back(stem);
      }
    } else {
      if (!cat.literals.insert(pattern).second) {
        lex.warnings_.push_back("duplicate pattern '" + pattern + "' in category " +
                                lex.names_[current]);
      }
    }
  }
  for (std::string_view required : kRequiredCategories) {
    if (!lex.index_.count(std::string(required))) {
      throw ParseError(where + ": missing category: " + std::string(required));
    }
  }
  lex.number_id_ = lex.category_id("number");
  for (Category& cat : lex.cats_) {
    std::sort(cat.prefixes.begin(), cat.prefixes.end());
  }
  return lex;
}

int Lexicon::category_id(std::string_view name) const {
  const auto it = index_.find(std::string(name));
  return it == index_.end() ? -1 : it->second;
}

bool Lexicon::matches(const std::string& token, int category) const {
  const Category& cat = cats_[category];
  if (cat.literals.count(token)) return true;
  for (const std::string& stem : cat.prefixes) {
    if (token.size() >= stem.size() && token.compare(0, stem.size(), stem) == 0) return true;
  }
  if (category == number_id_ && all_digits(token)) return true;
  return false;
}

void Lexicon::add_counts(const std::vector<std::string>& tokens,
                         std::vector<int64_t>& acc) const {
  for (const std::string& token : tokens) {
    for (size_t c = 0; c < cats_.size(); ++c) {
      if (matches(token, static_cast<int>(c))) ++acc[c];
    }
  }
}

std::vector<int64_t> Lexicon::count(const std::vector<std::string>& tokens) const {
  std::vector<int64_t> acc(cats_.size(), 0);
  add_counts(tokens, acc);
  return acc;
}

void WindowTallies::add(const WindowTallies& other) {
  word_count += other.word_count;
  long_words += other.long_words;
  quote_chars += other.quote_chars;
  if (category_hits.size() < other.category_hits.size()) {
    category_hits.resize(other.category_hits.size(), 0);
  }
  for (size_t i = 0; i < other.category_hits.size(); ++i) {
    category_hits[i] += other.category_hits[i];
  }
}

CategoryProfile profile_from(const WindowTallies& tallies, const Lexicon& lexicon) {
  CategoryProfile p;
  p.word_count = tallies.word_count;
  p.freq.assign(lexicon.category_count(), 0.0);
  if (tallies.word_count < 1) {
    throw ValidationError("profile requested for a zero-word unit");
  }
  const double scale = 100.0 / static_cast<double>(tallies.word_count);
  for (size_t c = 0; c < p.freq.size() && c < tallies.category_hits.size(); ++c) {
    p.freq[c] = scale * static_cast<double>(tallies.category_hits[c]);
  }
  p.long_word_freq = scale * static_cast<double>(tallies.long_words);
  p.quote_freq = scale * static_cast<double>(tallies.quote_chars);
  const int pos = lexicon.category_id("positive_emotion");
  const int neg = lexicon.category_id("negative_emotion");
  p.tone = p.freq[pos] - p.freq[neg];
  return p;
}

CategoryProfile category_frequency(const std::vector<std::string>& tokens,
                                   const Lexicon& lexicon) {
  WindowTallies t(lexicon.category_count());
  t.word_count = static_cast<int64_t>(tokens.size());
  t.category_hits = lexicon.count(tokens);
  for (const std::string& token : tokens) {
    if (letter_count(token) > 6) ++t.long_words;
  }
  return profile_from(t, lexicon);
}

double tone(const CategoryProfile& profile) { return profile.tone; }

}  // namespace psi
