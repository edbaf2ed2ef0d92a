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

#ifndef PSI_LEXICON_H_
#define PSI_LEXICON_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace psi {

// Every category some indicator component consumes, plus negative_emotion
// for tone. A lexicon file must define all of them.
inline constexpr std::array<std::string_view, 26> kRequiredCategories = {
    "personal_pronoun", "i_pronoun",     "we_pronoun",   "you_pronoun",
    "article",          "definite_article", "verb",      "auxiliary_verb",
    "present_tense_verb", "negation",    "insight",      "causation",
    "differentiation",  "assent",        "certainty",    "tentative",
    "discrepancy",      "exclusive",     "inhibition",   "positive_emotion",
    "negative_emotion", "anger",         "affiliation",  "time_words",
    "filler",           "number",
};

// Category dictionary: literal words plus prefix patterns (trailing '*').
// A token matches a category at most once; it may match several categories.
// Digit-only tokens additionally count toward the "number" category.
class Lexicon {
 public:
  static Lexicon load(const std::filesystem::path& path);
  static Lexicon from_string(std::string_view text, std::string_view source_name);

  int category_id(std::string_view name) const;  // -1 when absent
  const std::vector<std::string>& category_names() const { return names_; }
  size_t category_count() const { return names_.size(); }

  bool matches(const std::string& token, int category) const;

  // Adds this token stream's hits to acc (size category_count()), counting
  // each token at most once per category.
  void add_counts(const std::vector<std::string>& tokens, std::vector<int64_t>& acc) const;
  std::vector<int64_t> count(const std::vector<std::string>& tokens) const;

  // Duplicate-pattern notes collected while loading.
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  struct Category {
    std::unordered_set<std::string> literals;
    std::vector<std::string> prefixes;  // without the trailing '*'
  };

  std::vector<std::string> names_;
  std::vector<Category> cats_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::string> warnings_;
  int number_id_ = -1;
};

// Per-100-words view of one analysis unit's window.
struct CategoryProfile {
  int64_t word_count = 0;
  std::vector<double> freq;     // per category id
  double long_word_freq = 0.0;  // words longer than six letters per 100 words
  double quote_freq = 0.0;      // double-quote characters per 100 words
  double tone = 0.0;            // positive_emotion - negative_emotion
};

// Raw tallies for a unit-window prior to frequency conversion. Profiles of
// concatenated streams are computed by summing tallies.
struct WindowTallies {
  int64_t word_count = 0;
  int64_t long_words = 0;
  int64_t quote_chars = 0;
  std::vector<int64_t> category_hits;

  explicit WindowTallies(size_t categories = 0) : category_hits(categories, 0) {}
  void add(const WindowTallies& other);
};

// Requires word_count >= 1; callers handle zero-word units.
CategoryProfile profile_from(const WindowTallies& tallies, const Lexicon& lexicon);

// Convenience for a single token stream.
CategoryProfile category_frequency(const std::vector<std::string>& tokens,
                                   const Lexicon& lexicon);

// positive_emotion frequency minus negative_emotion frequency.
double tone(const CategoryProfile& profile);

}  // namespace psi

#endif  // PSI_LEXICON_H_
