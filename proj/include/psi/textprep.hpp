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

#ifndef PSI_TEXTPREP_H_
#define PSI_TEXTPREP_H_

#include <string>
#include <string_view>
#include <vector>

namespace psi {

// Lowercase word tokens of one message plus the counts every lexical
// component consumes. quote_char_count comes from the raw text, before
// markup removal.
struct TokenizedMessage {
  std::vector<std::string> tokens;
  int word_count = 0;       // == tokens.size()
  int long_word_count = 0;  // tokens with more than six alphabetic characters
  int quote_char_count = 0; // straight/curly double-quote characters
};

// Strips chat markup: user mentions (<@U...>), channel references (<#C...>),
// <http...> links, bare URLs, fenced/inline code spans and :emoji_code:
// tokens. Everything else is preserved verbatim.
std::string normalize_markup(std::string_view text);

// Unicode-aware segmentation of markup-normalized text. Lowercases tokens,
// keeps internal apostrophes ("don't" is one token) and digit-only tokens,
// emits no punctuation tokens.
std::vector<std::string> word_tokens(std::string_view cleaned);

// Double-quote characters (", U+201C, U+201D) in the raw text.
int count_quote_chars(std::string_view raw);

// Full per-message pipeline: normalize, segment, count.
TokenizedMessage tokenize(std::string_view raw_text);

// Alphabetic characters in a (lowercased, UTF-8) token; digits and
// apostrophes do not count, so "don't" has 4 letters.
int letter_count(std::string_view token);

}  // namespace psi

#endif  // PSI_TEXTPREP_H_
