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

#include "psi/textprep.hpp"

#include <cctype>
#include <cstdint>

namespace psi {
namespace {

// Minimal UTF-8 decoding. Invalid sequences decode as one replacement
// character per byte so the scanner always advances.
struct Decoded {
  uint32_t cp;
  int len;
};

Decoded decode_utf8(std::string_view s, size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return {b0, 1};
  auto cont = [&](size_t k) {
    return i + k < s.size() && (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
  };
  auto bits = [&](size_t k) { return static_cast<uint32_t>(s[i + k]) & 0x3F; };
  if ((b0 & 0xE0) == 0xC0 && cont(1)) {
    return {((b0 & 0x1Fu) << 6) | bits(1), 2};
  }
  if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
    return {((b0 & 0x0Fu) << 12) | (bits(1) << 6) | bits(2), 3};
  }
  if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
    return {((b0 & 0x07u) << 18) | (bits(1) << 12) | (bits(2) << 6) | bits(3), 4};
  }
  return {0xFFFD, 1};
}

void append_utf8(std::string& out, uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_ascii_digit(uint32_t cp) { return cp >= '0' && cp <= '9'; }

bool is_letter_cp(uint32_t cp) {
  if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return true;
  if (cp < 0x80) return false;
  // Latin-1 letters minus the multiplication/division signs.
  if (cp >= 0xC0 && cp <= 0xFF) return cp != 0xD7 && cp != 0xF7;
  if (cp >= 0x100 && cp <= 0x24F) return true;   // Latin Extended-A/B
  if (cp >= 0x370 && cp <= 0x3FF) return true;   // Greek
  if (cp >= 0x400 && cp <= 0x4FF) return true;   // Cyrillic
  if (cp >= 0x1E00 && cp <= 0x1EFF) return true; // Latin Extended Additional
  if (cp >= 0x4E00 && cp <= 0x9FFF) return true; // CJK unified
  return false;
}

bool is_word_cp(uint32_t cp) { return is_letter_cp(cp) || is_ascii_digit(cp); }

uint32_t lower_cp(uint32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  return cp;
}

bool is_apostrophe(uint32_t cp) { return cp == '\'' || cp == 0x2019; }

// True when s[i..] starts an emoji code like :tada: or :+1:. Emoji names are
// [a-z0-9_+-]+ with a non-digit first character, so clock strings such as
// "10:30:45" keep their digits.
bool match_emoji_code(std::string_view s, size_t i, size_t* end) {
  if (s[i] != ':') return false;
  size_t j = i + 1;
  auto name_char = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '+' || c == '-';
  };
  if (j >= s.size() || !name_char(s[j]) || (s[j] >= '0' && s[j] <= '9')) return false;
  while (j < s.size() && name_char(s[j])) ++j;
  if (j >= s.size() || s[j] != ':') return false;
  *end = j + 1;
  return true;
}

bool starts_with(std::string_view s, size_t i, std::string_view prefix) {
  return s.size() - i >= prefix.size() && s.substr(i, prefix.size()) == prefix;
}

}  // namespace

std::string normalize_markup(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '`') {
      // Fenced (```...```) and inline (`...`) code spans. An unmatched
      // backtick stays in the text.
      const bool fenced = starts_with(text, i, "```");
      const std::string_view delim = fenced ? "```" : "`";
      const size_t close = text.find(delim, i + delim.size());
      if (close != std::string_view::npos) {
        i = close + delim.size();
        continue;
      }
    }
    if (c == '<' && i + 1 < text.size()) {
      const char next = text[i + 1];
      const bool link = next == '@' || next == '#' || starts_with(text, i + 1, "http") ||
                        starts_with(text, i + 1, "mailto:");
      if (link) {
        const size_t close = text.find('>', i + 1);
        if (close != std::string_view::npos) {
          i = close + 1;
          continue;
        }
      }
    }
    if ((c == 'h' && (starts_with(text, i, "http://") || starts_with(text, i, "https://")))) {
      size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
      i = j;
      continue;
    }
    if (c == ':') {
      size_t end = 0;
      if (match_emoji_code(text, i, &end)) {
        i = end;
        continue;
      }
    }
    out.push_back(c);
    ++i;
  }
  return out;
}

std::vector<std::string> word_tokens(std::string_view cleaned) {
  std::vector<std::string> tokens;
  std::string current;
  bool prev_word = false;
  size_t i = 0;
  while (i < cleaned.size()) {
    const Decoded d = decode_utf8(cleaned, i);
    if (is_word_cp(d.cp)) {
      append_utf8(current, lower_cp(d.cp));
      prev_word = true;
      i += d.len;
      continue;
    }
    if (is_apostrophe(d.cp) && prev_word && i + d.len < cleaned.size()) {
      const Decoded after = decode_utf8(cleaned, i + d.len);
      if (is_word_cp(after.cp)) {
        current.push_back('\'');
        i += d.len;
        continue;
      }
    }
    if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
    prev_word = false;
    i += d.len;
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

int count_quote_chars(std::string_view raw) {
  int n = 0;
  size_t i = 0;
  while (i < raw.size()) {
    const Decoded d = decode_utf8(raw, i);
    if (d.cp == '"' || d.cp == 0x201C || d.cp == 0x201D) ++n;
    i += d.len;
  }
  return n;
}

int letter_count(std::string_view token) {
  int n = 0;
  size_t i = 0;
  while (i < token.size()) {
    const Decoded d = decode_utf8(token, i);
    if (is_letter_cp(d.cp)) ++n;
    i += d.len;
  }
  return n;
}

TokenizedMessage tokenize(std::string_view raw_text) {
  TokenizedMessage out;
  out.quote_char_count = count_quote_chars(raw_text);
  out.tokens = word_tokens(normalize_markup(raw_text));
  out.word_count = static_cast<int>(out.tokens.size());
  for (const std::string& t : out.tokens) {
    if (letter_count(t) > 6) ++out.long_word_count;
  }
  return out;
}

}  // namespace psi
