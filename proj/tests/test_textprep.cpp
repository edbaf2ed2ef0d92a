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

#include <doctest.h>

using namespace psi;

TEST_CASE("markup removal") {
  CHECK(normalize_markup("ping <@U123> see <https://x.y>") == "ping  see ");
  CHECK(normalize_markup("done :tada:") == "done ");
  CHECK(normalize_markup("plain text stays") == "plain text stays");
  CHECK(normalize_markup("ref <#C042> here") == "ref  here");
  CHECK(normalize_markup("go to https://a.b/c now") == "go to  now");
  CHECK(normalize_markup("x `inline code` y") == "x  y");
  CHECK(normalize_markup("a ```fenced\ncode``` b") == "a  b");
  CHECK(normalize_markup("lone ` backtick") == "lone ` backtick");
  CHECK(normalize_markup("smile :+1: done") == "smile  done");
}

TEST_CASE("emoji codes keep clock digits") {
  CHECK(normalize_markup("at 10:30:45 sharp") == "at 10:30:45 sharp");
  CHECK(normalize_markup(":warning: at 10:30") == " at 10:30");
}

TEST_CASE("word segmentation") {
  const auto msg = tokenize("Don't stop, we can't.");
  CHECK(msg.tokens == std::vector<std::string>{"don't", "stop", "we", "can't"});
  CHECK(msg.word_count == 4);
}

TEST_CASE("long word counting uses letters only") {
  const auto msg = tokenize("refactoring complete");
  CHECK(msg.long_word_count == 2);
  CHECK(tokenize("don't worry").long_word_count == 0);
  CHECK(letter_count("don't") == 4);
  CHECK(letter_count("a1234567") == 1);
}

TEST_CASE("quote characters counted from raw text") {
  CHECK(tokenize("she said \"done\"").quote_char_count == 2);
  CHECK(tokenize("curly “quotes” too").quote_char_count == 2);
  CHECK(tokenize("no quotes").quote_char_count == 0);
}

TEST_CASE("digit-only tokens survive") {
  const auto msg = tokenize("ship 42 units by q3");
  CHECK(msg.tokens == std::vector<std::string>{"ship", "42", "units", "by", "q3"});
}

TEST_CASE("empty and markup-only text") {
  CHECK(tokenize("").word_count == 0);
  CHECK(tokenize("<@U1> :wave:").word_count == 0);
}

TEST_CASE("tokenization is idempotent on its own output") {
  const char* samples[] = {
      "Don't stop, we can't.",
      "Release v2 at 10:30 <@U1> https://x.y :tada:",
      "MiXeD Case AND 123 numbers",
      "curly won’t break",
  };
  for (const char* raw : samples) {
    const auto first = tokenize(raw);
    std::string joined;
    for (const auto& t : first.tokens) {
      if (!joined.empty()) joined += ' ';
      joined += t;
    }
    CHECK(tokenize(joined).tokens == first.tokens);
  }
}

TEST_CASE("token stream invariant under markup insertion") {
  const std::string base = "we should review the design today";
  const auto plain = tokenize(base).tokens;
  CHECK(tokenize(base + " <@U99>").tokens == plain);
  CHECK(tokenize(base + " <https://example.org/doc>").tokens == plain);
  CHECK(tokenize(base + " :rocket:").tokens == plain);
  CHECK(tokenize("`log()` " + base).tokens == plain);
}
