// Copyright 2026 The gecsynth Authors
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

#include "gecsynth/text.h"

#include "gecsynth/utf8.h"

namespace gecsynth {

namespace {

inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

}  // namespace

PunctuationSet PunctuationSet::parse(std::string_view spec) {
  std::vector<std::string> members;
  std::size_t i = 0;
  while (i < spec.size()) {
    while (i < spec.size() && is_space(spec[i])) ++i;
    std::size_t start = i;
    while (i < spec.size() && !is_space(spec[i])) ++i;
    if (i > start) members.emplace_back(spec.substr(start, i - start));
  }
  if (members.empty())
    throw ConfigError("punctuation set specification is empty");
  return PunctuationSet(std::move(members));
}

std::vector<Token> tokenize(std::string_view line,
                            const PunctuationSet& punct) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start)
      tokens.push_back(punct.make_token(std::string(line.substr(start, i - start))));
  }
  return tokens;
}

std::string join_tokens(std::span<const Token> tokens) {
  std::string out;
  std::size_t total = tokens.empty() ? 0 : tokens.size() - 1;
  for (const Token& t : tokens) total += t.text.size();
  out.reserve(total);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i].text;
  }
  return out;
}

std::string_view clean_decision_name(CleanDecision d) {
  switch (d) {
    case CleanDecision::kKeep: return "keep";
    case CleanDecision::kIdentical: return "identical";
    case CleanDecision::kUrl: return "url";
    case CleanDecision::kIllegalChar: return "illegal";
    case CleanDecision::kEmoji: return "emoji";
  }
  return "?";
}

namespace {

bool is_url_token(std::string_view t) {
  return t.starts_with("http://") || t.starts_with("https://") ||
         t.starts_with("www.");
}

bool is_control(char32_t cp) {
  return cp < 0x20 || cp == 0x7F || (cp >= 0x80 && cp <= 0x9F);
}

bool is_emoji(char32_t cp) {
  return (cp >= 0x1F300 && cp <= 0x1FAFF) || (cp >= 0x2600 && cp <= 0x27BF);
}

// Returns kKeep or the first offending category found in the token.
CleanDecision scan_token(std::string_view text) {
  if (is_url_token(text)) return CleanDecision::kUrl;
  std::size_t i = 0;
  char32_t cp;
  while (i < text.size()) {
    if (!utf8::decode_next(text, i, cp)) return CleanDecision::kIllegalChar;
    if (is_control(cp)) return CleanDecision::kIllegalChar;
    if (is_emoji(cp)) return CleanDecision::kEmoji;
  }
  return CleanDecision::kKeep;
}

}  // namespace

CleanDecision clean_pair(const SentencePair& pair) {
  if (pair.source.size() == pair.target.size()) {
    bool same = true;
    for (std::size_t i = 0; i < pair.source.size(); ++i) {
      if (pair.source[i].text != pair.target[i].text) {
        same = false;
        break;
      }
    }
    if (same) return CleanDecision::kIdentical;
  }
  for (const auto* side : {&pair.source, &pair.target}) {
    for (const Token& t : *side) {
      CleanDecision d = scan_token(t.text);
      if (d != CleanDecision::kKeep) return d;
    }
  }
  return CleanDecision::kKeep;
}

}  // namespace gecsynth
