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

#pragma once

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "gecsynth/error.h"

namespace gecsynth {

enum class TokenKind { kWord, kPunct };

// One whitespace-delimited unit of a sentence. kind is kPunct exactly when
// the text is a member of the configured punctuation set.
struct Token {
  std::string text;
  TokenKind kind = TokenKind::kWord;

  bool operator==(const Token& other) const { return text == other.text; }
};

// The set of punctuation tokens that replacement is restricted to when the
// replaced token is itself punctuation. Member order is fixed so sampling
// by index is reproducible.
class PunctuationSet {
 public:
  PunctuationSet() = default;

  explicit PunctuationSet(std::vector<std::string> members) {
    for (auto& m : members) add(std::move(m));
    if (members_.empty()) throw ConfigError("punctuation set must be non-empty");
  }

  static PunctuationSet default_set() {
    return PunctuationSet({"'", "\"", ",", ".", "!", "?"});
  }

  // Parses a whitespace-separated member list, e.g. "' \" , . ! ?".
  static PunctuationSet parse(std::string_view spec);

  bool contains(std::string_view text) const {
    return lookup_.find(std::string(text)) != lookup_.end();
  }

  std::size_t size() const { return members_.size(); }
  const std::string& member(std::size_t i) const { return members_[i]; }
  const std::vector<std::string>& members() const { return members_; }

  TokenKind kind_of(std::string_view text) const {
    return contains(text) ? TokenKind::kPunct : TokenKind::kWord;
  }

  Token make_token(std::string text) const {
    TokenKind k = kind_of(text);
    return Token{std::move(text), k};
  }

 private:
  void add(std::string m) {
    if (m.empty()) return;
    if (lookup_.insert(m).second) members_.push_back(std::move(m));
  }

  std::vector<std::string> members_;
  std::unordered_set<std::string> lookup_;
};

}  // namespace gecsynth
