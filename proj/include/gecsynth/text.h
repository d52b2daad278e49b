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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gecsynth/edit.h"
#include "gecsynth/token.h"

namespace gecsynth {

// Splits on runs of ASCII whitespace. No normalization, no case folding:
// inputs are expected to be pre-tokenized text, one sentence per line.
std::vector<Token> tokenize(std::string_view line, const PunctuationSet& punct);

// Inverse of tokenize up to whitespace runs: single-space join.
std::string join_tokens(std::span<const Token> tokens);

enum class CleanDecision : std::uint8_t {
  kKeep,
  kIdentical,    // source == target, nothing to learn from
  kUrl,          // a token starts with http://, https:// or www.
  kIllegalChar,  // invalid UTF-8 or control characters
  kEmoji,        // codepoint in U+1F300..U+1FAFF or U+2600..U+27BF
};

std::string_view clean_decision_name(CleanDecision d);

// Drop test for one parallel pair. Checks run in the order the enum lists;
// the first hit wins.
CleanDecision clean_pair(const SentencePair& pair);

}  // namespace gecsynth
