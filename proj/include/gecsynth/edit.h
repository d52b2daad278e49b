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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gecsynth/token.h"

namespace gecsynth {

// Coarse error categories, seen from the errorful (source) side:
//   Missing      - a token of the correction is absent from the source
//   Unnecessary  - the source carries a token the correction does not
//   Replacement  - a source token differs from the aligned correction token
enum class CoarseType : std::uint8_t { kMissing, kUnnecessary, kReplacement };

inline char coarse_code(CoarseType t) {
  switch (t) {
    case CoarseType::kMissing: return 'M';
    case CoarseType::kUnnecessary: return 'U';
    case CoarseType::kReplacement: return 'R';
  }
  return '?';
}

// One unit edit of a minimal edit script transforming source into target.
//   Missing:     src_pos is the insertion point in the source, tgt_text set.
//   Unnecessary: src_pos indexes the spurious source token, src_text set.
//   Replacement: both texts set and different.
struct EditOp {
  CoarseType coarse = CoarseType::kReplacement;
  std::uint32_t src_pos = 0;
  std::uint32_t tgt_pos = 0;
  std::optional<std::string> src_text;
  std::optional<std::string> tgt_text;
  std::string fine_type;  // externally supplied code such as "R:VERB:SVA"
};

// An errorful sentence and its correction.
struct SentencePair {
  std::vector<Token> source;
  std::vector<Token> target;
};

// Distance and Length of one pair; the error rate is their exact ratio and
// may exceed 1 when the source strays far from a short correction.
struct PairMetrics {
  std::uint64_t distance = 0;
  std::uint64_t target_len = 0;

  double error_rate() const {
    return static_cast<double>(distance) / static_cast<double>(target_len);
  }
};

}  // namespace gecsynth
