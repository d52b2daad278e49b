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
#include <span>
#include <vector>

#include "gecsynth/edit.h"

namespace gecsynth {

// Token-level unit-cost edit distance. Token equality is exact string
// match, case-sensitive.
std::size_t levenshtein(std::span<const Token> source,
                        std::span<const Token> target);

// A minimal edit script from source to target; its length always equals
// levenshtein(source, target). Deterministic: the backtrace walks from the
// DP corner preferring Match > Replacement > Missing > Unnecessary, and
// ops come out ordered by target position, then source position.
std::vector<EditOp> align(std::span<const Token> source,
                          std::span<const Token> target);

// Replays an edit script on source, producing target. Used to validate
// scripts and corruption records.
std::vector<Token> apply_edit_script(std::span<const Token> source,
                                     std::span<const EditOp> ops);

// Throws DataError("zero-length correction") on an empty target.
PairMetrics pair_metrics(const SentencePair& pair);

struct CoarseCounts {
  std::uint64_t missing = 0;
  std::uint64_t unnecessary = 0;
  std::uint64_t replacement = 0;

  std::uint64_t total() const { return missing + unnecessary + replacement; }
  void add(CoarseType t, std::uint64_t k = 1);
  void merge(const CoarseCounts& other);
};

CoarseCounts coarse_counts(std::span<const EditOp> ops);

// Corpus-level tallies. The corpus error rate is the ratio of the distance
// sum to the correction-length sum, not the mean of per-pair rates.
// Integer sums merge associatively, so shards can be reduced in any order.
struct CorpusAccumulator {
  std::uint64_t distance_sum = 0;
  std::uint64_t target_len_sum = 0;
  std::uint64_t source_len_sum = 0;
  std::uint64_t pair_count = 0;
  std::uint64_t empty_source_pairs = 0;
  CoarseCounts coarse;

  void add_pair(const PairMetrics& m, const CoarseCounts& c,
                std::uint64_t source_len);
  void merge(const CorpusAccumulator& other);

  // Throws DataError on an empty corpus.
  double error_rate() const;
};

}  // namespace gecsynth
