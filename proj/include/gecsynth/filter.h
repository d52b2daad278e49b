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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gecsynth/edit.h"

namespace gecsynth {

// Interns error-type codes ("M", "U", "R" or fine codes like "R:VERB:SVA")
// into dense IDs for compact per-pair records.
class TypeTable {
 public:
  std::uint32_t intern(std::string_view code);
  const std::string& name(std::uint32_t id) const { return names_[id]; }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::uint32_t, std::less<>> ids_;
};

// Everything the filters need to know about one pair; the text itself is
// not kept, so a corpus of a hundred million pairs fits in memory while the
// actual lines are re-streamed for output.
struct AnnotatedPair {
  std::uint64_t index = 0;  // position in the input corpus
  std::uint32_t distance = 0;
  std::uint32_t target_len = 0;
  std::uint32_t source_len = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> type_counts;  // (id, n)

  double error_rate() const {
    return static_cast<double>(distance) / static_cast<double>(target_len);
  }
  std::uint32_t count_of(std::uint32_t type_id) const;
};

struct FilterConfig {
  double target_error_rate = 0.4;
  double theta = 0.05;
  std::map<std::string, double> type_ratio = {{"M", 1}, {"U", 1}, {"R", 1}};

  enum class TypeSource { kAlignCoarse, kExternalM2 };
  TypeSource type_source = TypeSource::kAlignCoarse;

  // Use the strict published-pseudocode deletion/termination conditions
  // instead of the goal-consistent ones (see balance_type_ratios).
  bool literal_mode = false;
  bool drop_empty_source = true;

  void validate() const;  // throws ConfigError
};

// Counts error types for one pair. The coarse path aligns the pair itself;
// the external path tallies caller-provided type codes (one per edit).
AnnotatedPair annotate_align(const SentencePair& pair, std::uint64_t index,
                             TypeTable& table);
AnnotatedPair annotate_external(const SentencePair& pair,
                                std::span<const std::string> edit_types,
                                std::uint64_t index, TypeTable& table);

struct RateFilterStats {
  std::uint64_t considered = 0;
  std::uint64_t removed = 0;
  double rate_before = 0.0;
  double rate_after = 0.0;
};

// Removes the lowest-rate pairs (ties by original index) until the corpus
// aggregate error rate reaches target * (1 - theta). keep[i] corresponds to
// pairs[i]; entries already false are ignored and stay false. Throws
// DataError("target error rate unreachable") when even the single
// highest-rate pair cannot reach the bound.
RateFilterStats filter_by_error_rate(std::span<const AnnotatedPair> pairs,
                                     double target_error_rate, double theta,
                                     std::vector<std::uint8_t>& keep);

struct BenchmarkInfo {
  std::string type;      // minimum-ratio type code (lexicographic on ties)
  std::uint64_t value = 0;  // that type's corpus count, the quota scale B
};

// Throws DataError("benchmark type absent from corpus") when the count is 0.
BenchmarkInfo compute_benchmark(const std::map<std::string, std::uint64_t>& et_sum,
                                const std::map<std::string, double>& type_ratio);

struct BalanceStats {
  std::string benchmark_type;
  std::uint64_t benchmark = 0;
  std::map<std::string, double> quota;  // per ratio key, before tolerance
  std::uint64_t removed = 0;
  std::map<std::string, std::uint64_t> counts_before;
  std::map<std::string, std::uint64_t> counts_after;
  bool balanced = false;
  std::map<std::string, std::uint64_t> residual_over_quota;
  std::vector<std::uint64_t> removed_indices;  // in removal order
};

// One pass in corpus order. A pair is removed iff it touches a type whose
// running total still exceeds quota * (1 + theta) and its removal keeps
// every type at or above quota * (1 - theta); the pass stops as soon as all
// upper bounds hold. A corpus that cannot be balanced is returned as-is
// with the residual over-quota types reported. literal_mode instead removes
// a pair iff every type would drop below the lower bound and stops once
// every total exceeds the upper bound.
//
// The three-argument form derives the benchmark from the corpus itself;
// the overload takes it as given (the pass is a fixpoint for a fixed
// benchmark: rerunning with the same B removes nothing).
BalanceStats balance_type_ratios(std::span<const AnnotatedPair> pairs,
                                 const FilterConfig& config,
                                 TypeTable& table,
                                 std::vector<std::uint8_t>& keep);
BalanceStats balance_type_ratios(std::span<const AnnotatedPair> pairs,
                                 const FilterConfig& config,
                                 TypeTable& table,
                                 std::vector<std::uint8_t>& keep,
                                 const BenchmarkInfo& benchmark);

}  // namespace gecsynth
