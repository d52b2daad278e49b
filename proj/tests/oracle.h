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
//
// Test-only reference implementations, deliberately independent of the
// library's DP/backtrace code paths: edit distance straight from its
// recursive definition, plus brute-force counterparts of the two filters.

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gecsynth/edit.h"

namespace testoracle {

// Pure recursion, exponential; only for tiny sequences.
std::size_t distance_plain(std::span<const std::uint32_t> a,
                           std::span<const std::uint32_t> b);

// The same recursion with memoization on prefix lengths.
std::size_t distance_memo(std::span<const std::uint32_t> a,
                          std::span<const std::uint32_t> b);

// Token-sequence front end (compares token texts directly).
std::size_t distance_tokens(std::span<const gecsynth::Token> a,
                            std::span<const gecsynth::Token> b);

// Brute-force counterpart of the rate filter: pairs are (distance,
// target_len, original_index); returns the minimal number of pairs removed
// in ascending-rate order (ties by index) so that the aggregate rate
// reaches target * (1 - theta), or SIZE_MAX if no prefix (keeping at least
// one pair) can.
struct RatePair {
  std::uint64_t distance;
  std::uint64_t target_len;
  std::uint64_t index;
};
std::size_t min_prefix_removals(std::vector<RatePair> pairs, double target,
                                double theta);

// Exhaustive subset oracle for the ratio balancer: does any subset of the
// pairs keep every type's total within [lower[k], upper[k]]? Each pair is a
// per-type count vector aligned with lower/upper.
bool feasible_subset_exists(
    const std::vector<std::vector<std::uint64_t>>& pair_counts,
    const std::vector<double>& lower, const std::vector<double>& upper);

}  // namespace testoracle
