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
#include <string>
#include <string_view>
#include <vector>

#include "gecsynth/edit.h"
#include "gecsynth/rng.h"
#include "gecsynth/token.h"
#include "gecsynth/vocab.h"

namespace gecsynth {

// Controls the noise injected into grammatical text. Each token of a
// sentence is corrupted independently with probability error_rate; the
// operation applied is drawn from {delete, insert-left, replace} with the
// normalized weights. All randomness is keyed on (seed, line_index), so
// output is independent of threading and sharding.
struct CorruptionConfig {
  double error_rate = 0.4;
  double weight_missing = 1.0;      // delete the token
  double weight_unnecessary = 1.0;  // insert a sampled token to its left
  double weight_replacement = 1.0;  // replace it with a sampled token
  std::uint64_t seed = 0;
  PunctuationSet punct = PunctuationSet::default_set();

  enum class Sampling { kUniform, kFrequencyWeighted };
  Sampling insertion_sampling = Sampling::kUniform;

  void validate() const;  // throws ConfigError
};

// Parses "M:U:R" weight triples such as "1:1:1" or "4:6:1".
void parse_ratio(std::string_view spec, CorruptionConfig& config);

// Draws tokens from a vocabulary under the constraints the corruption rules
// need. Exclusion is done by index/weight skipping, never by rejection, so
// a draw consumes exactly one generator step and cannot stall on skewed
// count distributions.
class TokenSampler {
 public:
  TokenSampler(const Vocabulary& vocab, const PunctuationSet& punct,
               CorruptionConfig::Sampling sampling);

  // Any vocabulary token.
  std::string_view sample_any(SplitMix64& rng) const;
  // A punctuation-set member other than exclude; requires >= 2 members.
  std::string_view sample_punct_excluding(std::string_view exclude,
                                          SplitMix64& rng) const;
  // A vocabulary token different from exclude.
  std::string_view sample_differing(std::string_view exclude,
                                    SplitMix64& rng) const;

 private:
  std::string_view sample_excluding_index(std::size_t skip,
                                          SplitMix64& rng) const;

  const Vocabulary& vocab_;
  const PunctuationSet& punct_;
  CorruptionConfig::Sampling sampling_;
};

// One corrupted sentence: pair.source is the corrupted text, pair.target
// the original, and applied_ops records exactly what was done (replaying
// them on the source restores the target).
struct CorruptionRecord {
  SentencePair pair;
  std::vector<EditOp> applied_ops;
};

CorruptionRecord corrupt_sentence(std::span<const Token> tokens,
                                  const TokenSampler& sampler,
                                  const CorruptionConfig& config,
                                  std::uint64_t line_index);

}  // namespace gecsynth
