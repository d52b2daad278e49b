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

#include "gecsynth/corrupt.h"

#include <algorithm>
#include <charconv>

#include "gecsynth/error.h"

namespace gecsynth {

void CorruptionConfig::validate() const {
  if (!(error_rate >= 0.0 && error_rate <= 1.0))
    throw ConfigError("error rate must be in [0,1]");
  if (weight_missing < 0 || weight_unnecessary < 0 || weight_replacement < 0)
    throw ConfigError("operation weights must be non-negative");
  if (weight_missing + weight_unnecessary + weight_replacement <= 0)
    throw ConfigError("operation weights must not all be zero");
  if (punct.size() == 0) throw ConfigError("punctuation set must be non-empty");
}

void parse_ratio(std::string_view spec, CorruptionConfig& config) {
  double w[3];
  std::size_t pos = 0;
  for (int k = 0; k < 3; ++k) {
    const std::size_t next = spec.find(':', pos);
    const bool last = k == 2;
    if (last != (next == std::string_view::npos))
      throw ConfigError("ratio must have the form M:U:R, e.g. 1:1:1");
    const std::string_view field =
        spec.substr(pos, last ? std::string_view::npos : next - pos);
    const char* first = field.data();
    const char* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, end, w[k]);
    if (ec != std::errc() || ptr != end || field.empty())
      throw ConfigError("ratio must have the form M:U:R, e.g. 1:1:1");
    pos = next + 1;
  }
  config.weight_missing = w[0];
  config.weight_unnecessary = w[1];
  config.weight_replacement = w[2];
}

TokenSampler::TokenSampler(const Vocabulary& vocab,
                           const PunctuationSet& punct,
                           CorruptionConfig::Sampling sampling)
    : vocab_(vocab), punct_(punct), sampling_(sampling) {
  if (vocab_.size() == 0) throw DataError("empty vocabulary");
}

std::string_view TokenSampler::sample_any(SplitMix64& rng) const {
  if (sampling_ == CorruptionConfig::Sampling::kUniform)
    return vocab_.entry(rng.next_below(vocab_.size()));
  const std::uint64_t r = rng.next_below(vocab_.total_count());
  // First entry whose prefix sum exceeds r.
  std::size_t lo = 0, hi = vocab_.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (vocab_.prefix_count(mid + 1) > r)
      hi = mid;
    else
      lo = mid + 1;
  }
  return vocab_.entry(lo);
}

std::string_view TokenSampler::sample_excluding_index(std::size_t skip,
                                                      SplitMix64& rng) const {
  if (vocab_.size() < 2)
    throw DataError("cannot sample a distinct token from a single-entry vocabulary");
  if (sampling_ == CorruptionConfig::Sampling::kUniform) {
    std::uint64_t idx = rng.next_below(vocab_.size() - 1);
    if (idx >= skip) ++idx;
    return vocab_.entry(idx);
  }
  const std::uint64_t excluded = vocab_.count(skip);
  const std::uint64_t mass = vocab_.total_count() - excluded;
  if (mass == 0)
    throw DataError("cannot sample a distinct token: excluded entry holds all mass");
  std::uint64_t r = rng.next_below(mass);
  if (r >= vocab_.prefix_count(skip)) r += excluded;  // hop over the excluded band
  std::size_t lo = 0, hi = vocab_.size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (vocab_.prefix_count(mid + 1) > r)
      hi = mid;
    else
      lo = mid + 1;
  }
  return vocab_.entry(lo);
}

std::string_view TokenSampler::sample_punct_excluding(std::string_view exclude,
                                                      SplitMix64& rng) const {
  if (punct_.size() < 2)
    throw DataError("punctuation replacement needs at least two punctuation members");
  std::size_t skip = punct_.size();
  for (std::size_t i = 0; i < punct_.size(); ++i) {
    if (punct_.member(i) == exclude) {
      skip = i;
      break;
    }
  }
  // Punctuation replacement is uniform over the member list; the set is
  // configuration, not corpus-derived, so counts do not apply.
  const std::size_t n = skip < punct_.size() ? punct_.size() - 1 : punct_.size();
  std::uint64_t idx = rng.next_below(n);
  if (skip < punct_.size() && idx >= skip) ++idx;
  return punct_.member(idx);
}

std::string_view TokenSampler::sample_differing(std::string_view exclude,
                                                SplitMix64& rng) const {
  const auto pos = vocab_.find(exclude);
  if (!pos) return sample_any(rng);
  return sample_excluding_index(*pos, rng);
}

CorruptionRecord corrupt_sentence(std::span<const Token> tokens,
                                  const TokenSampler& sampler,
                                  const CorruptionConfig& config,
                                  std::uint64_t line_index) {
  if (tokens.empty()) throw DataError("cannot corrupt an empty sentence");

  const double wsum = config.weight_missing + config.weight_unnecessary +
                      config.weight_replacement;
  const double p_missing = config.weight_missing / wsum;
  const double p_unnecessary = config.weight_unnecessary / wsum;

  SplitMix64 rng = SplitMix64::for_line(config.seed, line_index);

  CorruptionRecord rec;
  rec.pair.target.assign(tokens.begin(), tokens.end());
  std::vector<Token>& out = rec.pair.source;
  out.reserve(tokens.size() + tokens.size() / 4);

  // Iterate the original token positions; inserted tokens are never
  // corruption candidates within the same pass.
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (rng.next_double() >= config.error_rate) {
      out.push_back(t);
      continue;
    }
    const double op = rng.next_double();
    if (op < p_missing) {
      // Delete the token: the correction keeps it, so the source misses it.
      EditOp e;
      e.coarse = CoarseType::kMissing;
      e.src_pos = static_cast<std::uint32_t>(out.size());
      e.tgt_pos = static_cast<std::uint32_t>(i);
      e.tgt_text = t.text;
      rec.applied_ops.push_back(std::move(e));
    } else if (op < p_missing + p_unnecessary) {
      // Insert a sampled token to the left: spurious on the source side.
      std::string ins(sampler.sample_any(rng));
      EditOp e;
      e.coarse = CoarseType::kUnnecessary;
      e.src_pos = static_cast<std::uint32_t>(out.size());
      e.tgt_pos = static_cast<std::uint32_t>(i);
      e.src_text = ins;
      rec.applied_ops.push_back(std::move(e));
      out.push_back(config.punct.make_token(std::move(ins)));
      out.push_back(t);
    } else {
      // Replace. Punctuation stays within the punctuation set; anything
      // else draws from the vocabulary until distinct (done by exclusion).
      std::string rep =
          t.kind == TokenKind::kPunct
              ? std::string(sampler.sample_punct_excluding(t.text, rng))
              : std::string(sampler.sample_differing(t.text, rng));
      EditOp e;
      e.coarse = CoarseType::kReplacement;
      e.src_pos = static_cast<std::uint32_t>(out.size());
      e.tgt_pos = static_cast<std::uint32_t>(i);
      e.src_text = rep;
      e.tgt_text = t.text;
      rec.applied_ops.push_back(std::move(e));
      out.push_back(config.punct.make_token(std::move(rep)));
    }
  }
  return rec;
}

}  // namespace gecsynth
