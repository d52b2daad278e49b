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

namespace gecsynth {

// SplitMix64 (Steele, Lea & Flood 2014). Counter-based: the state walks a
// Weyl sequence and each output is a finalizer of the counter, so streams
// can be split by offsetting the counter. All randomness in this project
// derives from this generator; outputs are identical on every platform.
class SplitMix64 {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  // Finalizer: a bijective 64-bit mixer.
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  explicit constexpr SplitMix64(std::uint64_t state) : state_(state) {}

  // The per-line stream used by corruption: line k of seed s starts at
  // counter mix(s + kGamma * (k + 1)). Distinct lines of the same seed
  // are disjoint splits of one logical sequence.
  static constexpr SplitMix64 for_line(std::uint64_t seed, std::uint64_t line_index) {
    return SplitMix64(mix(seed + kGamma * (line_index + 1)));
  }

  constexpr std::uint64_t next() {
    state_ += kGamma;
    return mix(state_);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n), n >= 1. Uses the multiply-high reduction;
  // the bias is below n / 2^64 and irrelevant at corpus vocabulary sizes.
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace gecsynth
