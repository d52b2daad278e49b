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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace gecsynth::kernels {

// Unit-cost edit distance over token IDs. This is the arithmetic inner loop
// of corpus measurement and filtering; sequences are interned to uint32 IDs
// by the caller. Two implementations with identical results:
//
//   levenshtein_scalar - reference two-row dynamic program
//   levenshtein_avx2   - anti-diagonal formulation, 8 cells per step
//
// The AVX2 variant exists only on x86-64 builds and is chosen at runtime
// when the CPU reports AVX2 support.

std::size_t levenshtein_scalar(std::span<const std::uint32_t> a,
                               std::span<const std::uint32_t> b);

std::size_t levenshtein_avx2(std::span<const std::uint32_t> a,
                             std::span<const std::uint32_t> b);

// Whether the AVX2 translation unit was built with AVX2 code at all.
bool avx2_compiled();
// Compiled in and supported by this CPU.
bool avx2_available();

enum class Backend { kScalar, kAvx2 };

// The dispatcher honors the GECSYNTH_KERNEL environment variable
// ("scalar" or "avx2") and otherwise picks the best available backend.
Backend active_backend();
void set_backend(Backend b);  // throws ConfigError if unavailable
std::string_view backend_name(Backend b);

// Dispatched entry point. Strips common prefix/suffix before running the
// active backend, which keeps the DP proportional to the edited core (GEC
// pairs are mostly identical).
std::size_t levenshtein(std::span<const std::uint32_t> a,
                        std::span<const std::uint32_t> b);

}  // namespace gecsynth::kernels
