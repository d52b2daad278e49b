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

#include <cstdlib>
#include <string>

#include "gecsynth/error.h"
#include "gecsynth/kernels/levenshtein.h"

namespace gecsynth::kernels {

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  return avx2_compiled() && __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {

Backend pick_initial_backend() {
  if (const char* env = std::getenv("GECSYNTH_KERNEL")) {
    const std::string v(env);
    if (v == "scalar") return Backend::kScalar;
    if (v == "avx2") {
      if (!avx2_available())
        throw ConfigError("GECSYNTH_KERNEL=avx2 but AVX2 is not available");
      return Backend::kAvx2;
    }
    if (!v.empty())
      throw ConfigError("unknown GECSYNTH_KERNEL value: " + v);
  }
  return avx2_available() ? Backend::kAvx2 : Backend::kScalar;
}

Backend& backend_slot() {
  static Backend b = pick_initial_backend();
  return b;
}

}  // namespace

Backend active_backend() { return backend_slot(); }

void set_backend(Backend b) {
  if (b == Backend::kAvx2 && !avx2_available())
    throw ConfigError("AVX2 kernel is not available on this machine");
  backend_slot() = b;
}

std::string_view backend_name(Backend b) {
  return b == Backend::kAvx2 ? "avx2" : "scalar";
}

std::size_t levenshtein(std::span<const std::uint32_t> a,
                        std::span<const std::uint32_t> b) {
  // Common prefix/suffix contributes no edits; strip it so the DP only
  // sees the changed core.
  std::size_t n = a.size();
  std::size_t m = b.size();
  std::size_t p = 0;
  while (p < n && p < m && a[p] == b[p]) ++p;
  std::size_t q = 0;
  while (q < n - p && q < m - p && a[n - 1 - q] == b[m - 1 - q]) ++q;
  const auto core_a = a.subspan(p, n - p - q);
  const auto core_b = b.subspan(p, m - p - q);
  return backend_slot() == Backend::kAvx2 ? levenshtein_avx2(core_a, core_b)
                                          : levenshtein_scalar(core_a, core_b);
}

}  // namespace gecsynth::kernels
