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

#include "gecsynth/kernels/levenshtein.h"

#if defined(__AVX2__)

#include <immintrin.h>

#include <algorithm>
#include <vector>

namespace gecsynth::kernels {

bool avx2_compiled() { return true; }

// Anti-diagonal formulation of the edit-distance DP. Cells of diagonal
// d = i + j depend only on diagonals d-1 and d-2, so a whole diagonal is
// independent and can be computed 8 cells at a time with 32-bit lanes.
//
// Buffers are indexed by row i. For cell (i, j = d - i):
//   up    (i-1, j)   -> prev1[i-1]
//   left  (i,   j-1) -> prev1[i]
//   diag  (i-1, j-1) -> prev2[i-1]
// b is stored reversed so that the j-side operand b[d-i-1] == brev[m-d+i]
// is a contiguous forward load in i, matching the a-side load a[i-1].
std::size_t levenshtein_avx2(std::span<const std::uint32_t> a,
                             std::span<const std::uint32_t> b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  if (n == 0) return m;
  if (m == 0) return n;

  struct Scratch {
    std::vector<std::uint32_t> d0, d1, d2, brev;
  };
  thread_local Scratch s;
  s.d0.resize(n + 1);
  s.d1.resize(n + 1);
  s.d2.resize(n + 1);
  s.brev.resize(m);
  for (std::size_t k = 0; k < m; ++k) s.brev[k] = b[m - 1 - k];

  std::uint32_t* prev2 = s.d0.data();  // diagonal d-2
  std::uint32_t* prev1 = s.d1.data();  // diagonal d-1
  std::uint32_t* cur = s.d2.data();    // diagonal d
  prev1[0] = 0;                        // D[0][0]

  const std::uint32_t* ap = a.data();
  const std::uint32_t* bp = s.brev.data();
  const __m256i ones = _mm256_set1_epi32(1);

  for (std::size_t d = 1; d <= n + m; ++d) {
    if (d <= m) cur[0] = static_cast<std::uint32_t>(d);  // D[0][d]
    if (d <= n) cur[d] = static_cast<std::uint32_t>(d);  // D[d][0]
    const std::size_t lo = d > m ? d - m : 1;
    const std::size_t hi = std::min(n, d - 1);
    // brev index for row i is boff + i;  lo >= d - m keeps it >= 0.
    const std::ptrdiff_t boff =
        static_cast<std::ptrdiff_t>(m) - static_cast<std::ptrdiff_t>(d);

    std::size_t i = lo;
    for (; i + 7 <= hi; i += 8) {
      const __m256i up =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(prev1 + i - 1));
      const __m256i left =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(prev1 + i));
      const __m256i diag =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(prev2 + i - 1));
      const __m256i av =
          _mm256_loadu_si256(reinterpret_cast<const __m256i*>(ap + i - 1));
      const __m256i bv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(
          bp + static_cast<std::size_t>(boff + static_cast<std::ptrdiff_t>(i))));
      // cmpeq yields all-ones (== -1) on equality, so adding it to 1 gives
      // the substitution cost directly.
      const __m256i cost = _mm256_add_epi32(ones, _mm256_cmpeq_epi32(av, bv));
      const __m256i via_diag = _mm256_add_epi32(diag, cost);
      const __m256i via_edge =
          _mm256_add_epi32(_mm256_min_epu32(up, left), ones);
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(cur + i),
                          _mm256_min_epu32(via_diag, via_edge));
    }
    for (; i <= hi; ++i) {
      const std::uint32_t cost =
          ap[i - 1] !=
                  bp[static_cast<std::size_t>(boff + static_cast<std::ptrdiff_t>(i))]
              ? 1u
              : 0u;
      cur[i] = std::min(std::min(prev1[i - 1], prev1[i]) + 1u,
                        prev2[i - 1] + cost);
    }

    std::uint32_t* recycled = prev2;
    prev2 = prev1;
    prev1 = cur;
    cur = recycled;
  }
  return prev1[n];  // single cell of diagonal n + m
}

}  // namespace gecsynth::kernels

#else  // !defined(__AVX2__)

#include "gecsynth/error.h"

namespace gecsynth::kernels {

bool avx2_compiled() { return false; }

std::size_t levenshtein_avx2(std::span<const std::uint32_t>,
                             std::span<const std::uint32_t>) {
  throw ConfigError("AVX2 kernel not compiled into this binary");
}

}  // namespace gecsynth::kernels

#endif
