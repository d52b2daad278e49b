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

#include <algorithm>
#include <vector>

#include "gecsynth/kernels/levenshtein.h"

namespace gecsynth::kernels {

// Reference kernel: two-row dynamic program, O(n*m) time, O(m) space.
std::size_t levenshtein_scalar(std::span<const std::uint32_t> a,
                               std::span<const std::uint32_t> b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  if (n == 0) return m;
  if (m == 0) return n;

  thread_local std::vector<std::uint32_t> row_storage;
  row_storage.resize(m + 1);
  std::uint32_t* row = row_storage.data();
  for (std::size_t j = 0; j <= m; ++j) row[j] = static_cast<std::uint32_t>(j);

  for (std::size_t i = 1; i <= n; ++i) {
    std::uint32_t diag = row[0];
    row[0] = static_cast<std::uint32_t>(i);
    const std::uint32_t ai = a[i - 1];
    for (std::size_t j = 1; j <= m; ++j) {
      const std::uint32_t via_diag = diag + (ai != b[j - 1] ? 1u : 0u);
      const std::uint32_t via_edge = std::min(row[j], row[j - 1]) + 1u;
      diag = row[j];
      row[j] = std::min(via_diag, via_edge);
    }
  }
  return row[m];
}

}  // namespace gecsynth::kernels
