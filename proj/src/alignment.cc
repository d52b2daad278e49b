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

#include "gecsynth/alignment.h"

#include <algorithm>
#include <cassert>
#include <string_view>
#include <unordered_map>

#include "gecsynth/error.h"
#include "gecsynth/kernels/levenshtein.h"

namespace gecsynth {

namespace {

// Interns both token sequences into dense uint32 IDs so the kernels compare
// integers instead of strings. The views key the scratch map and stay valid
// for the duration of one call.
struct InternScratch {
  std::unordered_map<std::string_view, std::uint32_t> ids;
  std::vector<std::uint32_t> a, b;
};

InternScratch& intern_pair(std::span<const Token> source,
                           std::span<const Token> target) {
  thread_local InternScratch s;
  s.ids.clear();
  s.a.clear();
  s.b.clear();
  s.a.reserve(source.size());
  s.b.reserve(target.size());
  auto id_of = [&](const Token& t) {
    auto [it, inserted] =
        s.ids.emplace(std::string_view(t.text),
                      static_cast<std::uint32_t>(s.ids.size()));
    (void)inserted;
    return it->second;
  };
  for (const Token& t : source) s.a.push_back(id_of(t));
  for (const Token& t : target) s.b.push_back(id_of(t));
  return s;
}

}  // namespace

std::size_t levenshtein(std::span<const Token> source,
                        std::span<const Token> target) {
  const InternScratch& s = intern_pair(source, target);
  return kernels::levenshtein(s.a, s.b);
}

std::vector<EditOp> align(std::span<const Token> source,
                          std::span<const Token> target) {
  const InternScratch& sc = intern_pair(source, target);
  std::span<const std::uint32_t> a = sc.a;
  std::span<const std::uint32_t> b = sc.b;

  // Matching prefix/suffix produces no ops; align only the changed core and
  // offset source/target positions by the prefix length afterwards.
  std::size_t n = a.size();
  std::size_t m = b.size();
  std::size_t pre = 0;
  while (pre < n && pre < m && a[pre] == b[pre]) ++pre;
  std::size_t suf = 0;
  while (suf < n - pre && suf < m - pre && a[n - 1 - suf] == b[m - 1 - suf])
    ++suf;
  a = a.subspan(pre, n - pre - suf);
  b = b.subspan(pre, m - pre - suf);
  n = a.size();
  m = b.size();

  // Full DP matrix, row-major, (n+1) x (m+1).
  thread_local std::vector<std::uint32_t> dp;
  const std::size_t stride = m + 1;
  dp.resize((n + 1) * stride);
  for (std::size_t j = 0; j <= m; ++j) dp[j] = static_cast<std::uint32_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    dp[i * stride] = static_cast<std::uint32_t>(i);
    const std::uint32_t ai = a[i - 1];
    for (std::size_t j = 1; j <= m; ++j) {
      const std::uint32_t via_diag =
          dp[(i - 1) * stride + (j - 1)] + (ai != b[j - 1] ? 1u : 0u);
      const std::uint32_t via_edge =
          std::min(dp[(i - 1) * stride + j], dp[i * stride + (j - 1)]) + 1u;
      dp[i * stride + j] = std::min(via_diag, via_edge);
    }
  }

  // Backtrace from the corner; preference Match > Replacement > Missing >
  // Unnecessary makes the minimal script unique.
  std::vector<EditOp> ops;
  ops.reserve(dp[n * stride + m]);
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    const std::uint32_t here = dp[i * stride + j];
    if (i > 0 && j > 0 && a[i - 1] == b[j - 1] &&
        here == dp[(i - 1) * stride + (j - 1)]) {
      --i;
      --j;
      continue;
    }
    if (i > 0 && j > 0 && here == dp[(i - 1) * stride + (j - 1)] + 1 &&
        a[i - 1] != b[j - 1]) {
      EditOp op;
      op.coarse = CoarseType::kReplacement;
      op.src_pos = static_cast<std::uint32_t>(pre + i - 1);
      op.tgt_pos = static_cast<std::uint32_t>(pre + j - 1);
      op.src_text = source[pre + i - 1].text;
      op.tgt_text = target[pre + j - 1].text;
      ops.push_back(std::move(op));
      --i;
      --j;
      continue;
    }
    if (j > 0 && here == dp[i * stride + (j - 1)] + 1) {
      EditOp op;
      op.coarse = CoarseType::kMissing;
      op.src_pos = static_cast<std::uint32_t>(pre + i);  // insertion point
      op.tgt_pos = static_cast<std::uint32_t>(pre + j - 1);
      op.tgt_text = target[pre + j - 1].text;
      ops.push_back(std::move(op));
      --j;
      continue;
    }
    assert(i > 0 && here == dp[(i - 1) * stride + j] + 1);
    EditOp op;
    op.coarse = CoarseType::kUnnecessary;
    op.src_pos = static_cast<std::uint32_t>(pre + i - 1);
    op.tgt_pos = static_cast<std::uint32_t>(pre + j);
    op.src_text = source[pre + i - 1].text;
    ops.push_back(std::move(op));
    --i;
  }
  std::reverse(ops.begin(), ops.end());
  return ops;
}

std::vector<Token> apply_edit_script(std::span<const Token> source,
                                     std::span<const EditOp> ops) {
  std::vector<const EditOp*> order;
  order.reserve(ops.size());
  for (const EditOp& op : ops) order.push_back(&op);
  std::stable_sort(order.begin(), order.end(),
                   [](const EditOp* x, const EditOp* y) {
                     if (x->src_pos != y->src_pos) return x->src_pos < y->src_pos;
                     return x->tgt_pos < y->tgt_pos;
                   });

  std::vector<Token> out(source.begin(), source.end());
  // Right-to-left application keeps positions of not-yet-applied ops valid.
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const EditOp& op = **it;
    switch (op.coarse) {
      case CoarseType::kMissing:
        if (op.src_pos > out.size() || !op.tgt_text)
          throw DataError("invalid missing-op in edit script");
        out.insert(out.begin() + op.src_pos, Token{*op.tgt_text, TokenKind::kWord});
        break;
      case CoarseType::kUnnecessary:
        if (op.src_pos >= out.size())
          throw DataError("invalid unnecessary-op in edit script");
        out.erase(out.begin() + op.src_pos);
        break;
      case CoarseType::kReplacement:
        if (op.src_pos >= out.size() || !op.tgt_text)
          throw DataError("invalid replacement-op in edit script");
        out[op.src_pos].text = *op.tgt_text;
        break;
    }
  }
  return out;
}

PairMetrics pair_metrics(const SentencePair& pair) {
  if (pair.target.empty()) throw DataError("zero-length correction");
  PairMetrics m;
  m.distance = levenshtein(pair.source, pair.target);
  m.target_len = pair.target.size();
  return m;
}

void CoarseCounts::add(CoarseType t, std::uint64_t k) {
  switch (t) {
    case CoarseType::kMissing: missing += k; break;
    case CoarseType::kUnnecessary: unnecessary += k; break;
    case CoarseType::kReplacement: replacement += k; break;
  }
}

void CoarseCounts::merge(const CoarseCounts& other) {
  missing += other.missing;
  unnecessary += other.unnecessary;
  replacement += other.replacement;
}

CoarseCounts coarse_counts(std::span<const EditOp> ops) {
  CoarseCounts c;
  for (const EditOp& op : ops) c.add(op.coarse);
  return c;
}

void CorpusAccumulator::add_pair(const PairMetrics& m, const CoarseCounts& c,
                                 std::uint64_t source_len) {
  distance_sum += m.distance;
  target_len_sum += m.target_len;
  source_len_sum += source_len;
  pair_count += 1;
  if (source_len == 0) empty_source_pairs += 1;
  coarse.merge(c);
}

void CorpusAccumulator::merge(const CorpusAccumulator& other) {
  distance_sum += other.distance_sum;
  target_len_sum += other.target_len_sum;
  source_len_sum += other.source_len_sum;
  pair_count += other.pair_count;
  empty_source_pairs += other.empty_source_pairs;
  coarse.merge(other.coarse);
}

double CorpusAccumulator::error_rate() const {
  if (pair_count == 0) throw DataError("empty corpus");
  return static_cast<double>(distance_sum) /
         static_cast<double>(target_len_sum);
}

}  // namespace gecsynth
