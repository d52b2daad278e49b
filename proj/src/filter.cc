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

#include "gecsynth/filter.h"

#include <algorithm>
#include <cassert>

#include "gecsynth/alignment.h"
#include "gecsynth/error.h"

namespace gecsynth {

std::uint32_t TypeTable::intern(std::string_view code) {
  auto it = ids_.find(code);
  if (it != ids_.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(names_.size());
  names_.emplace_back(code);
  ids_.emplace(std::string(code), id);
  return id;
}

std::uint32_t AnnotatedPair::count_of(std::uint32_t type_id) const {
  for (const auto& [id, n] : type_counts)
    if (id == type_id) return n;
  return 0;
}

void FilterConfig::validate() const {
  if (!(target_error_rate >= 0.0 && target_error_rate <= 1.0))
    throw ConfigError("target error rate must be in [0,1]");
  if (!(theta >= 0.0 && theta < 1.0))
    throw ConfigError("theta must be in [0,1)");
  if (type_ratio.empty()) throw ConfigError("type ratio must be non-empty");
  for (const auto& [code, weight] : type_ratio) {
    if (code.empty()) throw ConfigError("type ratio has an empty type code");
    if (!(weight > 0.0))
      throw ConfigError("type ratio weight for " + code + " must be positive");
  }
}

namespace {

void sorted_counts(std::vector<std::pair<std::uint32_t, std::uint32_t>>& counts) {
  std::sort(counts.begin(), counts.end());
}

}  // namespace

AnnotatedPair annotate_align(const SentencePair& pair, std::uint64_t index,
                             TypeTable& table) {
  if (pair.target.empty()) throw DataError("zero-length correction");
  AnnotatedPair out;
  out.index = index;
  out.target_len = static_cast<std::uint32_t>(pair.target.size());
  out.source_len = static_cast<std::uint32_t>(pair.source.size());
  const std::vector<EditOp> ops = align(pair.source, pair.target);
  out.distance = static_cast<std::uint32_t>(ops.size());
  const CoarseCounts c = coarse_counts(ops);
  if (c.missing) out.type_counts.emplace_back(table.intern("M"), c.missing);
  if (c.unnecessary)
    out.type_counts.emplace_back(table.intern("U"), c.unnecessary);
  if (c.replacement)
    out.type_counts.emplace_back(table.intern("R"), c.replacement);
  sorted_counts(out.type_counts);
  return out;
}

AnnotatedPair annotate_external(const SentencePair& pair,
                                std::span<const std::string> edit_types,
                                std::uint64_t index, TypeTable& table) {
  if (pair.target.empty()) throw DataError("zero-length correction");
  AnnotatedPair out;
  out.index = index;
  out.target_len = static_cast<std::uint32_t>(pair.target.size());
  out.source_len = static_cast<std::uint32_t>(pair.source.size());
  out.distance = static_cast<std::uint32_t>(levenshtein(pair.source, pair.target));
  for (const std::string& code : edit_types) {
    const std::uint32_t id = table.intern(code);
    bool found = false;
    for (auto& [existing, n] : out.type_counts) {
      if (existing == id) {
        ++n;
        found = true;
        break;
      }
    }
    if (!found) out.type_counts.emplace_back(id, 1);
  }
  sorted_counts(out.type_counts);
  return out;
}

RateFilterStats filter_by_error_rate(std::span<const AnnotatedPair> pairs,
                                     double target_error_rate, double theta,
                                     std::vector<std::uint8_t>& keep) {
  assert(keep.size() == pairs.size());
  std::vector<std::uint32_t> order;
  order.reserve(pairs.size());
  std::uint64_t dist_sum = 0;
  std::uint64_t len_sum = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!keep[i]) continue;
    order.push_back(static_cast<std::uint32_t>(i));
    dist_sum += pairs[i].distance;
    len_sum += pairs[i].target_len;
  }
  if (order.empty()) throw DataError("empty corpus");

  RateFilterStats stats;
  stats.considered = order.size();
  stats.rate_before =
      static_cast<double>(dist_sum) / static_cast<double>(len_sum);

  // Ascending per-pair rate, ties by original index. Rates compare exactly
  // via cross multiplication.
  std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
    const auto& a = pairs[x];
    const auto& b = pairs[y];
    const auto lhs = static_cast<unsigned __int128>(a.distance) * b.target_len;
    const auto rhs = static_cast<unsigned __int128>(b.distance) * a.target_len;
    if (lhs != rhs) return lhs < rhs;
    return a.index < b.index;
  });

  const double bound = target_error_rate * (1.0 - theta);
  std::size_t next = 0;
  while (static_cast<double>(dist_sum) <
         bound * static_cast<double>(len_sum)) {
    if (order.size() - next <= 1)
      throw DataError("target error rate unreachable");
    const AnnotatedPair& victim = pairs[order[next]];
    // The lowest remaining rate never exceeds the aggregate, so each
    // removal moves the aggregate up (or keeps it, never down).
    assert(static_cast<unsigned __int128>(victim.distance) * len_sum <=
           static_cast<unsigned __int128>(dist_sum) * victim.target_len);
    keep[order[next]] = 0;
    dist_sum -= victim.distance;
    len_sum -= victim.target_len;
    ++next;
    ++stats.removed;
  }
  stats.rate_after =
      static_cast<double>(dist_sum) / static_cast<double>(len_sum);
  return stats;
}

BenchmarkInfo compute_benchmark(
    const std::map<std::string, std::uint64_t>& et_sum,
    const std::map<std::string, double>& type_ratio) {
  if (type_ratio.empty()) throw ConfigError("type ratio must be non-empty");
  BenchmarkInfo best;
  double best_weight = 0.0;
  bool first = true;
  for (const auto& [code, weight] : type_ratio) {
    // std::map iterates in key order, so "<" keeps the lexicographically
    // smallest code on weight ties.
    if (first || weight < best_weight) {
      first = false;
      best_weight = weight;
      best.type = code;
      const auto it = et_sum.find(code);
      if (it == et_sum.end())
        throw DataError("type sums missing benchmark candidate " + code);
      best.value = it->second;
    }
  }
  if (best.value == 0) throw DataError("benchmark type absent from corpus");
  return best;
}

BalanceStats balance_type_ratios(std::span<const AnnotatedPair> pairs,
                                 const FilterConfig& config,
                                 TypeTable& table,
                                 std::vector<std::uint8_t>& keep,
                                 const BenchmarkInfo& benchmark) {
  assert(keep.size() == pairs.size());
  config.validate();

  // Ratio keys and their quota scale. Interning here also covers types the
  // corpus never saw (their sum is 0).
  std::vector<std::uint32_t> ratio_ids;
  std::vector<double> ratio_weights;
  for (const auto& [code, weight] : config.type_ratio) {
    ratio_ids.push_back(table.intern(code));
    ratio_weights.push_back(weight);
  }

  std::vector<std::uint64_t> sums(table.size(), 0);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!keep[i]) continue;
    for (const auto& [id, n] : pairs[i].type_counts) sums[id] += n;
  }

  std::map<std::string, std::uint64_t> sum_map;
  for (std::size_t k = 0; k < ratio_ids.size(); ++k)
    sum_map[table.name(ratio_ids[k])] = sums[ratio_ids[k]];

  BalanceStats stats;
  const BenchmarkInfo& bench = benchmark;
  if (bench.value == 0) throw DataError("benchmark type absent from corpus");
  const auto bench_it = config.type_ratio.find(bench.type);
  if (bench_it == config.type_ratio.end())
    throw ConfigError("benchmark type " + bench.type + " is not in the ratio");
  stats.benchmark_type = bench.type;
  stats.benchmark = bench.value;
  stats.counts_before = sum_map;

  const double bench_weight = bench_it->second;
  const double b = static_cast<double>(bench.value);
  std::vector<double> upper(ratio_ids.size());
  std::vector<double> lower(ratio_ids.size());
  for (std::size_t k = 0; k < ratio_ids.size(); ++k) {
    // Ratios are relative weights: the benchmark type's quota is B itself.
    const double quota = ratio_weights[k] / bench_weight * b;
    stats.quota[table.name(ratio_ids[k])] = quota;
    upper[k] = quota * (1.0 + config.theta);
    lower[k] = quota * (1.0 - config.theta);
  }

  auto within_upper = [&]() {
    for (std::size_t k = 0; k < ratio_ids.size(); ++k)
      if (static_cast<double>(sums[ratio_ids[k]]) > upper[k]) return false;
    return true;
  };

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!config.literal_mode && within_upper()) break;
    if (!keep[i]) continue;
    const AnnotatedPair& p = pairs[i];

    bool remove;
    if (!config.literal_mode) {
      bool touches_over = false;
      bool safe = true;
      for (std::size_t k = 0; k < ratio_ids.size(); ++k) {
        const std::uint64_t sum = sums[ratio_ids[k]];
        const std::uint32_t in_pair = p.count_of(ratio_ids[k]);
        if (in_pair > 0 && static_cast<double>(sum) > upper[k])
          touches_over = true;
        if (static_cast<double>(sum - in_pair) < lower[k]) safe = false;
      }
      remove = touches_over && safe;
    } else {
      remove = true;
      for (std::size_t k = 0; k < ratio_ids.size(); ++k) {
        const std::uint64_t sum = sums[ratio_ids[k]];
        const std::uint32_t in_pair = p.count_of(ratio_ids[k]);
        if (!(static_cast<double>(sum - in_pair) < lower[k])) {
          remove = false;
          break;
        }
      }
    }

    if (remove) {
      keep[i] = 0;
      ++stats.removed;
      stats.removed_indices.push_back(p.index);
      for (const auto& [id, n] : p.type_counts) sums[id] -= n;
    }

    if (config.literal_mode) {
      bool all_above = true;
      for (std::size_t k = 0; k < ratio_ids.size(); ++k) {
        if (!(static_cast<double>(sums[ratio_ids[k]]) > upper[k])) {
          all_above = false;
          break;
        }
      }
      if (all_above) break;
    }
  }

  for (std::size_t k = 0; k < ratio_ids.size(); ++k) {
    const std::string& name = table.name(ratio_ids[k]);
    const std::uint64_t sum = sums[ratio_ids[k]];
    stats.counts_after[name] = sum;
    if (static_cast<double>(sum) > upper[k])
      stats.residual_over_quota[name] = sum;
  }
  stats.balanced = stats.residual_over_quota.empty();
  return stats;
}

BalanceStats balance_type_ratios(std::span<const AnnotatedPair> pairs,
                                 const FilterConfig& config,
                                 TypeTable& table,
                                 std::vector<std::uint8_t>& keep) {
  config.validate();
  std::map<std::string, std::uint64_t> sum_map;
  for (const auto& [code, weight] : config.type_ratio) {
    (void)weight;
    sum_map[code] = 0;
  }
  std::map<std::uint32_t, std::string> wanted;
  for (const auto& [code, weight] : config.type_ratio) {
    (void)weight;
    wanted.emplace(table.intern(code), code);
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!keep[i]) continue;
    for (const auto& [id, n] : pairs[i].type_counts) {
      const auto it = wanted.find(id);
      if (it != wanted.end()) sum_map[it->second] += n;
    }
  }
  const BenchmarkInfo bench = compute_benchmark(sum_map, config.type_ratio);
  return balance_type_ratios(pairs, config, table, keep, bench);
}

}  // namespace gecsynth
