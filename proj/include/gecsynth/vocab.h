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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gecsynth {

// All distinct tokens of the corpora the vocabulary was built from, with
// occurrence counts. Entries are kept in lexicographic (byte) order, so a
// vocabulary is identical no matter how its input was sharded or ordered.
class Vocabulary {
 public:
  Vocabulary() = default;
  // index_ keys view into entries_; moves keep element addresses stable,
  // copies would not.
  Vocabulary(const Vocabulary&) = delete;
  Vocabulary& operator=(const Vocabulary&) = delete;
  Vocabulary(Vocabulary&&) = default;
  Vocabulary& operator=(Vocabulary&&) = default;

  std::size_t size() const { return entries_.size(); }
  const std::string& entry(std::size_t i) const { return entries_[i]; }
  std::uint64_t count(std::size_t i) const { return counts_[i]; }
  std::uint64_t total_count() const { return total_; }

  std::optional<std::size_t> find(std::string_view token) const;

  // prefix_count(i) == sum of counts of entries [0, i).
  std::uint64_t prefix_count(std::size_t i) const { return prefix_[i]; }

  void save(const std::filesystem::path& path) const;  // token\tcount lines
  static Vocabulary load(const std::filesystem::path& path);

 private:
  friend class VocabBuilder;
  void finalize(std::unordered_map<std::string, std::uint64_t>&& raw);

  std::vector<std::string> entries_;
  std::vector<std::uint64_t> counts_;
  std::vector<std::uint64_t> prefix_;
  std::unordered_map<std::string_view, std::size_t> index_;  // views into entries_
  std::uint64_t total_ = 0;
};

// Accumulates token counts across corpora; merge() folds builders produced
// by parallel shards.
class VocabBuilder {
 public:
  void add(std::string_view token) { counts_[std::string(token)] += 1; }
  void add_line(std::string_view line);  // whitespace-split
  void merge(VocabBuilder&& other);

  // Throws DataError("empty vocabulary") when nothing was added.
  Vocabulary build() &&;

 private:
  std::unordered_map<std::string, std::uint64_t> counts_;
};

}  // namespace gecsynth
