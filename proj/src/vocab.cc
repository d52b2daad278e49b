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

#include "gecsynth/vocab.h"

#include <algorithm>
#include <charconv>
#include <fstream>

#include "gecsynth/error.h"

namespace gecsynth {

std::optional<std::size_t> Vocabulary::find(std::string_view token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Vocabulary::finalize(std::unordered_map<std::string, std::uint64_t>&& raw) {
  entries_.reserve(raw.size());
  for (auto& [token, count] : raw) {
    (void)count;
    entries_.push_back(token);
  }
  std::sort(entries_.begin(), entries_.end());
  counts_.reserve(entries_.size());
  prefix_.reserve(entries_.size() + 1);
  prefix_.push_back(0);
  for (const std::string& e : entries_) {
    const std::uint64_t c = raw.at(e);
    counts_.push_back(c);
    total_ += c;
    prefix_.push_back(total_);
  }
  index_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i)
    index_.emplace(std::string_view(entries_[i]), i);
}

void Vocabulary::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open vocabulary file for writing: " + path.string());
  for (std::size_t i = 0; i < entries_.size(); ++i)
    out << entries_[i] << '\t' << counts_[i] << '\n';
  out.flush();
  if (!out) throw IoError("failed writing vocabulary file: " + path.string());
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open vocabulary file: " + path.string());
  std::unordered_map<std::string, std::uint64_t> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw DataError("vocabulary line " + std::to_string(line_no) +
                      " has no tab: " + path.string());
    std::uint64_t count = 0;
    const char* first = line.data() + tab + 1;
    const char* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, count);
    if (ec != std::errc() || ptr != last || count == 0)
      throw DataError("vocabulary line " + std::to_string(line_no) +
                      " has a bad count: " + path.string());
    raw[line.substr(0, tab)] += count;
  }
  if (raw.empty()) throw DataError("empty vocabulary");
  Vocabulary v;
  v.finalize(std::move(raw));
  return v;
}

void VocabBuilder::add_line(std::string_view line) {
  std::size_t i = 0;
  auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
           c == '\f';
  };
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) add(line.substr(start, i - start));
  }
}

void VocabBuilder::merge(VocabBuilder&& other) {
  if (counts_.empty()) {
    counts_ = std::move(other.counts_);
    return;
  }
  for (auto& [token, count] : other.counts_) counts_[token] += count;
  other.counts_.clear();
}

Vocabulary VocabBuilder::build() && {
  if (counts_.empty()) throw DataError("empty vocabulary");
  Vocabulary v;
  v.finalize(std::move(counts_));
  return v;
}

}  // namespace gecsynth
