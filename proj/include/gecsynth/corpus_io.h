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
#include <fstream>
#include <string>
#include <vector>

#include "gecsynth/edit.h"
#include "gecsynth/token.h"

namespace gecsynth {

// All readers are streaming and hold one line or one block at a time.
// "\r\n" is tolerated on read; writers always emit "\n".

class LineReader {
 public:
  explicit LineReader(const std::filesystem::path& path);

  bool next(std::string& line);
  std::uint64_t line_number() const { return line_no_; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ifstream in_;
  std::uint64_t line_no_ = 0;
};

class LineWriter {
 public:
  explicit LineWriter(const std::filesystem::path& path);

  void write(std::string_view line);  // appends '\n'
  void flush_and_check();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

// Parallel TSV: one "source\ttarget" per line, split on the first tab.
class TsvReader {
 public:
  TsvReader(const std::filesystem::path& path, const PunctuationSet& punct);

  // raw_line, when given, receives the normalized input line so callers can
  // re-emit retained pairs byte-for-byte.
  bool next(SentencePair& pair, std::string* raw_line = nullptr);
  std::uint64_t line_number() const { return lines_.line_number(); }

 private:
  LineReader lines_;
  const PunctuationSet& punct_;
  std::string buf_;
};

class TsvWriter {
 public:
  explicit TsvWriter(const std::filesystem::path& path) : out_(path) {}

  // Throws DataError("tab in token") if any token cannot be represented.
  void write(const SentencePair& pair);
  void flush_and_check() { out_.flush_and_check(); }

 private:
  LineWriter out_;
};

// One edit line of an M2 block. Unknown middle fields are preserved
// verbatim so canonical files round-trip byte-for-byte.
struct M2Edit {
  std::int64_t start = 0;
  std::int64_t end = 0;
  std::string type;
  std::string correction;
  std::string required = "REQUIRED";
  std::string comment = "-NONE-";
  std::uint32_t annotator = 0;

  bool is_noop() const { return type == "noop"; }
  bool operator==(const M2Edit&) const = default;
};

struct M2Entry {
  std::vector<std::string> source_tokens;
  std::vector<M2Edit> edits;

  bool operator==(const M2Entry&) const = default;
};

class M2Reader {
 public:
  M2Reader(const std::filesystem::path& path, const PunctuationSet& punct);

  bool next(M2Entry& entry);
  std::uint64_t block_start_line() const { return block_start_; }

  // Reconstructs the correction by applying the annotator's edits to the
  // source (left to right with offset tracking) and returns the pair.
  SentencePair to_pair(const M2Entry& entry, std::uint32_t annotator) const;

  // Type codes of the annotator's non-noop edits, for external annotation.
  static std::vector<std::string> edit_types(const M2Entry& entry,
                                             std::uint32_t annotator);

 private:
  LineReader lines_;
  const PunctuationSet& punct_;
  std::string pending_;
  bool have_pending_ = false;
  std::uint64_t block_start_ = 0;
};

// Standalone reconstruction used by M2Reader::to_pair; exposed so callers
// can rebuild targets without a reader instance. Throws DataError on
// out-of-range spans or overlapping edits.
std::vector<std::string> m2_apply_edits(const std::vector<std::string>& source,
                                        const std::vector<M2Edit>& edits,
                                        std::uint32_t annotator);

class M2Writer {
 public:
  explicit M2Writer(const std::filesystem::path& path) : out_(path) {}

  void write(const M2Entry& entry);  // block followed by one blank line
  void flush_and_check() { out_.flush_and_check(); }

 private:
  LineWriter out_;
};

}  // namespace gecsynth
