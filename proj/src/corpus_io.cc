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

#include "gecsynth/corpus_io.h"

#include <algorithm>
#include <charconv>

#include "gecsynth/error.h"
#include "gecsynth/text.h"

namespace gecsynth {

namespace {

std::string at_line(const std::filesystem::path& path, std::uint64_t line) {
  return path.string() + ":" + std::to_string(line);
}

}  // namespace

LineReader::LineReader(const std::filesystem::path& path)
    : path_(path), in_(path, std::ios::binary) {
  if (!in_) throw IoError("cannot open input file: " + path.string());
}

bool LineReader::next(std::string& line) {
  if (!std::getline(in_, line)) {
    if (in_.bad()) throw IoError("read failure: " + path_.string());
    return false;
  }
  ++line_no_;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

LineWriter::LineWriter(const std::filesystem::path& path)
    : path_(path), out_(path, std::ios::binary) {
  if (!out_) throw IoError("cannot open output file: " + path.string());
}

void LineWriter::write(std::string_view line) {
  out_.write(line.data(), static_cast<std::streamsize>(line.size()));
  out_.put('\n');
  if (!out_) throw IoError("write failure: " + path_.string());
}

void LineWriter::flush_and_check() {
  out_.flush();
  if (!out_) throw IoError("write failure: " + path_.string());
}

TsvReader::TsvReader(const std::filesystem::path& path,
                     const PunctuationSet& punct)
    : lines_(path), punct_(punct) {}

bool TsvReader::next(SentencePair& pair, std::string* raw_line) {
  if (!lines_.next(buf_)) return false;
  const std::size_t tab = buf_.find('\t');
  if (tab == std::string::npos)
    throw DataError("parallel line has no tab at " +
                    at_line(lines_.path(), lines_.line_number()));
  const std::string_view view(buf_);
  pair.source = tokenize(view.substr(0, tab), punct_);
  pair.target = tokenize(view.substr(tab + 1), punct_);
  if (raw_line) *raw_line = buf_;
  return true;
}

void TsvWriter::write(const SentencePair& pair) {
  for (const auto* side : {&pair.source, &pair.target}) {
    for (const Token& t : *side) {
      if (t.text.find('\t') != std::string::npos)
        throw DataError("tab in token");
    }
  }
  std::string line = join_tokens(pair.source);
  line.push_back('\t');
  line += join_tokens(pair.target);
  out_.write(line);
}

M2Reader::M2Reader(const std::filesystem::path& path,
                   const PunctuationSet& punct)
    : lines_(path), punct_(punct) {}

namespace {

M2Edit parse_edit_line(std::string_view line, const std::filesystem::path& path,
                       std::uint64_t line_no) {
  // "A start end|||type|||correction|||required|||comment|||annotator"
  M2Edit edit;
  std::string_view rest = line.substr(2);
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const std::size_t sep = rest.find("|||", pos);
    if (sep == std::string_view::npos) {
      fields.push_back(rest.substr(pos));
      break;
    }
    fields.push_back(rest.substr(pos, sep - pos));
    pos = sep + 3;
  }
  if (fields.size() != 6)
    throw DataError("malformed edit line (need 6 fields) at " +
                    at_line(path, line_no));

  const std::string_view span = fields[0];
  const std::size_t space = span.find(' ');
  if (space == std::string_view::npos)
    throw DataError("malformed edit span at " + at_line(path, line_no));
  const auto parse_int = [&](std::string_view s, std::int64_t& v) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc() && p == s.data() + s.size();
  };
  if (!parse_int(span.substr(0, space), edit.start) ||
      !parse_int(span.substr(space + 1), edit.end))
    throw DataError("malformed edit span at " + at_line(path, line_no));
  edit.type = std::string(fields[1]);
  edit.correction = std::string(fields[2]);
  edit.required = std::string(fields[3]);
  edit.comment = std::string(fields[4]);
  std::int64_t annot = 0;
  if (!parse_int(fields[5], annot) || annot < 0)
    throw DataError("malformed annotator id at " + at_line(path, line_no));
  edit.annotator = static_cast<std::uint32_t>(annot);
  return edit;
}

}  // namespace

bool M2Reader::next(M2Entry& entry) {
  entry.source_tokens.clear();
  entry.edits.clear();

  std::string line;
  bool in_block = false;
  while (true) {
    if (have_pending_) {
      line = pending_;
      have_pending_ = false;
    } else if (!lines_.next(line)) {
      return in_block;
    }

    if (line.empty()) {
      if (in_block) return true;
      continue;  // stray blank lines between blocks
    }
    if (line.size() >= 2 && line[0] == 'S' && line[1] == ' ') {
      if (in_block) {  // next block begins; save the line for the next call
        pending_ = line;
        have_pending_ = true;
        return true;
      }
      in_block = true;
      block_start_ = lines_.line_number();
      std::string_view src = std::string_view(line).substr(2);
      std::size_t i = 0;
      while (i < src.size()) {
        while (i < src.size() && src[i] == ' ') ++i;
        std::size_t start = i;
        while (i < src.size() && src[i] != ' ') ++i;
        if (i > start)
          entry.source_tokens.emplace_back(src.substr(start, i - start));
      }
      continue;
    }
    if (line.size() >= 2 && line[0] == 'A' && line[1] == ' ') {
      if (!in_block)
        throw DataError("edit line before source line at " +
                        at_line(lines_.path(), lines_.line_number()));
      entry.edits.push_back(
          parse_edit_line(line, lines_.path(), lines_.line_number()));
      continue;
    }
    throw DataError("unrecognized M2 line at " +
                    at_line(lines_.path(), lines_.line_number()));
  }
}

std::vector<std::string> m2_apply_edits(const std::vector<std::string>& source,
                                        const std::vector<M2Edit>& edits,
                                        std::uint32_t annotator) {
  std::vector<const M2Edit*> selected;
  for (const M2Edit& e : edits) {
    if (e.annotator != annotator || e.is_noop()) continue;
    selected.push_back(&e);
  }
  std::stable_sort(selected.begin(), selected.end(),
                   [](const M2Edit* a, const M2Edit* b) {
                     if (a->start != b->start) return a->start < b->start;
                     return a->end < b->end;
                   });

  const auto n = static_cast<std::int64_t>(source.size());
  std::int64_t prev_end = 0;
  for (const M2Edit* e : selected) {
    if (e->start < 0 || e->end < e->start || e->end > n)
      throw DataError("edit span out of range: " + std::to_string(e->start) +
                      " " + std::to_string(e->end));
    if (e->start < prev_end)
      throw DataError("overlapping edits at span " + std::to_string(e->start) +
                      " " + std::to_string(e->end));
    prev_end = e->end;
  }

  std::vector<std::string> target;
  target.reserve(source.size());
  std::int64_t pos = 0;
  for (const M2Edit* e : selected) {
    for (; pos < e->start; ++pos)
      target.push_back(source[static_cast<std::size_t>(pos)]);
    if (!e->correction.empty() && e->correction != "-NONE-") {
      std::size_t i = 0;
      const std::string_view c(e->correction);
      while (i < c.size()) {
        while (i < c.size() && c[i] == ' ') ++i;
        std::size_t start = i;
        while (i < c.size() && c[i] != ' ') ++i;
        if (i > start) target.emplace_back(c.substr(start, i - start));
      }
    }
    pos = e->end;
  }
  for (; pos < n; ++pos) target.push_back(source[static_cast<std::size_t>(pos)]);
  return target;
}

SentencePair M2Reader::to_pair(const M2Entry& entry,
                               std::uint32_t annotator) const {
  SentencePair pair;
  pair.source.reserve(entry.source_tokens.size());
  for (const std::string& t : entry.source_tokens)
    pair.source.push_back(punct_.make_token(t));
  const std::vector<std::string> target =
      m2_apply_edits(entry.source_tokens, entry.edits, annotator);
  pair.target.reserve(target.size());
  for (const std::string& t : target)
    pair.target.push_back(punct_.make_token(t));
  return pair;
}

std::vector<std::string> M2Reader::edit_types(const M2Entry& entry,
                                              std::uint32_t annotator) {
  std::vector<std::string> types;
  for (const M2Edit& e : entry.edits) {
    if (e.annotator != annotator || e.is_noop()) continue;
    types.push_back(e.type);
  }
  return types;
}

void M2Writer::write(const M2Entry& entry) {
  std::string line = "S";
  for (const std::string& t : entry.source_tokens) {
    line.push_back(' ');
    line += t;
  }
  out_.write(line);
  for (const M2Edit& e : entry.edits) {
    line = "A ";
    line += std::to_string(e.start);
    line.push_back(' ');
    line += std::to_string(e.end);
    line += "|||";
    line += e.type;
    line += "|||";
    line += e.correction;
    line += "|||";
    line += e.required;
    line += "|||";
    line += e.comment;
    line += "|||";
    line += std::to_string(e.annotator);
    out_.write(line);
  }
  out_.write("");
}

}  // namespace gecsynth
