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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "gecsynth/corpus_io.h"
#include "gecsynth/error.h"
#include "gecsynth/text.h"

using namespace gecsynth;

namespace {

const PunctuationSet kPunct = PunctuationSet::default_set();

std::filesystem::path data_dir() { return GECSYNTH_TEST_DATA_DIR; }

std::filesystem::path tmp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::filesystem::path& p, std::string_view content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

std::string joined(const std::vector<Token>& tokens) {
  return join_tokens(tokens);
}

// Independent target reconstruction: apply edits right-to-left (descending
// start), which needs no offset tracking. Cross-checks the library's
// left-to-right implementation.
std::vector<std::string> apply_rtl(std::vector<std::string> tokens,
                                   const std::vector<M2Edit>& edits,
                                   std::uint32_t annotator) {
  std::vector<M2Edit> selected;
  for (const auto& e : edits)
    if (e.annotator == annotator && !e.is_noop()) selected.push_back(e);
  std::stable_sort(selected.begin(), selected.end(),
                   [](const M2Edit& a, const M2Edit& b) {
                     if (a.start != b.start) return a.start < b.start;
                     return a.end < b.end;
                   });
  for (auto it = selected.rbegin(); it != selected.rend(); ++it) {
    std::vector<std::string> repl;
    if (!it->correction.empty() && it->correction != "-NONE-") {
      std::istringstream ss(it->correction);
      std::string w;
      while (ss >> w) repl.push_back(w);
    }
    tokens.erase(tokens.begin() + it->start, tokens.begin() + it->end);
    tokens.insert(tokens.begin() + it->start, repl.begin(), repl.end());
  }
  return tokens;
}

}  // namespace

TEST_CASE("tsv reader basics") {
  const auto path = tmp_file("gecsynth_io_basic.tsv");
  spit(path, "a b\tc d\n");
  TsvReader reader(path, kPunct);
  SentencePair pair;
  REQUIRE(reader.next(pair));
  CHECK(joined(pair.source) == "a b");
  CHECK(joined(pair.target) == "c d");
  CHECK(!reader.next(pair));
  std::filesystem::remove(path);
}

TEST_CASE("tsv reader: empty file yields an empty stream") {
  const auto path = tmp_file("gecsynth_io_empty.tsv");
  spit(path, "");
  TsvReader reader(path, kPunct);
  SentencePair pair;
  CHECK(!reader.next(pair));
  std::filesystem::remove(path);
}

TEST_CASE("tsv reader: missing tab names the line") {
  const auto path = tmp_file("gecsynth_io_notab.tsv");
  spit(path, "no-tab-line\n");
  TsvReader reader(path, kPunct);
  SentencePair pair;
  try {
    reader.next(pair);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find(":1") != std::string::npos);
  }
  std::filesystem::remove(path);
}

TEST_CASE("tsv: empty source side survives the round trip") {
  const auto path = tmp_file("gecsynth_io_emptysrc.tsv");
  spit(path, "\tfoo bar\n");
  TsvReader reader(path, kPunct);
  SentencePair pair;
  REQUIRE(reader.next(pair));
  CHECK(pair.source.empty());
  CHECK(pair.target.size() == 2);
  std::filesystem::remove(path);
}

TEST_CASE("tsv: CRLF input is tolerated") {
  const auto path = tmp_file("gecsynth_io_crlf.tsv");
  spit(path, "a\tb\r\nc\td\r\n");
  TsvReader reader(path, kPunct);
  SentencePair pair;
  REQUIRE(reader.next(pair));
  CHECK(joined(pair.target) == "b");
  REQUIRE(reader.next(pair));
  CHECK(joined(pair.source) == "c");
  std::filesystem::remove(path);
}

TEST_CASE("tsv writer: tab inside a token is rejected") {
  const auto path = tmp_file("gecsynth_io_tab.tsv");
  TsvWriter writer(path);
  SentencePair pair;
  pair.source.push_back(Token{"bad\ttoken", TokenKind::kWord});
  pair.target.push_back(Token{"x", TokenKind::kWord});
  CHECK_THROWS_WITH_AS(writer.write(pair), "tab in token", DataError);
  std::filesystem::remove(path);
}

TEST_CASE("tsv round trip on random pairs") {
  std::mt19937 rng(41);
  const char* words[] = {"a", "bb", "ccc", ".", ",", "!", "word"};
  const auto path = tmp_file("gecsynth_io_roundtrip.tsv");
  std::vector<SentencePair> pairs;
  {
    TsvWriter writer(path);
    for (int i = 0; i < 200; ++i) {
      SentencePair p;
      const std::size_t ns = rng() % 8;
      const std::size_t nt = 1 + rng() % 8;
      for (std::size_t k = 0; k < ns; ++k)
        p.source.push_back(kPunct.make_token(words[rng() % 7]));
      for (std::size_t k = 0; k < nt; ++k)
        p.target.push_back(kPunct.make_token(words[rng() % 7]));
      writer.write(p);
      pairs.push_back(std::move(p));
    }
    writer.flush_and_check();
  }
  TsvReader reader(path, kPunct);
  SentencePair got;
  for (const auto& expected : pairs) {
    REQUIRE(reader.next(got));
    CHECK(got.source == expected.source);
    CHECK(got.target == expected.target);
  }
  CHECK(!reader.next(got));
  std::filesystem::remove(path);
}

TEST_CASE("empty streams write empty files") {
  const auto tsv = tmp_file("gecsynth_io_empty_out.tsv");
  {
    TsvWriter writer(tsv);
    writer.flush_and_check();
  }
  CHECK(slurp(tsv).empty());
  const auto m2 = tmp_file("gecsynth_io_empty_out.m2");
  {
    M2Writer writer(m2);
    writer.flush_and_check();
  }
  CHECK(slurp(m2).empty());
  std::filesystem::remove(tsv);
  std::filesystem::remove(m2);
}

TEST_CASE("m2 fixture parses and reconstructs") {
  M2Reader reader(data_dir() / "sample.m2", kPunct);
  M2Entry entry;

  REQUIRE(reader.next(entry));
  CHECK(entry.source_tokens.size() == 4);
  REQUIRE(entry.edits.size() == 2);
  CHECK(entry.edits[0].type == "R:VERB:SVA");
  auto pair = reader.to_pair(entry, 0);
  CHECK(joined(pair.target) == "I followed his advice");

  REQUIRE(reader.next(entry));  // noop block
  REQUIRE(entry.edits.size() == 1);
  CHECK(entry.edits[0].is_noop());
  pair = reader.to_pair(entry, 0);
  CHECK(pair.source == pair.target);

  REQUIRE(reader.next(entry));  // multi-annotator block
  pair = reader.to_pair(entry, 0);
  CHECK(joined(pair.target) == "She went to school yesterday .");
  pair = reader.to_pair(entry, 1);
  CHECK(joined(pair.target) == "She goes to school yesterday .");
  CHECK(M2Reader::edit_types(entry, 0) ==
        std::vector<std::string>{"R:VERB:TENSE"});

  REQUIRE(reader.next(entry));  // deletion with empty correction
  pair = reader.to_pair(entry, 0);
  CHECK(joined(pair.target) == "We discussed the plan in detail .");

  REQUIRE(reader.next(entry));  // multi-token insertions
  pair = reader.to_pair(entry, 0);
  CHECK(joined(pair.target) ==
        "Students often travel hundreds of miles to get here .");

  CHECK(!reader.next(entry));
}

TEST_CASE("m2 fixture byte round trip") {
  const auto src = data_dir() / "sample.m2";
  const auto out = tmp_file("gecsynth_io_m2_rt.m2");
  {
    M2Reader reader(src, kPunct);
    M2Writer writer(out);
    M2Entry entry;
    while (reader.next(entry)) writer.write(entry);
    writer.flush_and_check();
  }
  CHECK(slurp(out) == slurp(src));
  std::filesystem::remove(out);
}

TEST_CASE("m2 errors: out-of-range span") {
  const auto path = tmp_file("gecsynth_io_m2_range.m2");
  spit(path, "S a b c d\nA 9 10|||R:X|||y|||REQUIRED|||-NONE-|||0\n\n");
  M2Reader reader(path, kPunct);
  M2Entry entry;
  REQUIRE(reader.next(entry));
  CHECK_THROWS_AS(reader.to_pair(entry, 0), DataError);
  std::filesystem::remove(path);
}

TEST_CASE("m2 errors: overlapping edits") {
  const auto path = tmp_file("gecsynth_io_m2_overlap.m2");
  spit(path,
       "S a b c d\n"
       "A 0 2|||R:X|||y|||REQUIRED|||-NONE-|||0\n"
       "A 1 3|||R:X|||z|||REQUIRED|||-NONE-|||0\n\n");
  M2Reader reader(path, kPunct);
  M2Entry entry;
  REQUIRE(reader.next(entry));
  CHECK_THROWS_AS(reader.to_pair(entry, 0), DataError);
  std::filesystem::remove(path);
}

TEST_CASE("m2 errors: edit before source line") {
  const auto path = tmp_file("gecsynth_io_m2_noS.m2");
  spit(path, "A 0 1|||R:X|||y|||REQUIRED|||-NONE-|||0\n\n");
  M2Reader reader(path, kPunct);
  M2Entry entry;
  CHECK_THROWS_AS(reader.next(entry), DataError);
  std::filesystem::remove(path);
}

TEST_CASE("m2: block without edits yields the identical pair") {
  const auto path = tmp_file("gecsynth_io_m2_plain.m2");
  spit(path, "S all good here .\n\n");
  M2Reader reader(path, kPunct);
  M2Entry entry;
  REQUIRE(reader.next(entry));
  const auto pair = reader.to_pair(entry, 0);
  CHECK(pair.source == pair.target);
  std::filesystem::remove(path);
}

TEST_CASE("m2: generated entries round trip and match the RTL oracle") {
  std::mt19937 rng(43);
  const char* words[] = {"alpha", "beta", "gamma", "delta", ".", "the", "a"};
  const char* types[] = {"M:DET", "U:PREP", "R:NOUN:NUM", "R:VERB"};
  const auto path = tmp_file("gecsynth_io_m2_gen.m2");
  std::vector<M2Entry> entries;
  {
    M2Writer writer(path);
    for (int blk = 0; blk < 300; ++blk) {
      M2Entry e;
      const std::size_t n = 3 + rng() % 8;
      for (std::size_t i = 0; i < n; ++i)
        e.source_tokens.push_back(words[rng() % 7]);
      // Non-overlapping edits in ascending order for both annotators.
      for (std::uint32_t annot = 0; annot < 1 + rng() % 2; ++annot) {
        std::size_t pos = 0;
        while (pos < n && e.edits.size() < 5) {
          if (rng() % 3 == 0) {
            M2Edit edit;
            edit.start = static_cast<std::int64_t>(pos);
            const bool insertion = rng() % 3 == 0;
            edit.end = insertion ? edit.start
                                 : edit.start + 1 + static_cast<int>(rng() % 2);
            if (edit.end > static_cast<std::int64_t>(n)) break;
            edit.type = types[rng() % 4];
            const int repl_len = static_cast<int>(rng() % 3);
            for (int k = 0; k < repl_len; ++k) {
              if (k) edit.correction += ' ';
              edit.correction += words[rng() % 7];
            }
            edit.annotator = annot;
            pos = static_cast<std::size_t>(edit.end) + 1;
            e.edits.push_back(std::move(edit));
          } else {
            ++pos;
          }
        }
      }
      if (e.edits.empty() && rng() % 2) {
        M2Edit noop;
        noop.start = -1;
        noop.end = -1;
        noop.type = "noop";
        noop.correction = "-NONE-";
        e.edits.push_back(std::move(noop));
      }
      writer.write(e);
      entries.push_back(std::move(e));
    }
    writer.flush_and_check();
  }

  // Parse back: entries identical, and rewriting is byte-identical.
  std::vector<M2Entry> parsed;
  {
    M2Reader reader(path, kPunct);
    M2Entry entry;
    while (reader.next(entry)) parsed.push_back(entry);
  }
  REQUIRE(parsed.size() == entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) CHECK(parsed[i] == entries[i]);

  const auto rewrite = tmp_file("gecsynth_io_m2_gen2.m2");
  {
    M2Writer writer(rewrite);
    for (const auto& e : parsed) writer.write(e);
    writer.flush_and_check();
  }
  CHECK(slurp(rewrite) == slurp(path));

  // Left-to-right reconstruction equals the right-to-left oracle.
  M2Reader reader(path, kPunct);
  M2Entry entry;
  while (reader.next(entry)) {
    for (std::uint32_t annot = 0; annot < 2; ++annot) {
      const auto pair = reader.to_pair(entry, annot);
      const auto oracle = apply_rtl(entry.source_tokens, entry.edits, annot);
      REQUIRE(pair.target.size() == oracle.size());
      for (std::size_t k = 0; k < oracle.size(); ++k)
        CHECK(pair.target[k].text == oracle[k]);
    }
  }
  std::filesystem::remove(path);
  std::filesystem::remove(rewrite);
}
