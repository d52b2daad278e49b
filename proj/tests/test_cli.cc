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
//
// End-to-end checks that drive the installed binary through a shell, the
// same way a pipeline would.

#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("gecsynth_cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

CmdResult run_cli(const TempDir& dir, const std::string& args) {
  const char* bin = std::getenv("GECSYNTH_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "GECSYNTH_BIN must point at the binary");
  const fs::path out_file = dir.path / "stdout.txt";
  const fs::path err_file = dir.path / "stderr.txt";
  const std::string cmd = std::string(bin) + " " + args + " >" +
                          out_file.string() + " 2>" + err_file.string();
  const int rc = std::system(cmd.c_str());
  CmdResult result;
  result.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  result.out = slurp(out_file);
  result.err = slurp(err_file);
  return result;
}

std::string small_corpus() {
  std::string s;
  const char* lines[] = {
      "the committee will release the results on Friday .",
      "a quick brown fox jumps over the lazy dog .",
      "she said the plan needs more work before the meeting .",
      "markets closed higher after the announcement yesterday .",
      "the new library opens to the public next month .",
  };
  for (int i = 0; i < 20; ++i) {
    s += lines[i % 5];
    s += '\n';
  }
  return s;
}

}  // namespace

TEST_CASE("cli: corrupt runs and is deterministic across reruns and threads") {
  TempDir dir;
  spit(dir.path / "mono.txt", small_corpus());
  const std::string base = "corrupt --error-rate 0.4 --ratio 1:1:1 --seed 3 -i " +
                           (dir.path / "mono.txt").string();

  auto r1 = run_cli(dir, base + " -o " + (dir.path / "a.tsv").string() +
                             " --ops-file " + (dir.path / "a.ops").string() +
                             " --threads 1");
  REQUIRE_MESSAGE(r1.exit_code == 0, r1.err);
  auto r2 = run_cli(dir, base + " -o " + (dir.path / "b.tsv").string() +
                             " --ops-file " + (dir.path / "b.ops").string() +
                             " --threads 4");
  REQUIRE(r2.exit_code == 0);
  CHECK(slurp(dir.path / "a.tsv") == slurp(dir.path / "b.tsv"));
  CHECK(slurp(dir.path / "a.ops") == slurp(dir.path / "b.ops"));
  CHECK(fs::exists(dir.path / "a.tsv.manifest.json"));

  // Each output line is corrupted\toriginal with the original intact.
  std::istringstream lines(slurp(dir.path / "a.tsv"));
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    ++n;
    CHECK(line.find('\t') != std::string::npos);
  }
  CHECK(n == 20);
}

TEST_CASE("cli: corrupting an empty corpus with a prebuilt vocab yields an empty corpus") {
  TempDir dir;
  spit(dir.path / "mono.txt", "");
  spit(dir.path / "v.tsv", "a\t1\nb\t2\n");
  const auto r = run_cli(dir, "corrupt --error-rate 0.4 --seed 1 --vocab " +
                                  (dir.path / "v.tsv").string() + " -i " +
                                  (dir.path / "mono.txt").string() + " -o " +
                                  (dir.path / "out.tsv").string());
  REQUIRE_MESSAGE(r.exit_code == 0, r.err);
  CHECK(slurp(dir.path / "out.tsv").empty());
}

TEST_CASE("cli: out-of-range error rate exits 2 and names the problem") {
  TempDir dir;
  spit(dir.path / "mono.txt", "a b c\n");
  const auto r = run_cli(dir, "corrupt --error-rate 1.5 -i " +
                                  (dir.path / "mono.txt").string() + " -o " +
                                  (dir.path / "out.tsv").string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("error rate must be in [0,1]") != std::string::npos);
}

TEST_CASE("cli: ratio 4:6:1 is accepted") {
  TempDir dir;
  spit(dir.path / "mono.txt", small_corpus());
  const auto r = run_cli(dir, "corrupt --error-rate 0.3 --ratio 4:6:1 --seed 1 -i " +
                                  (dir.path / "mono.txt").string() + " -o " +
                                  (dir.path / "out.tsv").string());
  CHECK(r.exit_code == 0);
}

TEST_CASE("cli: measure reports the worked-example rate") {
  TempDir dir;
  spit(dir.path / "two.tsv",
       "I follows his advices .\tI followed his advice .\n"
       "Students often travel to here .\tStudents often travel hundreds of "
       "miles to get here .\n");
  const auto r = run_cli(dir, "measure -i " + (dir.path / "two.tsv").string());
  REQUIRE_MESSAGE(r.exit_code == 0, r.err);
  CHECK(r.out.find("error_rate         0.400000") != std::string::npos);
  CHECK(r.out.find("pairs              2") != std::string::npos);

  const auto rj = run_cli(dir, "measure --json -i " +
                                   (dir.path / "two.tsv").string());
  REQUIRE(rj.exit_code == 0);
  const auto j = nlohmann::json::parse(rj.out);
  CHECK(j["distance"] == 6);
  CHECK(j["types"]["M"] == 4);
  CHECK(j["types"]["R"] == 2);
  CHECK(j["types"]["U"] == 0);
}

TEST_CASE("cli: measure on identical pairs reports zero") {
  TempDir dir;
  spit(dir.path / "same.tsv", "a b .\ta b .\nx y .\tx y .\n");
  const auto r = run_cli(dir, "measure --json -i " +
                                  (dir.path / "same.tsv").string());
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["error_rate"] == 0.0);
  CHECK(j["types"]["M"] == 0);
}

TEST_CASE("cli: filter with m2 type source on tsv input exits 2") {
  TempDir dir;
  spit(dir.path / "in.tsv", "a b\ta c\n");
  const auto r = run_cli(dir, "filter --type-source m2 --target-error-rate 0.3 -i " +
                                  (dir.path / "in.tsv").string() + " -o " +
                                  (dir.path / "out.tsv").string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("requires M2 input") != std::string::npos);
}

TEST_CASE("cli: filter reaches the target rate and writes a report") {
  TempDir dir;
  // Five zero-error pairs plus five pairs carrying M, U and R errors.
  std::string corpus;
  for (int i = 0; i < 5; ++i) corpus += "same line here .\tsame line here .\n";
  corpus += "one mistak her .\tone mistake here .\n";                   // R:2
  corpus += "went school today\twent to school today now .\n";         // M:3
  corpus += "she go to to school now .\tshe go to school .\n";         // U:2
  corpus += "big mistak and wrng words .\tbig mistake and wrong words .\n";  // R:2
  corpus += "extra extra words here\textra words here\n";               // U:1
  spit(dir.path / "in.tsv", corpus);
  const auto r = run_cli(
      dir, "filter --target-error-rate 0.3 --theta 0.05 --type-ratio "
           "M:1,U:1,R:1 --report " +
               (dir.path / "report.json").string() + " -i " +
               (dir.path / "in.tsv").string() + " -o " +
               (dir.path / "out.tsv").string());
  REQUIRE_MESSAGE(r.exit_code == 0, r.err);
  const auto report = nlohmann::json::parse(slurp(dir.path / "report.json"));
  CHECK(report["error_rate"]["after_rate_filter"].get<double>() >= 0.3 * 0.95);
  CHECK(report["error_rate"]["final"].get<double>() >= 0.3 * 0.95);
  // Removal is greedy-minimal: three of the five zero-rate pairs suffice
  // to lift 10/44 past the 0.285 bound (10/32 = 0.3125).
  CHECK(report["pairs"]["removed_by_rate_filter"] == 3);
  CHECK(report["pairs"]["retained"] == 7);
  // R stays over quota here (each R pair carries 2 and cannot be removed
  // without undershooting), so the run reports the residual and exits 0.
  CHECK(report["balance"]["balanced"] == false);
  CHECK(report["balance"]["residual_over_quota"].contains("R"));
}

TEST_CASE("cli: clean drops and reports by reason, then is idempotent") {
  TempDir dir;
  std::string corpus;
  corpus += "I am here .\tI am here .\n";              // identical
  corpus += "I am her .\tI am here .\n";               // keep
  corpus += "see http://x.com now\tsee the site now\n";  // url
  corpus += "I am here .\tI am here .\n";              // identical
  corpus += "nice \xF0\x9F\x98\x80 day\tnice day\n";   // emoji
  corpus += "good bad\xC3\x28 token\tgood token\n";    // invalid utf-8
  corpus += "one more fix her\tone more fix here\n";   // keep
  corpus += "I am here .\tI am here .\n";              // identical
  corpus += "fine pair two\tfine pair too\n";          // keep
  corpus += "last keep pair\tlast kept pair\n";        // keep
  spit(dir.path / "in.tsv", corpus);

  const auto r = run_cli(dir, "clean -i " + (dir.path / "in.tsv").string() +
                                  " -o " + (dir.path / "out.tsv").string());
  REQUIRE_MESSAGE(r.exit_code == 0, r.err);
  const auto manifest = nlohmann::json::parse(
      slurp(dir.path / "out.tsv.manifest.json"));
  CHECK(manifest["stats"]["kept"] == 4);
  CHECK(manifest["stats"]["dropped"]["identical"] == 3);
  CHECK(manifest["stats"]["dropped"]["url"] == 1);
  CHECK(manifest["stats"]["dropped"]["emoji"] == 1);
  CHECK(manifest["stats"]["dropped"]["illegal"] == 1);

  const auto r2 = run_cli(dir, "clean -i " + (dir.path / "out.tsv").string() +
                                   " -o " + (dir.path / "out2.tsv").string());
  REQUIRE(r2.exit_code == 0);
  const auto manifest2 = nlohmann::json::parse(
      slurp(dir.path / "out2.tsv.manifest.json"));
  CHECK(manifest2["stats"]["kept"] == 4);
  CHECK(manifest2["stats"]["dropped"].empty());
  CHECK(slurp(dir.path / "out.tsv") == slurp(dir.path / "out2.tsv"));
}

TEST_CASE("cli: missing input exits 1") {
  TempDir dir;
  const auto r = run_cli(dir, "measure -i " + (dir.path / "nope.tsv").string());
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("cannot open") != std::string::npos);
}

TEST_CASE("cli: empty parallel corpus exits 1") {
  TempDir dir;
  spit(dir.path / "empty.tsv", "");
  const auto r = run_cli(dir, "measure -i " + (dir.path / "empty.tsv").string());
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("empty corpus") != std::string::npos);
}

TEST_CASE("cli: blank line in corruption input names the line") {
  TempDir dir;
  spit(dir.path / "mono.txt", "a b c\n\nd e f\n");
  const auto r = run_cli(dir, "corrupt --error-rate 0.2 --seed 1 -i " +
                                  (dir.path / "mono.txt").string() + " -o " +
                                  (dir.path / "out.tsv").string());
  CHECK(r.exit_code == 1);
  CHECK(r.err.find(":2") != std::string::npos);
}

TEST_CASE("cli: vocab and stats") {
  TempDir dir;
  spit(dir.path / "mono.txt", "b a a\na c\n");
  const auto r = run_cli(dir, "vocab -i " + (dir.path / "mono.txt").string() +
                                  " -o " + (dir.path / "v.tsv").string());
  REQUIRE_MESSAGE(r.exit_code == 0, r.err);
  CHECK(slurp(dir.path / "v.tsv") == "a\t3\nb\t1\nc\t1\n");

  const auto rs = run_cli(dir, "stats -i " + (dir.path / "mono.txt").string());
  REQUIRE(rs.exit_code == 0);
  CHECK(rs.out.find("sentences=2") != std::string::npos);
  CHECK(rs.out.find("tokens=5") != std::string::npos);

  // measure/stats leave their input untouched.
  CHECK(slurp(dir.path / "mono.txt") == "b a a\na c\n");
}

TEST_CASE("cli: measure m2 input with external types") {
  TempDir dir;
  spit(dir.path / "in.m2",
       "S I follows his advices\n"
       "A 1 2|||R:VERB:SVA|||followed|||REQUIRED|||-NONE-|||0\n"
       "A 3 4|||R:NOUN:NUM|||advice|||REQUIRED|||-NONE-|||0\n\n");
  const auto r = run_cli(dir, "measure --json --type-source m2 -i " +
                                  (dir.path / "in.m2").string());
  REQUIRE_MESSAGE(r.exit_code == 0, r.err);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["pairs"] == 1);
  CHECK(j["distance"] == 2);
  CHECK(j["types"]["R:VERB:SVA"] == 1);
  CHECK(j["types"]["R:NOUN:NUM"] == 1);
}
