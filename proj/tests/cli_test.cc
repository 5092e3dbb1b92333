// Copyright 2026 The subtok Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "testutil.h"

namespace fs = std::filesystem;

namespace {

const char* cli() { return SUBTOK_CLI_PATH; }

fs::path work_dir() {
  const fs::path dir = fs::temp_directory_path() / "subtok_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const std::string& content) {
  const fs::path path = work_dir() / name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path.string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int run(const std::string& args) {
  const std::string command = std::string(cli()) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

int run_capture(const std::string& args, const std::string& out_path) {
  const std::string command =
      std::string(cli()) + " " + args + " > " + out_path + " 2>/dev/null";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("exit code 3 for missing input files") {
  CHECK(run("score --hyp /nonexistent/h --ref /nonexistent/r") == 3);
  CHECK(run("stats --model /nonexistent/model --in /nonexistent/in") == 3);
}

TEST_CASE("exit code 2 for config problems") {
  const std::string bad = write_file("bad.json", "{}");
  CHECK(run("compare --config " + bad + " --out-dir " + (work_dir() / "x").string()) == 2);
  CHECK(run("train --algo nope --in " + bad + " --out /tmp/x") == 2);
  CHECK(run("definitely-not-a-subcommand") == 2);
  CHECK(run("train --algo bpe --in " + bad + " --out /tmp/x") == 2);  // no size target
}

TEST_CASE("exit code 3 for data problems") {
  const std::string two = write_file("two.txt", "a\nb\n");
  const std::string one = write_file("one.txt", "a\n");
  CHECK(run("score --hyp " + two + " --ref " + one) == 3);
  const std::string bad_utf8 = write_file("bad_utf8.txt", "\xFF\xFE\n");
  CHECK(run("score --hyp " + bad_utf8 + " --ref " + two) == 3);
}

TEST_CASE("train, encode, decode through files") {
  const std::string corpus = subtok::testutil::fixture_path("mixed_hi_en_1000.txt");
  const std::string model = (work_dir() / "bpe.model").string();
  REQUIRE(run("train --algo bpe --merges 50 --in " + corpus + " --out " + model) == 0);
  CHECK(fs::exists(fs::path(model) / "merges.txt"));
  CHECK(fs::exists(fs::path(model) / "alphabet.txt"));
  CHECK(fs::exists(fs::path(model) / "meta.json"));

  const std::string input = write_file("rt_in.txt", "यह खोज पूरी है\n");
  const std::string tokens = (work_dir() / "rt.tok").string();
  const std::string output = (work_dir() / "rt.out").string();
  REQUIRE(run("encode --model " + model + " --in " + input + " --out " + tokens) == 0);
  REQUIRE(run("decode --model " + model + " --in " + tokens + " --out " + output) == 0);
  CHECK(read_file(output) == "यह खोज पूरी है\n");
}

TEST_CASE("score emits the selected metric only") {
  const std::string file = write_file("self.txt", "a b c d\nx y z w\n");
  const std::string out = (work_dir() / "score.json").string();
  REQUIRE(run_capture("score --hyp " + file + " --ref " + file + " --metric bleu", out) == 0);
  const nlohmann::json parsed = nlohmann::json::parse(read_file(out));
  CHECK(parsed.contains("bleu"));
  CHECK(parsed["bleu"].get<double>() == doctest::Approx(100.0));
  CHECK(!parsed.contains("ter"));
  CHECK(!parsed.contains("chrf"));
}

TEST_CASE("normalize reads a config and applies it") {
  const std::string config = write_file("norm.json", R"({
    "lowercase_latin": true,
    "strip_latin_accents": true,
    "numeral_target": "devanagari",
    "collapse_whitespace": true
  })");
  const std::string input = write_file("norm_in.txt", "Café  4 Rats\n");
  const std::string output = (work_dir() / "norm_out.txt").string();
  REQUIRE(run("normalize --config " + config + " --in " + input + " --out " + output) == 0);
  CHECK(read_file(output) == "cafe ४ rats\n");
}

TEST_CASE("compare writes only the requested formats") {
  const std::string config = subtok::testutil::fixture_path("exp/exp.json");
  const std::string out_dir = (work_dir() / "fmt").string();
  fs::remove_all(out_dir);
  REQUIRE(run("compare --config " + config + " --out-dir " + out_dir + " --format json") == 0);
  CHECK(fs::exists(fs::path(out_dir) / "report.json"));
  CHECK(!fs::exists(fs::path(out_dir) / "report.tsv"));
  CHECK(!fs::exists(fs::path(out_dir) / "report.md"));
}
