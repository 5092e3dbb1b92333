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

#include <filesystem>
#include <fstream>

#include "subtok/errors.h"
#include "subtok/harness.h"
#include "testutil.h"

using namespace subtok;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "subtok_harness_test";
  fs::create_directories(dir);
  return dir;
}

std::string write_temp(const std::string& name, const std::string& content) {
  const fs::path path = temp_dir() / name;
  std::ofstream out(path, std::ios::binary);
  out << content;
  return path.string();
}

}  // namespace

TEST_CASE("load_parallel pairs up lines") {
  const std::string src = write_temp("src.txt", "one\ntwo\nthree\n");
  const std::string tgt = write_temp("tgt.txt", "एक\nदो\nतीन\n");
  const ParallelCorpus corpus = load_parallel(src, tgt, "EN", "HI");
  REQUIRE(corpus.lines.size() == 3);
  CHECK(corpus.lines[0] == std::pair<std::string, std::string>{"one", "एक"});
  CHECK(corpus.lines[2].second == "तीन");
}

TEST_CASE("load_parallel rejects mismatched line counts") {
  const std::string src = write_temp("src3.txt", "a\nb\nc\n");
  const std::string tgt = write_temp("tgt4.txt", "1\n2\n3\n4\n");
  try {
    load_parallel(src, tgt, "EN", "HI");
    FAIL("expected LineCountMismatchError");
  } catch (const LineCountMismatchError& e) {
    CHECK(e.src_lines() == 3);
    CHECK(e.tgt_lines() == 4);
  }
}

TEST_CASE("blank interior lines are kept") {
  const std::string src = write_temp("blank.txt", "a\n\nc\n");
  const std::vector<std::string> lines = read_lines(src);
  REQUIRE(lines.size() == 3);
  CHECK(lines[1].empty());
}

TEST_CASE("read_lines validates UTF-8 with a byte offset") {
  const std::string bad = write_temp("bad.txt", std::string("ok\n\xFF\xFEoops\n"));
  try {
    read_lines(bad);
    FAIL("expected NotUtf8Error");
  } catch (const NotUtf8Error& e) {
    CHECK(e.offset() == 3);
  }
}

TEST_CASE("read_lines rejects empty files") {
  const std::string empty = write_temp("empty.txt", "");
  CHECK_THROWS_AS(read_lines(empty), EmptyFileError);
}

TEST_CASE("compute_stats on a character sentencepiece model") {
  SpTrainOptions options;
  options.vocab_size = 100;
  options.model_type = SpModelType::Character;
  const Tokenizer tokenizer(train_sp({"ab ab"}, options));
  const CorpusStats stats = compute_stats(tokenizer, {"ab ab"});
  CHECK(stats.total_tokens == 6);  // meta a b meta a b
  CHECK(stats.total_words == 2);
  CHECK(stats.fertility() == doctest::Approx(3.0));
  CHECK(stats.unk_rate() == 0.0);
}

TEST_CASE("compute_stats counts wordpiece unks") {
  // vocabulary that cannot start the word "ba"
  const Tokenizer tokenizer{Tokenizer(WordPieceVocab({"[UNK]", "a", "##b", "c"}))};
  const CorpusStats stats = compute_stats(tokenizer, {"a c ba"});
  CHECK(stats.unk_tokens == 1);
  CHECK(stats.total_tokens == 3);
  CHECK(stats.unk_rate() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("compute_stats rejects an empty corpus") {
  const Tokenizer tokenizer{Tokenizer(WordPieceVocab({"[UNK]", "a"}))};
  CHECK_THROWS_AS(compute_stats(tokenizer, {}), EmptyCorpusError);
}

TEST_CASE("stats integer identity: fertility times words equals tokens") {
  const std::vector<std::string> corpus =
      read_lines(testutil::fixture_path("mixed_hi_en_1000.txt"));
  const std::vector<std::string> sample(corpus.begin(), corpus.begin() + 60);
  BpeTrainOptions options;
  options.num_merges = 40;
  const Tokenizer tokenizer(train_bpe(sample, options));
  const CorpusStats stats = compute_stats(tokenizer, sample);
  CHECK(static_cast<uint64_t>(stats.fertility() * static_cast<double>(stats.total_words) + 0.5) ==
        stats.total_tokens);
  CHECK(stats.unk_tokens == 0);      // emit-char policy
  CHECK(stats.fertility() >= 1.0);   // bpe never spans word boundaries
}

TEST_CASE("experiment config parses and validates") {
  const ExperimentConfig config =
      ExperimentConfig::from_file(testutil::fixture_path("exp/exp.json"));
  CHECK(config.tokenizers.size() == 3);
  CHECK(config.directions.size() == 2);
  CHECK(config.directions[0].name == "EN-HI");
  CHECK(config.directions[0].hypothesis_path.has_value());
  CHECK(config.metric_tokenization == MetricTokenization::WordSplitPunct);
  CHECK(!config.config_hash.empty());
  // paths resolved relative to the config file
  CHECK(fs::path(config.train_corpus_path).is_absolute());
  CHECK(fs::exists(config.train_corpus_path));
}

TEST_CASE("config errors carry context") {
  const std::string bad = write_temp("bad_config.json", "{\"schema\": \"wrong\"}");
  CHECK_THROWS_AS(ExperimentConfig::from_file(bad), ConfigError);
  const std::string invalid = write_temp("invalid.json", "{nope");
  CHECK_THROWS_AS(ExperimentConfig::from_file(invalid), ConfigError);
}

TEST_CASE("run_compare produces one row per tokenizer and direction") {
  const ExperimentConfig config =
      ExperimentConfig::from_file(testutil::fixture_path("exp/exp.json"));
  const ComparisonReport report = run_compare(config);
  REQUIRE(report.rows.size() == 6);
  CHECK(report.rows[0].tokenizer == "bpe");
  CHECK(report.rows[0].direction == "EN-HI");
  CHECK(report.rows[5].tokenizer == "sentencepiece");
  CHECK(report.rows[5].direction == "HI-EN");
  for (const ReportRow& row : report.rows) {
    REQUIRE(row.metrics.has_value());
    CHECK(row.metrics->bleu == doctest::Approx(100.0));
    CHECK(row.metrics->ter == doctest::Approx(0.0));
    CHECK(row.metrics->chrf == doctest::Approx(100.0));
    CHECK(row.metrics->ribes == doctest::Approx(1.0));
    CHECK(row.stats.total_tokens > 0);
  }
}

TEST_CASE("run_compare is deterministic across worker counts") {
  const ExperimentConfig config =
      ExperimentConfig::from_file(testutil::fixture_path("exp/exp.json"));
  const ComparisonReport sequential = run_compare(config, 1);
  const ComparisonReport parallel = run_compare(config, 3);
  REQUIRE(sequential.rows.size() == parallel.rows.size());
  for (size_t i = 0; i < sequential.rows.size(); ++i) {
    CHECK(sequential.rows[i].tokenizer == parallel.rows[i].tokenizer);
    CHECK(sequential.rows[i].direction == parallel.rows[i].direction);
    CHECK(sequential.rows[i].stats.total_tokens == parallel.rows[i].stats.total_tokens);
    CHECK(sequential.rows[i].metrics->bleu == parallel.rows[i].metrics->bleu);
  }
}

TEST_CASE("emit_report writes the frozen header and n/a comet column") {
  const ExperimentConfig config =
      ExperimentConfig::from_file(testutil::fixture_path("exp/exp.json"));
  const ComparisonReport report = run_compare(config);
  const std::string out_dir = (temp_dir() / "report_out").string();
  emit_report(report, out_dir, {"tsv", "json", "md"});

  std::ifstream tsv(fs::path(out_dir) / "report.tsv");
  std::string header;
  std::getline(tsv, header);
  CHECK(header == "Model\tLanguage Pair\tBLEU\tTER\tMETEOR\tCHRF\tRIBES\tCOMET");
  std::string row;
  size_t rows = 0;
  while (std::getline(tsv, row)) {
    ++rows;
    CHECK(row.find("\tn/a") == row.size() - 4);
  }
  CHECK(rows == 6);

  CHECK(fs::exists(fs::path(out_dir) / "stats.tsv"));
  CHECK(fs::exists(fs::path(out_dir) / "report.json"));
  CHECK(fs::exists(fs::path(out_dir) / "report.md"));

  // md renders one metrics table per tokenizer
  std::ifstream md(fs::path(out_dir) / "report.md");
  std::string md_text((std::istreambuf_iterator<char>(md)), std::istreambuf_iterator<char>());
  CHECK(md_text.find("## bpe") != std::string::npos);
  CHECK(md_text.find("## wordpiece") != std::string::npos);
  CHECK(md_text.find("## sentencepiece") != std::string::npos);
}

TEST_CASE("rows without hypotheses render em dashes") {
  // Build a config without hypothesis files.
  const std::string config_json = R"({
    "schema": "subtok-exp v1",
    "train_corpus": ")" + testutil::fixture_path("exp/train.txt") + R"(",
    "test_corpus": {
      "source": ")" + testutil::fixture_path("exp/test.en") + R"(",
      "target": ")" + testutil::fixture_path("exp/test.hi") + R"(",
      "source_lang": "EN",
      "target_lang": "HI"
    },
    "tokenizers": [{"algo": "bpe", "merges": 20}],
    "directions": ["EN-HI"]
  })";
  const std::string config_path = write_temp("no_hyp.json", config_json);
  const ComparisonReport report = run_compare(ExperimentConfig::from_file(config_path));
  REQUIRE(report.rows.size() == 1);
  CHECK(!report.rows[0].metrics.has_value());

  const std::string out_dir = (temp_dir() / "no_hyp_out").string();
  emit_report(report, out_dir, {"tsv"});
  std::ifstream tsv(fs::path(out_dir) / "report.tsv");
  std::string header, row;
  std::getline(tsv, header);
  std::getline(tsv, row);
  CHECK(row.find("\xE2\x80\x94") != std::string::npos);
}

TEST_CASE("fnv1a hash is stable") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("subtok") == fnv1a_hex("subtok"));
  CHECK(fnv1a_hex("a") != fnv1a_hex("b"));
}

TEST_CASE("language codes") {
  CHECK(is_known_lang_code("HI"));
  CHECK(is_known_lang_code("EN"));
  CHECK(!is_known_lang_code("XX"));
}
