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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "subtok/metrics.h"
#include "subtok/normalizer.h"
#include "subtok/tokenizer.h"

namespace subtok {

// Language codes used in the reports. Other codes are accepted and treated
// as custom.
bool is_known_lang_code(const std::string& code);

struct ParallelCorpus {
  std::string source_path;
  std::string target_path;
  std::string source_lang;
  std::string target_lang;
  std::vector<std::pair<std::string, std::string>> lines;
};

// UTF-8 lines, LF terminators, trailing newline stripped only. Throws
// NotUtf8Error with the byte offset of the first bad sequence and
// EmptyFileError on empty files.
std::vector<std::string> read_lines(const std::string& path);

ParallelCorpus load_parallel(const std::string& source_path, const std::string& target_path,
                             const std::string& source_lang, const std::string& target_lang);

// Intrinsic tokenizer statistics over one corpus side. Totals are kept as
// integers so identities like fertility * words == tokens hold exactly.
struct CorpusStats {
  size_t vocab_size = 0;
  uint64_t total_tokens = 0;
  uint64_t total_words = 0;
  uint64_t total_chars = 0;  // whitespace excluded
  uint64_t unk_tokens = 0;
  uint64_t distinct_tokens = 0;

  double fertility() const;
  double unk_rate() const;
  double compression() const;
  double type_token_ratio() const;
};

CorpusStats compute_stats(const Tokenizer& tokenizer, const std::vector<std::string>& sentences);

struct TokenizerSpec {
  TokenizerKind kind = TokenizerKind::Bpe;
  std::optional<size_t> num_merges;  // bpe only
  std::optional<size_t> vocab_size;
  SpModelType sp_model_type = SpModelType::Subword;
};

struct DirectionSpec {
  std::string name;  // e.g. "EN-HI"
  std::optional<std::string> hypothesis_path;
};

// Parsed "subtok-exp v1" experiment file. Relative paths are resolved
// against the config file's directory.
struct ExperimentConfig {
  std::string train_corpus_path;
  std::string test_source_path;
  std::string test_target_path;
  std::string source_lang;
  std::string target_lang;
  std::vector<TokenizerSpec> tokenizers;
  std::vector<DirectionSpec> directions;
  NormalizationConfig normalization;
  MetricTokenization metric_tokenization = MetricTokenization::WordSplitPunct;
  std::vector<std::string> formats = {"tsv", "json", "md"};

  std::string config_hash;  // FNV-1a of the config file bytes

  static ExperimentConfig from_file(const std::string& path);
};

struct ReportRow {
  std::string tokenizer;
  std::string direction;
  std::optional<MetricScore> metrics;  // absent without hypothesis files
  CorpusStats stats;
};

struct ComparisonReport {
  std::vector<ReportRow> rows;
  std::string config_hash;
  std::string train_corpus_path;
  std::string test_source_path;
  std::string test_target_path;
  std::string timestamp;  // serialized to JSON only
};

// Trains each configured tokenizer on the normalized train split, computes
// stats on each direction's reference side of the test corpus, and scores
// hypothesis files when present. `jobs` > 1 runs tokenizer tasks
// concurrently; rows always come out in config order.
ComparisonReport run_compare(const ExperimentConfig& config, unsigned jobs = 1);

// Frozen header of report.tsv.
extern const char kReportTsvHeader[];

// Writes report.<fmt> (and stats.tsv alongside the tsv format) into
// out_dir. Only the JSON carries the timestamp.
void emit_report(const ComparisonReport& report, const std::string& out_dir,
                 const std::vector<std::string>& formats);

std::string fnv1a_hex(std::string_view bytes);

}  // namespace subtok
