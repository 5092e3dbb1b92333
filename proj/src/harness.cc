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

#include "subtok/harness.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include "json.hpp"
#include "subtok/errors.h"
#include "subtok/unicode.h"

namespace subtok {

namespace fs = std::filesystem;

const char kReportTsvHeader[] =
    "Model\tLanguage Pair\tBLEU\tTER\tMETEOR\tCHRF\tRIBES\tCOMET";

bool is_known_lang_code(const std::string& code) {
  static const std::set<std::string> kCodes = {"AS", "BN", "GU", "HI", "KN", "ML",
                                               "MR", "OR", "PA", "TA", "TE", "EN"};
  return kCodes.count(code) > 0;
}

std::string fnv1a_hex(std::string_view bytes) {
  uint64_t hash = 14695981039346656037ull;
  for (const char c : bytes) {
    hash ^= static_cast<uint8_t>(c);
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string content = buffer.str();
  if (content.empty()) throw EmptyFileError(path);

  if (const auto offset = unicode::first_invalid_offset(content)) {
    throw NotUtf8Error(path, *offset);
  }

  std::vector<std::string> lines;
  size_t start = 0;
  while (start <= content.size()) {
    const size_t nl = content.find('\n', start);
    if (nl == std::string::npos) {
      if (start < content.size()) lines.push_back(content.substr(start));
      break;
    }
    lines.push_back(content.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

ParallelCorpus load_parallel(const std::string& source_path, const std::string& target_path,
                             const std::string& source_lang, const std::string& target_lang) {
  ParallelCorpus corpus;
  corpus.source_path = source_path;
  corpus.target_path = target_path;
  corpus.source_lang = source_lang;
  corpus.target_lang = target_lang;

  const std::vector<std::string> src = read_lines(source_path);
  const std::vector<std::string> tgt = read_lines(target_path);
  if (src.size() != tgt.size()) throw LineCountMismatchError(src.size(), tgt.size());

  corpus.lines.reserve(src.size());
  for (size_t i = 0; i < src.size(); ++i) corpus.lines.emplace_back(src[i], tgt[i]);
  return corpus;
}

double CorpusStats::fertility() const {
  return total_words == 0 ? 0.0
                          : static_cast<double>(total_tokens) / static_cast<double>(total_words);
}

double CorpusStats::unk_rate() const {
  return total_tokens == 0 ? 0.0
                           : static_cast<double>(unk_tokens) / static_cast<double>(total_tokens);
}

double CorpusStats::compression() const {
  return total_chars == 0 ? 0.0
                          : static_cast<double>(total_tokens) / static_cast<double>(total_chars);
}

double CorpusStats::type_token_ratio() const {
  return total_tokens == 0
             ? 0.0
             : static_cast<double>(distinct_tokens) / static_cast<double>(total_tokens);
}

CorpusStats compute_stats(const Tokenizer& tokenizer, const std::vector<std::string>& sentences) {
  if (sentences.empty()) throw EmptyCorpusError();

  CorpusStats stats;
  stats.vocab_size = tokenizer.vocab_size();
  std::set<std::string> distinct;
  for (const std::string& sentence : sentences) {
    const TokenSequence tokens = tokenizer.encode_line(sentence);
    stats.total_tokens += tokens.size();
    stats.total_words += pretokenize(sentence).size();
    for (unicode::CodePoint cp : unicode::to_code_points(sentence)) {
      if (!unicode::is_white_space(cp)) ++stats.total_chars;
    }
    for (const std::string& token : tokens) {
      if (tokenizer.is_unk_token(token)) ++stats.unk_tokens;
      distinct.insert(token);
    }
  }
  stats.distinct_tokens = distinct.size();
  return stats;
}

namespace {

std::string resolve_path(const fs::path& base_dir, const std::string& path) {
  fs::path p(path);
  if (p.is_absolute()) return p.string();
  return (base_dir / p).lexically_normal().string();
}

}  // namespace

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open experiment config: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string content = buffer.str();

  nlohmann::json root;
  try {
    root = nlohmann::json::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("experiment config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("experiment config must be a JSON object");
  if (root.value("schema", "") != "subtok-exp v1")
    throw ConfigError("experiment config must declare \"schema\": \"subtok-exp v1\"");

  const fs::path base_dir = fs::path(path).parent_path();
  ExperimentConfig config;
  config.config_hash = fnv1a_hex(content);

  if (!root.contains("train_corpus") || !root["train_corpus"].is_string())
    throw ConfigError("train_corpus (string path) is required");
  config.train_corpus_path = resolve_path(base_dir, root["train_corpus"].get<std::string>());

  if (!root.contains("test_corpus") || !root["test_corpus"].is_object())
    throw ConfigError("test_corpus object is required");
  const auto& test = root["test_corpus"];
  for (const char* key : {"source", "target", "source_lang", "target_lang"}) {
    if (!test.contains(key) || !test[key].is_string())
      throw ConfigError(std::string("test_corpus.") + key + " (string) is required");
  }
  config.test_source_path = resolve_path(base_dir, test["source"].get<std::string>());
  config.test_target_path = resolve_path(base_dir, test["target"].get<std::string>());
  config.source_lang = test["source_lang"].get<std::string>();
  config.target_lang = test["target_lang"].get<std::string>();

  if (!root.contains("tokenizers") || !root["tokenizers"].is_array() ||
      root["tokenizers"].empty())
    throw ConfigError("tokenizers must be a non-empty array");
  for (const auto& entry : root["tokenizers"]) {
    if (!entry.is_object() || !entry.contains("algo"))
      throw ConfigError("each tokenizer entry needs an \"algo\"");
    TokenizerSpec spec;
    const auto kind = tokenizer_kind_from_name(entry["algo"].get<std::string>());
    if (!kind) throw ConfigError("unknown tokenizer algo: " + entry["algo"].get<std::string>());
    spec.kind = *kind;
    if (entry.contains("merges")) spec.num_merges = entry["merges"].get<size_t>();
    if (entry.contains("vocab_size")) spec.vocab_size = entry["vocab_size"].get<size_t>();
    if (entry.contains("model_type")) {
      const std::string type = entry["model_type"].get<std::string>();
      if (type == "character") {
        spec.sp_model_type = SpModelType::Character;
      } else if (type == "subword") {
        spec.sp_model_type = SpModelType::Subword;
      } else {
        throw ConfigError("model_type must be subword or character");
      }
    }
    switch (spec.kind) {
      case TokenizerKind::Bpe:
        if (!spec.num_merges && !spec.vocab_size)
          throw ConfigError("bpe requires merges or vocab_size");
        break;
      case TokenizerKind::WordPiece:
      case TokenizerKind::SentencePiece:
        if (!spec.vocab_size)
          throw ConfigError(to_string(spec.kind) + " requires vocab_size");
        break;
    }
    config.tokenizers.push_back(std::move(spec));
  }

  if (!root.contains("directions") || !root["directions"].is_array() ||
      root["directions"].empty())
    throw ConfigError("directions must be a non-empty array");
  for (const auto& entry : root["directions"]) {
    DirectionSpec dir;
    if (entry.is_string()) {
      dir.name = entry.get<std::string>();
    } else if (entry.is_object() && entry.contains("name")) {
      dir.name = entry["name"].get<std::string>();
      if (entry.contains("hypothesis") && !entry["hypothesis"].is_null())
        dir.hypothesis_path = resolve_path(base_dir, entry["hypothesis"].get<std::string>());
    } else {
      throw ConfigError("each direction must be a string or an object with a name");
    }
    const size_t dash = dir.name.find('-');
    if (dash == std::string::npos)
      throw ConfigError("direction names look like SRC-TGT, got: " + dir.name);
    const std::string tgt = dir.name.substr(dash + 1);
    if (tgt != config.source_lang && tgt != config.target_lang)
      throw ConfigError("direction " + dir.name + " does not end in a test corpus language");
    config.directions.push_back(std::move(dir));
  }

  if (root.contains("normalization")) {
    if (!root["normalization"].is_object())
      throw ConfigError("normalization must be an object");
    config.normalization = NormalizationConfig::from_json_text(root["normalization"].dump());
  }

  if (root.contains("metric_tokenization")) {
    const std::string mode = root["metric_tokenization"].get<std::string>();
    if (mode == "word-plain") {
      config.metric_tokenization = MetricTokenization::WordPlain;
    } else if (mode == "word-split-punct") {
      config.metric_tokenization = MetricTokenization::WordSplitPunct;
    } else {
      throw ConfigError("metric_tokenization must be word-split-punct or word-plain");
    }
  }

  if (root.contains("formats")) {
    config.formats.clear();
    for (const auto& fmt : root["formats"]) {
      const std::string name = fmt.get<std::string>();
      if (name != "tsv" && name != "json" && name != "md")
        throw ConfigError("unknown report format: " + name);
      config.formats.push_back(name);
    }
  }

  return config;
}

namespace {

Tokenizer train_tokenizer(const TokenizerSpec& spec, const std::vector<std::string>& corpus) {
  switch (spec.kind) {
    case TokenizerKind::Bpe: {
      BpeTrainOptions options;
      options.num_merges = spec.num_merges;
      options.vocab_size = spec.num_merges ? std::nullopt : spec.vocab_size;
      return Tokenizer(train_bpe(corpus, options));
    }
    case TokenizerKind::WordPiece: {
      WordPieceTrainOptions options;
      options.vocab_size = *spec.vocab_size;
      return Tokenizer(train_wordpiece(corpus, options));
    }
    case TokenizerKind::SentencePiece: {
      SpTrainOptions options;
      options.vocab_size = *spec.vocab_size;
      options.model_type = spec.sp_model_type;
      return Tokenizer(train_sp(corpus, options));
    }
  }
  throw std::invalid_argument("unknown tokenizer kind");
}

std::string iso8601_utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

ComparisonReport run_compare(const ExperimentConfig& config, unsigned jobs) {
  std::vector<std::string> train_lines = read_lines(config.train_corpus_path);
  for (std::string& line : train_lines) line = normalize(line, config.normalization);

  const ParallelCorpus test = load_parallel(config.test_source_path, config.test_target_path,
                                            config.source_lang, config.target_lang);

  // Reference side per direction: the side whose language ends the name.
  std::map<std::string, std::vector<std::string>> reference_sides;
  for (const DirectionSpec& dir : config.directions) {
    const std::string tgt = dir.name.substr(dir.name.find('-') + 1);
    std::vector<std::string> side;
    side.reserve(test.lines.size());
    for (const auto& [src_line, tgt_line] : test.lines) {
      side.push_back(tgt == config.target_lang ? tgt_line : src_line);
    }
    for (std::string& line : side) line = normalize(line, config.normalization);
    reference_sides.emplace(dir.name, std::move(side));
  }

  std::map<std::string, std::vector<std::string>> hypothesis_sides;
  for (const DirectionSpec& dir : config.directions) {
    if (!dir.hypothesis_path) continue;
    std::vector<std::string> lines = read_lines(*dir.hypothesis_path);
    const auto& refs = reference_sides.at(dir.name);
    if (lines.size() != refs.size()) throw LineCountMismatchError(lines.size(), refs.size());
    for (std::string& line : lines) line = normalize(line, config.normalization);
    hypothesis_sides.emplace(dir.name, std::move(lines));
  }

  const auto run_tokenizer_task =
      [&](const TokenizerSpec& spec) -> std::vector<ReportRow> {
    const std::string name = to_string(spec.kind);
    std::optional<Tokenizer> tokenizer;
    try {
      tokenizer.emplace(train_tokenizer(spec, train_lines));
    } catch (const ConfigError& e) {
      throw ConfigError("[" + name + "] " + e.what());
    } catch (const DataError& e) {
      throw DataError("[" + name + "] " + e.what());
    }

    std::vector<ReportRow> rows;
    for (const DirectionSpec& dir : config.directions) {
      try {
        ReportRow row;
        row.tokenizer = name;
        row.direction = dir.name;
        row.stats = compute_stats(*tokenizer, reference_sides.at(dir.name));
        const auto hyp = hypothesis_sides.find(dir.name);
        if (hyp != hypothesis_sides.end()) {
          row.metrics = score_corpus(hyp->second, reference_sides.at(dir.name),
                                     config.metric_tokenization);
        }
        rows.push_back(std::move(row));
      } catch (const ConfigError& e) {
        throw ConfigError("[" + name + ", " + dir.name + "] " + e.what());
      } catch (const DataError& e) {
        throw DataError("[" + name + ", " + dir.name + "] " + e.what());
      }
    }
    return rows;
  };

  ComparisonReport report;
  report.config_hash = config.config_hash;
  report.train_corpus_path = config.train_corpus_path;
  report.test_source_path = config.test_source_path;
  report.test_target_path = config.test_target_path;
  report.timestamp = iso8601_utc_now();

  if (jobs <= 1 || config.tokenizers.size() <= 1) {
    for (const TokenizerSpec& spec : config.tokenizers) {
      for (ReportRow& row : run_tokenizer_task(spec)) report.rows.push_back(std::move(row));
    }
  } else {
    // One task per tokenizer; gather in config order.
    std::vector<std::future<std::vector<ReportRow>>> futures;
    futures.reserve(config.tokenizers.size());
    for (const TokenizerSpec& spec : config.tokenizers) {
      futures.push_back(std::async(std::launch::async, run_tokenizer_task, std::cref(spec)));
    }
    for (auto& future : futures) {
      for (ReportRow& row : future.get()) report.rows.push_back(std::move(row));
    }
  }
  return report;
}

namespace {

std::string format_score(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

std::string format_ratio(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", value);
  return buf;
}

std::vector<std::string> metric_cells(const ReportRow& row) {
  if (!row.metrics) return {"\xE2\x80\x94", "\xE2\x80\x94", "\xE2\x80\x94",
                            "\xE2\x80\x94", "\xE2\x80\x94"};  // em dash
  return {format_score(row.metrics->bleu), format_score(row.metrics->ter),
          format_score(row.metrics->meteor_exact), format_score(row.metrics->chrf),
          format_score(row.metrics->ribes)};
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
}

std::string render_tsv(const ComparisonReport& report) {
  std::string out = kReportTsvHeader;
  out += '\n';
  for (const ReportRow& row : report.rows) {
    out += row.tokenizer;
    out += '\t';
    out += row.direction;
    for (const std::string& cell : metric_cells(row)) {
      out += '\t';
      out += cell;
    }
    out += "\tn/a\n";
  }
  return out;
}

std::string render_stats_tsv(const ComparisonReport& report) {
  std::string out = "Model\tLanguage Pair\tVocab\tFertility\tUnkRate\tCompression\tTypeTokenRatio\n";
  for (const ReportRow& row : report.rows) {
    out += row.tokenizer;
    out += '\t';
    out += row.direction;
    out += '\t';
    out += std::to_string(row.stats.vocab_size);
    out += '\t';
    out += format_ratio(row.stats.fertility());
    out += '\t';
    out += format_ratio(row.stats.unk_rate());
    out += '\t';
    out += format_ratio(row.stats.compression());
    out += '\t';
    out += format_ratio(row.stats.type_token_ratio());
    out += '\n';
  }
  return out;
}

std::string render_md(const ComparisonReport& report) {
  std::string out = "# Tokenizer comparison\n";
  std::set<std::string> seen;
  std::vector<std::string> tokenizers;
  for (const ReportRow& row : report.rows) {
    if (seen.insert(row.tokenizer).second) tokenizers.push_back(row.tokenizer);
  }
  for (const std::string& tokenizer : tokenizers) {
    out += "\n## " + tokenizer + "\n\n";
    out += "| Language Pair | BLEU | TER | METEOR | CHRF | RIBES | COMET |\n";
    out += "|---|---|---|---|---|---|---|\n";
    for (const ReportRow& row : report.rows) {
      if (row.tokenizer != tokenizer) continue;
      out += "| " + row.direction;
      for (const std::string& cell : metric_cells(row)) out += " | " + cell;
      out += " | n/a |\n";
    }
    out += "\n| Language Pair | Vocab | Fertility | UnkRate | Compression | TypeTokenRatio |\n";
    out += "|---|---|---|---|---|---|\n";
    for (const ReportRow& row : report.rows) {
      if (row.tokenizer != tokenizer) continue;
      out += "| " + row.direction + " | " + std::to_string(row.stats.vocab_size) + " | " +
             format_ratio(row.stats.fertility()) + " | " + format_ratio(row.stats.unk_rate()) +
             " | " + format_ratio(row.stats.compression()) + " | " +
             format_ratio(row.stats.type_token_ratio()) + " |\n";
    }
  }
  return out;
}

std::string render_json(const ComparisonReport& report) {
  nlohmann::json root;
  root["schema"] = "subtok-report v1";
  root["config_hash"] = report.config_hash;
  root["train_corpus"] = report.train_corpus_path;
  root["test_source"] = report.test_source_path;
  root["test_target"] = report.test_target_path;
  root["generated_at"] = report.timestamp;
  root["rows"] = nlohmann::json::array();
  for (const ReportRow& row : report.rows) {
    nlohmann::json r;
    r["model"] = row.tokenizer;
    r["language_pair"] = row.direction;
    if (row.metrics) {
      r["metrics"] = {{"bleu", row.metrics->bleu},
                      {"ter", row.metrics->ter},
                      {"meteor", row.metrics->meteor_exact},
                      {"chrf", row.metrics->chrf},
                      {"ribes", row.metrics->ribes},
                      {"comet", nullptr},
                      {"tokenization", to_string(row.metrics->tokenization)}};
    } else {
      r["metrics"] = nullptr;
    }
    r["stats"] = {{"vocab_size", row.stats.vocab_size},
                  {"total_tokens", row.stats.total_tokens},
                  {"total_words", row.stats.total_words},
                  {"total_chars", row.stats.total_chars},
                  {"unk_tokens", row.stats.unk_tokens},
                  {"distinct_tokens", row.stats.distinct_tokens},
                  {"fertility", row.stats.fertility()},
                  {"unk_rate", row.stats.unk_rate()},
                  {"compression", row.stats.compression()},
                  {"type_token_ratio", row.stats.type_token_ratio()}};
    root["rows"].push_back(std::move(r));
  }
  return root.dump(2) + "\n";
}

}  // namespace

void emit_report(const ComparisonReport& report, const std::string& out_dir,
                 const std::vector<std::string>& formats) {
  if (report.rows.empty()) throw DataError("report has no rows");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir + ": " + ec.message());

  for (const std::string& format : formats) {
    if (format == "tsv") {
      write_file(fs::path(out_dir) / "report.tsv", render_tsv(report));
      write_file(fs::path(out_dir) / "stats.tsv", render_stats_tsv(report));
    } else if (format == "json") {
      write_file(fs::path(out_dir) / "report.json", render_json(report));
    } else if (format == "md") {
      write_file(fs::path(out_dir) / "report.md", render_md(report));
    } else {
      throw ConfigError("unknown report format: " + format);
    }
  }
}

}  // namespace subtok
