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

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "subtok/errors.h"
#include "subtok/harness.h"
#include "subtok/metrics.h"
#include "subtok/normalizer.h"
#include "subtok/tokenizer.h"

namespace {

using namespace subtok;

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitDataError = 3;
constexpr int kExitInternalError = 4;

std::vector<std::string> read_input_lines(const std::string& path) {
  if (!path.empty()) return read_lines(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(std::cin, line)) lines.push_back(line);
  return lines;
}

class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw IoError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

int cmd_normalize(const std::string& config_path, const std::string& in_path,
                  const std::string& out_path) {
  const NormalizationConfig config = config_path.empty()
                                         ? NormalizationConfig::all_on()
                                         : NormalizationConfig::from_json_file(config_path);
  OutputTarget out(out_path);
  for (const std::string& line : read_input_lines(in_path)) {
    out.stream() << normalize(line, config) << '\n';
  }
  return kExitOk;
}

int cmd_train(const std::string& algo, const std::string& in_path, const std::string& out_dir,
              long long merges, long long vocab_size, const std::string& model_type) {
  const auto kind = tokenizer_kind_from_name(algo);
  if (!kind) throw ConfigError("unknown --algo: " + algo);

  const std::vector<std::string> corpus = read_lines(in_path);
  std::unique_ptr<Tokenizer> tokenizer;
  switch (*kind) {
    case TokenizerKind::Bpe: {
      if ((merges < 0) == (vocab_size < 0))
        throw ConfigError("bpe needs exactly one of --merges / --vocab-size");
      BpeTrainOptions options;
      if (merges >= 0) options.num_merges = static_cast<size_t>(merges);
      if (vocab_size >= 0) options.vocab_size = static_cast<size_t>(vocab_size);
      tokenizer = std::make_unique<Tokenizer>(train_bpe(corpus, options));
      break;
    }
    case TokenizerKind::WordPiece: {
      if (vocab_size < 0) throw ConfigError("wordpiece needs --vocab-size");
      WordPieceTrainOptions options;
      options.vocab_size = static_cast<size_t>(vocab_size);
      tokenizer = std::make_unique<Tokenizer>(train_wordpiece(corpus, options));
      break;
    }
    case TokenizerKind::SentencePiece: {
      if (vocab_size < 0) throw ConfigError("sentencepiece needs --vocab-size");
      SpTrainOptions options;
      options.vocab_size = static_cast<size_t>(vocab_size);
      if (model_type == "character") {
        options.model_type = SpModelType::Character;
      } else if (model_type == "subword" || model_type.empty()) {
        options.model_type = SpModelType::Subword;
      } else {
        throw ConfigError("--model-type must be subword or character");
      }
      tokenizer = std::make_unique<Tokenizer>(train_sp(corpus, options));
      break;
    }
  }
  tokenizer->save(out_dir);
  std::cerr << "trained " << algo << " model (vocab " << tokenizer->vocab_size() << ") -> "
            << out_dir << '\n';
  return kExitOk;
}

int cmd_encode(const std::string& model_dir, const std::string& in_path,
               const std::string& out_path) {
  const Tokenizer tokenizer = Tokenizer::load(model_dir);
  OutputTarget out(out_path);
  for (const std::string& line : read_input_lines(in_path)) {
    const TokenSequence tokens = tokenizer.encode_line(line);
    for (size_t i = 0; i < tokens.size(); ++i) {
      if (i > 0) out.stream() << ' ';
      out.stream() << tokens[i];
    }
    out.stream() << '\n';
  }
  return kExitOk;
}

int cmd_decode(const std::string& model_dir, const std::string& in_path,
               const std::string& out_path) {
  const Tokenizer tokenizer = Tokenizer::load(model_dir);
  OutputTarget out(out_path);
  size_t line_no = 0;
  for (const std::string& line : read_input_lines(in_path)) {
    ++line_no;
    std::vector<std::string> warnings;
    out.stream() << tokenizer.decode_line(pretokenize(line), &warnings) << '\n';
    for (const std::string& warning : warnings) {
      std::cerr << "line " << line_no << ": " << warning << '\n';
    }
  }
  return kExitOk;
}

int cmd_score(const std::string& hyp_path, const std::string& ref_path,
              const std::string& metric, const std::string& tokenization) {
  MetricTokenization mode = MetricTokenization::WordSplitPunct;
  if (tokenization == "word-plain") {
    mode = MetricTokenization::WordPlain;
  } else if (!tokenization.empty() && tokenization != "word-split-punct") {
    throw ConfigError("--tokenization must be word-split-punct or word-plain");
  }

  const std::vector<std::string> hyp_lines = read_lines(hyp_path);
  const std::vector<std::string> ref_lines = read_lines(ref_path);
  const MetricScore score = score_corpus(hyp_lines, ref_lines, mode);

  nlohmann::json out;
  out["tokenization"] = to_string(mode);
  out["segments"] = hyp_lines.size();
  if (metric == "all" || metric == "bleu") out["bleu"] = score.bleu;
  if (metric == "all" || metric == "ter") out["ter"] = score.ter;
  if (metric == "all" || metric == "meteor") out["meteor"] = score.meteor_exact;
  if (metric == "all" || metric == "chrf") out["chrf"] = score.chrf;
  if (metric == "all" || metric == "ribes") out["ribes"] = score.ribes;
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

int cmd_stats(const std::string& model_dir, const std::string& in_path) {
  const Tokenizer tokenizer = Tokenizer::load(model_dir);
  const CorpusStats stats = compute_stats(tokenizer, read_lines(in_path));
  nlohmann::json out;
  out["vocab_size"] = stats.vocab_size;
  out["total_tokens"] = stats.total_tokens;
  out["total_words"] = stats.total_words;
  out["total_chars"] = stats.total_chars;
  out["unk_tokens"] = stats.unk_tokens;
  out["distinct_tokens"] = stats.distinct_tokens;
  out["fertility"] = stats.fertility();
  out["unk_rate"] = stats.unk_rate();
  out["compression"] = stats.compression();
  out["type_token_ratio"] = stats.type_token_ratio();
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

int cmd_compare(const std::string& config_path, const std::string& out_dir,
                const std::string& formats_arg, unsigned jobs) {
  const ExperimentConfig config = ExperimentConfig::from_file(config_path);

  std::vector<std::string> formats;
  if (!formats_arg.empty()) {
    std::stringstream stream(formats_arg);
    std::string fmt;
    while (std::getline(stream, fmt, ',')) {
      if (!fmt.empty()) formats.push_back(fmt);
    }
  } else {
    formats = config.formats;
  }

  const ComparisonReport report = run_compare(config, jobs);
  emit_report(report, out_dir, formats);
  std::cerr << "wrote " << report.rows.size() << " rows to " << out_dir << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"subword tokenization toolkit and MT evaluation harness"};
  app.require_subcommand(1);

  std::string config_path, in_path, out_path, model_dir, out_dir;
  std::string algo, model_type, hyp_path, ref_path;
  std::string metric = "all";
  std::string tokenization = "word-split-punct";
  std::string formats;
  long long merges = -1, vocab_size = -1;
  unsigned jobs = 1;

  auto* normalize_cmd = app.add_subcommand("normalize", "normalize text line by line");
  normalize_cmd->add_option("--config", config_path, "normalization config JSON");
  normalize_cmd->add_option("--in", in_path, "input file (default stdin)");
  normalize_cmd->add_option("--out", out_path, "output file (default stdout)");

  auto* train_cmd = app.add_subcommand("train", "train a tokenizer model");
  train_cmd->add_option("--algo", algo, "bpe | wordpiece | sentencepiece")->required();
  train_cmd->add_option("--in", in_path, "training corpus")->required();
  train_cmd->add_option("--out", out_path, "output model directory")->required();
  train_cmd->add_option("--merges", merges, "bpe merge count");
  train_cmd->add_option("--vocab-size", vocab_size, "vocabulary size target");
  train_cmd->add_option("--model-type", model_type, "sentencepiece: subword | character");

  auto* encode_cmd = app.add_subcommand("encode", "encode text with a trained model");
  encode_cmd->add_option("--model", model_dir, "model directory")->required();
  encode_cmd->add_option("--in", in_path, "input file (default stdin)");
  encode_cmd->add_option("--out", out_path, "output file (default stdout)");

  auto* decode_cmd = app.add_subcommand("decode", "decode token lines back to text");
  decode_cmd->add_option("--model", model_dir, "model directory")->required();
  decode_cmd->add_option("--in", in_path, "input file (default stdin)");
  decode_cmd->add_option("--out", out_path, "output file (default stdout)");

  auto* score_cmd = app.add_subcommand("score", "score hypothesis against reference");
  score_cmd->add_option("--hyp", hyp_path, "hypothesis file")->required();
  score_cmd->add_option("--ref", ref_path, "reference file")->required();
  score_cmd->add_option("--metric", metric, "all | bleu | ter | meteor | chrf | ribes");
  score_cmd->add_option("--tokenization", tokenization, "word-split-punct | word-plain");

  auto* stats_cmd = app.add_subcommand("stats", "intrinsic tokenizer statistics");
  stats_cmd->add_option("--model", model_dir, "model directory")->required();
  stats_cmd->add_option("--in", in_path, "corpus file")->required();

  auto* compare_cmd = app.add_subcommand("compare", "run a tokenizer comparison experiment");
  compare_cmd->add_option("--config", config_path, "experiment config JSON")->required();
  compare_cmd->add_option("--out-dir", out_dir, "report output directory")->required();
  compare_cmd->add_option("--format", formats, "comma-separated: tsv,json,md");
  compare_cmd->add_option("--jobs", jobs, "concurrent tokenizer tasks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (normalize_cmd->parsed()) return cmd_normalize(config_path, in_path, out_path);
    if (train_cmd->parsed()) return cmd_train(algo, in_path, out_path, merges, vocab_size, model_type);
    if (encode_cmd->parsed()) return cmd_encode(model_dir, in_path, out_path);
    if (decode_cmd->parsed()) return cmd_decode(model_dir, in_path, out_path);
    if (score_cmd->parsed()) return cmd_score(hyp_path, ref_path, metric, tokenization);
    if (stats_cmd->parsed()) return cmd_stats(model_dir, in_path);
    if (compare_cmd->parsed()) return cmd_compare(config_path, out_dir, formats, jobs);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitDataError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternalError;
  }
  return kExitConfigError;
}
