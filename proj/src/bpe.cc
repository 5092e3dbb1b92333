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

#include "subtok/bpe.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "subtok/errors.h"
#include "subtok/normalizer.h"
#include "subtok/unicode.h"

namespace subtok {

namespace {

constexpr uint64_t kMinPairCount = 2;
constexpr char kMergeFileHeader[] = "#subtok-bpe v1";
constexpr char kAlphabetFileHeader[] = "#subtok-bpe-alphabet v1";

std::string pair_key(const std::string& left, const std::string& right) {
  return left + ' ' + right;
}

// Replaces every left/right adjacency, scanning left to right.
void apply_merge(std::vector<std::string>& symbols, const std::string& left,
                 const std::string& right) {
  size_t write = 0;
  size_t read = 0;
  while (read < symbols.size()) {
    if (read + 1 < symbols.size() && symbols[read] == left && symbols[read + 1] == right) {
      symbols[write++] = left + right;
      read += 2;
    } else {
      if (write != read) symbols[write] = std::move(symbols[read]);
      ++write;
      ++read;
    }
  }
  symbols.resize(write);
}

}  // namespace

BpeModel::BpeModel(std::set<std::string> base_alphabet, std::vector<MergeRule> merges,
                   UnknownPolicy policy)
    : base_alphabet_(std::move(base_alphabet)),
      merges_(std::move(merges)),
      unknown_policy_(policy) {
  for (size_t i = 0; i < merges_.size(); ++i) {
    if (merges_[i].left.empty() || merges_[i].right.empty())
      throw DataError("merge rule with empty side at rank " + std::to_string(i));
    if (merges_[i].rank != i)
      throw DataError("merge ranks must be contiguous from 0");
  }
  index_merges();
}

void BpeModel::index_merges() {
  rank_by_pair_.clear();
  rank_by_pair_.reserve(merges_.size());
  for (const MergeRule& rule : merges_) {
    rank_by_pair_.emplace(pair_key(rule.left, rule.right), rule.rank);
  }
}

std::set<std::string> BpeModel::vocabulary() const {
  std::set<std::string> vocab(base_alphabet_);
  for (const MergeRule& rule : merges_) vocab.insert(rule.left + rule.right);
  return vocab;
}

std::optional<uint32_t> BpeModel::merge_rank(const std::string& left,
                                             const std::string& right) const {
  const auto it = rank_by_pair_.find(pair_key(left, right));
  if (it == rank_by_pair_.end()) return std::nullopt;
  return it->second;
}

WordFrequencyTable build_word_frequencies(const std::vector<std::string>& corpus) {
  WordFrequencyTable freqs;
  for (const std::string& sentence : corpus) {
    for (std::string& word : pretokenize(sentence)) {
      ++freqs[std::move(word)];
    }
  }
  return freqs;
}

std::map<std::pair<std::string, std::string>, uint64_t> count_pairs(
    const std::map<std::string, std::vector<std::string>>& segmentations,
    const WordFrequencyTable& freqs) {
  std::map<std::pair<std::string, std::string>, uint64_t> counts;
  for (const auto& [word, freq] : freqs) {
    const auto it = segmentations.find(word);
    if (it == segmentations.end()) throw DataError("word without segmentation: " + word);
    const std::vector<std::string>& symbols = it->second;
    size_t i = 0;
    while (i + 1 < symbols.size()) {
      counts[{symbols[i], symbols[i + 1]}] += freq;
      if (i + 2 < symbols.size() && symbols[i] == symbols[i + 1] &&
          symbols[i + 1] == symbols[i + 2]) {
        i += 2;  // identical overlapping pair: next slot starts after this one
      } else {
        ++i;
      }
    }
  }
  return counts;
}

BpeModel train_bpe(const std::vector<std::string>& corpus, const BpeTrainOptions& options) {
  if (options.num_merges.has_value() == options.vocab_size.has_value())
    throw ConfigError("exactly one of num_merges / vocab_size must be given");

  const WordFrequencyTable freqs = build_word_frequencies(corpus);
  if (freqs.empty()) throw EmptyCorpusError();

  std::set<std::string> alphabet;
  std::map<std::string, std::vector<std::string>> segmentations;
  const std::string marker = "</w>";
  for (const auto& [word, freq] : freqs) {
    std::vector<std::string> symbols = unicode::split_code_points(word);
    for (const std::string& ch : symbols) alphabet.insert(ch);
    symbols.push_back(marker);
    segmentations.emplace(word, std::move(symbols));
  }

  size_t merge_target;
  if (options.num_merges) {
    merge_target = *options.num_merges;
  } else {
    if (*options.vocab_size < alphabet.size())
      throw VocabSizeTooSmallError(*options.vocab_size, alphabet.size());
    merge_target = *options.vocab_size - alphabet.size();
  }

  std::vector<MergeRule> merges;
  merges.reserve(merge_target);
  while (merges.size() < merge_target) {
    const auto counts = count_pairs(segmentations, freqs);

    const std::pair<std::string, std::string>* best_pair = nullptr;
    uint64_t best_count = 0;
    for (const auto& [pair, count] : counts) {
      // std::map iterates pairs in ascending lexicographic order, so on a
      // count tie the first (smallest) pair seen wins.
      if (count > best_count) {
        best_count = count;
        best_pair = &pair;
      }
    }
    if (best_pair == nullptr || best_count < kMinPairCount) break;

    merges.push_back({best_pair->first, best_pair->second,
                      static_cast<uint32_t>(merges.size())});
    for (auto& [word, symbols] : segmentations) {
      apply_merge(symbols, merges.back().left, merges.back().right);
    }
  }

  return BpeModel(std::move(alphabet), std::move(merges), options.unknown_policy);
}

TokenSequence encode_bpe(const BpeModel& model, std::string_view sentence) {
  TokenSequence tokens;
  const std::string& marker = model.end_of_word_marker();
  for (const std::string& word : pretokenize(sentence)) {
    std::vector<std::string> symbols = unicode::split_code_points(word);
    symbols.push_back(marker);

    while (symbols.size() > 1) {
      uint32_t best_rank = std::numeric_limits<uint32_t>::max();
      bool found = false;
      for (size_t i = 0; i + 1 < symbols.size(); ++i) {
        const auto rank = model.merge_rank(symbols[i], symbols[i + 1]);
        if (rank && *rank < best_rank) {
          best_rank = *rank;
          found = true;
        }
      }
      if (!found) break;
      const MergeRule& rule = model.merges()[best_rank];
      apply_merge(symbols, rule.left, rule.right);
    }

    // Surface form: the last symbol carries the end-of-word marker (fused
    // or standalone); drop it and append the joiner to non-final pieces.
    if (symbols.back() == marker) {
      symbols.pop_back();
    } else {
      std::string& last = symbols.back();
      last.resize(last.size() - marker.size());
    }
    for (size_t i = 0; i < symbols.size(); ++i) {
      std::string piece = std::move(symbols[i]);
      if (model.unknown_policy() == UnknownPolicy::EmitUnk &&
          unicode::code_point_count(piece) == 1 && !model.base_alphabet().count(piece)) {
        piece = model.unk_token();
      }
      if (i + 1 < symbols.size()) piece += model.joiner();
      tokens.push_back(std::move(piece));
    }
  }
  return tokens;
}

std::string decode_bpe(const TokenSequence& tokens, const std::string& joiner,
                       std::vector<std::string>* warnings) {
  std::string out;
  bool glue_next = false;
  for (size_t i = 0; i < tokens.size(); ++i) {
    const std::string& token = tokens[i];
    const bool has_joiner =
        token.size() >= joiner.size() &&
        token.compare(token.size() - joiner.size(), joiner.size(), joiner) == 0;
    if (!glue_next && !out.empty()) out.push_back(' ');
    if (has_joiner && i + 1 == tokens.size()) {
      if (warnings) warnings->push_back("dangling joiner at end of sequence: " + token);
      out += token;  // kept verbatim
      glue_next = false;
      continue;
    }
    if (has_joiner) {
      out.append(token, 0, token.size() - joiner.size());
      glue_next = true;
    } else {
      out += token;
      glue_next = false;
    }
  }
  return out;
}

void BpeModel::save(const std::string& dir) const {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create model directory " + dir + ": " + ec.message());

  {
    std::ofstream out(fs::path(dir) / "merges.txt", std::ios::binary);
    if (!out) throw IoError("cannot write merges.txt in " + dir);
    out << kMergeFileHeader << '\n';
    for (const MergeRule& rule : merges_) out << rule.left << ' ' << rule.right << '\n';
  }
  {
    std::ofstream out(fs::path(dir) / "alphabet.txt", std::ios::binary);
    if (!out) throw IoError("cannot write alphabet.txt in " + dir);
    out << kAlphabetFileHeader << '\n';
    for (const std::string& ch : base_alphabet_) out << ch << '\n';
  }
  {
    nlohmann::json meta;
    meta["schema"] = "subtok-model v1";
    meta["algo"] = "bpe";
    meta["joiner"] = joiner_;
    meta["end_of_word_marker"] = end_of_word_marker_;
    meta["unk_token"] = unk_token_;
    meta["unknown_policy"] =
        unknown_policy_ == UnknownPolicy::EmitChar ? "emit-char" : "emit-unk";
    std::ofstream out(fs::path(dir) / "meta.json", std::ios::binary);
    if (!out) throw IoError("cannot write meta.json in " + dir);
    out << meta.dump(2) << '\n';
  }
}

BpeModel BpeModel::load(const std::string& dir) {
  namespace fs = std::filesystem;

  std::set<std::string> alphabet;
  {
    std::ifstream in(fs::path(dir) / "alphabet.txt", std::ios::binary);
    if (!in) throw IoError("cannot read alphabet.txt in " + dir);
    std::string line;
    if (!std::getline(in, line) || line != kAlphabetFileHeader)
      throw DataError("bad alphabet file header in " + dir);
    while (std::getline(in, line)) {
      if (!line.empty()) alphabet.insert(line);
    }
  }

  std::vector<MergeRule> merges;
  {
    std::ifstream in(fs::path(dir) / "merges.txt", std::ios::binary);
    if (!in) throw IoError("cannot read merges.txt in " + dir);
    std::string line;
    if (!std::getline(in, line) || line != kMergeFileHeader)
      throw DataError("bad merge file header in " + dir);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const size_t space = line.find(' ');
      if (space == std::string::npos || space == 0 || space + 1 == line.size())
        throw DataError("malformed merge line: " + line);
      merges.push_back({line.substr(0, space), line.substr(space + 1),
                        static_cast<uint32_t>(merges.size())});
    }
  }

  UnknownPolicy policy = UnknownPolicy::EmitChar;
  {
    std::ifstream in(fs::path(dir) / "meta.json", std::ios::binary);
    if (in) {
      nlohmann::json meta = nlohmann::json::parse(in, nullptr, false);
      if (!meta.is_discarded() && meta.value("unknown_policy", "emit-char") == "emit-unk")
        policy = UnknownPolicy::EmitUnk;
    }
  }

  return BpeModel(std::move(alphabet), std::move(merges), policy);
}

}  // namespace subtok
