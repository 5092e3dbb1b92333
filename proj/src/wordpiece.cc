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

#include "subtok/wordpiece.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>

#include "json.hpp"
#include "subtok/errors.h"
#include "subtok/normalizer.h"
#include "subtok/unicode.h"

namespace subtok {

namespace {

constexpr char kVocabFileHeader[] = "#subtok-wp v1";
constexpr char kContinuationPrefix[] = "##";
constexpr uint64_t kMinPairCount = 2;

std::string surface_form(const std::string& content, bool word_initial) {
  return word_initial ? content : kContinuationPrefix + content;
}

}  // namespace

Rational pair_score(uint64_t freq_xy, uint64_t freq_x, uint64_t freq_y) {
  if (freq_xy == 0 || freq_x == 0 || freq_y == 0) throw ZeroFrequencyError();
  // Reduce against each factor separately so the denominator product
  // stays small.
  uint64_t num = freq_xy;
  uint64_t gx = std::gcd(num, freq_x);
  num /= gx;
  const uint64_t dx = freq_x / gx;
  uint64_t gy = std::gcd(num, freq_y);
  num /= gy;
  const uint64_t dy = freq_y / gy;
  return Rational::reduced(num, dx * dy);
}

WordPieceVocab::WordPieceVocab(std::vector<std::string> tokens, std::string unk_token,
                               size_t max_word_chars)
    : tokens_(std::move(tokens)),
      unk_token_(std::move(unk_token)),
      max_word_chars_(max_word_chars) {
  if (std::find(tokens_.begin(), tokens_.end(), unk_token_) == tokens_.end())
    tokens_.insert(tokens_.begin(), unk_token_);
  for (const std::string& token : tokens_) lookup_.insert(token);
}

bool WordPieceVocab::contains(std::string_view token) const {
  return lookup_.find(std::string(token)) != lookup_.end();
}

WordPieceVocab train_wordpiece(const std::vector<std::string>& corpus,
                               const WordPieceTrainOptions& options) {
  // Working segmentations hold piece contents; position 0 is word-initial.
  std::map<std::string, uint64_t> freqs;
  for (const std::string& sentence : corpus) {
    for (std::string& word : pretokenize(sentence)) ++freqs[std::move(word)];
  }
  if (freqs.empty()) throw EmptyCorpusError();

  std::map<std::string, std::vector<std::string>> segmentations;
  std::vector<std::string> vocab_order;
  std::unordered_set<std::string> vocab_set;
  const auto add_token = [&](const std::string& token) {
    if (vocab_set.insert(token).second) vocab_order.push_back(token);
  };

  for (const auto& [word, freq] : freqs) {
    segmentations.emplace(word, unicode::split_code_points(word));
  }
  // Base inventory: each character in the positional forms it occurs in.
  for (const auto& [word, pieces] : segmentations) {
    for (size_t i = 0; i < pieces.size(); ++i) add_token(surface_form(pieces[i], i == 0));
  }

  if (options.vocab_size < vocab_order.size())
    throw VocabSizeTooSmallError(options.vocab_size, vocab_order.size());

  while (vocab_order.size() < options.vocab_size) {
    // Marginals by piece content over the current segmentations.
    std::map<std::string, uint64_t> unigram;
    std::map<std::pair<std::string, std::string>, uint64_t> pairs;
    for (const auto& [word, pieces] : segmentations) {
      const uint64_t freq = freqs.at(word);
      for (const std::string& piece : pieces) unigram[piece] += freq;
      size_t i = 0;
      while (i + 1 < pieces.size()) {
        pairs[{pieces[i], pieces[i + 1]}] += freq;
        if (i + 2 < pieces.size() && pieces[i] == pieces[i + 1] &&
            pieces[i + 1] == pieces[i + 2]) {
          i += 2;
        } else {
          ++i;
        }
      }
    }

    const std::pair<std::string, std::string>* best_pair = nullptr;
    Rational best_score;
    std::string best_merged;
    for (const auto& [pair, freq_xy] : pairs) {
      if (freq_xy < kMinPairCount) continue;
      const Rational score = pair_score(freq_xy, unigram.at(pair.first), unigram.at(pair.second));
      std::string merged = pair.first + pair.second;
      const bool better =
          best_pair == nullptr || score > best_score ||
          (score == best_score && merged < best_merged);
      if (better) {
        best_pair = &pair;
        best_score = score;
        best_merged = std::move(merged);
      }
    }
    if (best_pair == nullptr) break;
    if (options.min_score_threshold && best_score.to_double() < *options.min_score_threshold)
      break;

    const std::string left = best_pair->first;
    const std::string right = best_pair->second;
    bool seen_initial = false;
    bool seen_internal = false;
    for (auto& [word, pieces] : segmentations) {
      size_t write = 0, read = 0;
      while (read < pieces.size()) {
        if (read + 1 < pieces.size() && pieces[read] == left && pieces[read + 1] == right) {
          (write == 0 ? seen_initial : seen_internal) = true;
          pieces[write++] = left + right;
          read += 2;
        } else {
          if (write != read) pieces[write] = std::move(pieces[read]);
          ++write;
          ++read;
        }
      }
      pieces.resize(write);
    }
    if (seen_initial) add_token(best_merged);
    if (seen_internal) add_token(kContinuationPrefix + best_merged);
  }

  std::vector<std::string> tokens;
  tokens.reserve(vocab_order.size() + 1);
  tokens.push_back(options.unk_token);
  tokens.insert(tokens.end(), vocab_order.begin(), vocab_order.end());
  return WordPieceVocab(std::move(tokens), options.unk_token, options.max_word_chars);
}

TokenSequence encode_wordpiece(const WordPieceVocab& vocab, std::string_view word) {
  const std::vector<std::string> chars = unicode::split_code_points(word);
  if (chars.empty()) return {};
  if (chars.size() > vocab.max_word_chars()) return {vocab.unk_token()};

  TokenSequence pieces;
  size_t start = 0;
  while (start < chars.size()) {
    size_t end = chars.size();
    std::string matched;
    while (end > start) {
      std::string candidate;
      if (start > 0) candidate = kContinuationPrefix;
      for (size_t i = start; i < end; ++i) candidate += chars[i];
      if (vocab.contains(candidate)) {
        matched = std::move(candidate);
        break;
      }
      --end;
    }
    if (matched.empty()) return {vocab.unk_token()};
    pieces.push_back(std::move(matched));
    start = end;
  }
  return pieces;
}

TokenSequence encode_wordpiece_sentence(const WordPieceVocab& vocab, std::string_view sentence) {
  TokenSequence tokens;
  for (const std::string& word : pretokenize(sentence)) {
    TokenSequence word_tokens = encode_wordpiece(vocab, word);
    tokens.insert(tokens.end(), std::make_move_iterator(word_tokens.begin()),
                  std::make_move_iterator(word_tokens.end()));
  }
  return tokens;
}

std::string decode_wordpiece(const TokenSequence& tokens, std::vector<std::string>* warnings) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    const std::string& token = tokens[i];
    const bool continuation = token.rfind(kContinuationPrefix, 0) == 0;
    if (continuation && i == 0 && warnings)
      warnings->push_back("sequence starts with a continuation token: " + token);
    if (continuation) {
      out.append(token, 2, std::string::npos);
    } else {
      if (!out.empty()) out.push_back(' ');
      out += token;
    }
  }
  return out;
}

void WordPieceVocab::save(const std::string& dir) const {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create model directory " + dir + ": " + ec.message());

  {
    std::ofstream out(fs::path(dir) / "vocab.txt", std::ios::binary);
    if (!out) throw IoError("cannot write vocab.txt in " + dir);
    out << kVocabFileHeader << '\n';
    for (const std::string& token : tokens_) out << token << '\n';
  }
  {
    nlohmann::json meta;
    meta["schema"] = "subtok-model v1";
    meta["algo"] = "wordpiece";
    meta["unk_token"] = unk_token_;
    meta["max_word_chars"] = max_word_chars_;
    std::ofstream out(fs::path(dir) / "meta.json", std::ios::binary);
    if (!out) throw IoError("cannot write meta.json in " + dir);
    out << meta.dump(2) << '\n';
  }
}

WordPieceVocab WordPieceVocab::load(const std::string& dir) {
  namespace fs = std::filesystem;

  std::string unk_token = "[UNK]";
  size_t max_word_chars = 100;
  {
    std::ifstream in(fs::path(dir) / "meta.json", std::ios::binary);
    if (in) {
      nlohmann::json meta = nlohmann::json::parse(in, nullptr, false);
      if (!meta.is_discarded()) {
        unk_token = meta.value("unk_token", unk_token);
        max_word_chars = meta.value("max_word_chars", max_word_chars);
      }
    }
  }

  std::vector<std::string> tokens;
  {
    std::ifstream in(fs::path(dir) / "vocab.txt", std::ios::binary);
    if (!in) throw IoError("cannot read vocab.txt in " + dir);
    std::string line;
    if (!std::getline(in, line) || line != kVocabFileHeader)
      throw DataError("bad vocab file header in " + dir);
    while (std::getline(in, line)) {
      if (!line.empty()) tokens.push_back(line);
    }
  }
  return WordPieceVocab(std::move(tokens), std::move(unk_token), max_word_chars);
}

}  // namespace subtok
