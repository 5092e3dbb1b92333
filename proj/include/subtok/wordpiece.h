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
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "subtok/rational.h"
#include "subtok/token_sequence.h"

namespace subtok {

// Merge score: freq(x,y) / (freq(x) * freq(y)), as an exact rational.
// Throws ZeroFrequencyError if any count is zero.
Rational pair_score(uint64_t freq_xy, uint64_t freq_x, uint64_t freq_y);

// Vocabulary of surface tokens. Word-internal continuations carry the
// "##" prefix literally; token ids are line positions in the vocab file.
class WordPieceVocab {
 public:
  WordPieceVocab() = default;
  WordPieceVocab(std::vector<std::string> tokens, std::string unk_token = "[UNK]",
                 size_t max_word_chars = 100);

  const std::vector<std::string>& tokens() const { return tokens_; }
  const std::string& unk_token() const { return unk_token_; }
  size_t max_word_chars() const { return max_word_chars_; }
  bool contains(std::string_view token) const;
  size_t size() const { return tokens_.size(); }

  void save(const std::string& dir) const;
  static WordPieceVocab load(const std::string& dir);

 private:
  std::vector<std::string> tokens_;
  std::unordered_set<std::string> lookup_;
  std::string unk_token_ = "[UNK]";
  size_t max_word_chars_ = 100;
};

struct WordPieceTrainOptions {
  // Counts character tokens and merge-produced tokens; the unk token is
  // added on top.
  size_t vocab_size = 0;
  std::optional<double> min_score_threshold;
  std::string unk_token = "[UNK]";
  size_t max_word_chars = 100;
};

WordPieceVocab train_wordpiece(const std::vector<std::string>& corpus,
                               const WordPieceTrainOptions& options);

// Greedy longest-match-first over one pretokenized word. Continuations are
// matched in their "##" form. Any failure makes the whole word unk.
TokenSequence encode_wordpiece(const WordPieceVocab& vocab, std::string_view word);

TokenSequence encode_wordpiece_sentence(const WordPieceVocab& vocab, std::string_view sentence);

// Strips "##" and concatenates to the previous token; other tokens are
// space-separated. A sequence starting with a continuation is reported
// through `warnings`, the prefix stripped anyway.
std::string decode_wordpiece(const TokenSequence& tokens,
                             std::vector<std::string>* warnings = nullptr);

}  // namespace subtok
