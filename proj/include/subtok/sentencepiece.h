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
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "subtok/token_sequence.h"

namespace subtok {

enum class SpModelType { Subword, Character };

// Frequency-selected whole-sentence pieces. Whitespace is rewritten to the
// meta symbol (sentence-initial meta always inserted), so decoding is an
// exact inverse for sentences with single internal spaces.
class SpModel {
 public:
  static constexpr char32_t kDefaultMeta = U'▁';

  SpModel() = default;
  SpModel(std::vector<std::pair<std::string, uint64_t>> pieces, SpModelType type,
          char32_t meta_symbol = kDefaultMeta, size_t max_piece_chars = 16);

  // Pieces in canonical order: frequency descending, then shorter first,
  // then lexicographic.
  const std::vector<std::pair<std::string, uint64_t>>& pieces() const { return pieces_; }
  SpModelType model_type() const { return model_type_; }
  char32_t meta_symbol() const { return meta_symbol_; }
  size_t max_piece_chars() const { return max_piece_chars_; }
  size_t size() const { return pieces_.size(); }

  bool contains(std::string_view piece) const;
  uint64_t frequency(std::string_view piece) const;
  size_t max_piece_bytes() const { return max_piece_bytes_; }

  void save(const std::string& dir) const;
  static SpModel load(const std::string& dir);

 private:
  struct StringHash {
    using is_transparent = void;
    size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };

  std::vector<std::pair<std::string, uint64_t>> pieces_;
  std::unordered_map<std::string, uint64_t, StringHash, std::equal_to<>> lookup_;
  SpModelType model_type_ = SpModelType::Subword;
  char32_t meta_symbol_ = kDefaultMeta;
  size_t max_piece_chars_ = 16;
  size_t max_piece_bytes_ = 0;
};

struct SpTrainOptions {
  size_t vocab_size = 0;
  SpModelType model_type = SpModelType::Subword;
  size_t max_piece_chars = 16;
};

// Rewrites whitespace to the meta symbol and prefixes each sentence with
// it; selects the top-frequency substrings with all single characters
// force-included.
SpModel train_sp(const std::vector<std::string>& corpus, const SpTrainOptions& options);

// Exact-cover segmentation of the meta-rewritten sentence: fewest pieces,
// ties by highest frequency sum, then leftmost-longest. Characters unseen
// in training come out as single-character pieces.
TokenSequence encode_sp(const SpModel& model, std::string_view sentence);

std::string decode_sp(const TokenSequence& tokens, char32_t meta_symbol = SpModel::kDefaultMeta);

// The meta rewrite applied before segmentation (exposed for tests).
std::string sp_rewrite(std::string_view sentence, char32_t meta_symbol = SpModel::kDefaultMeta);

}  // namespace subtok
