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

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "subtok/bpe.h"
#include "subtok/sentencepiece.h"
#include "subtok/token_sequence.h"
#include "subtok/wordpiece.h"

namespace subtok {

enum class TokenizerKind { Bpe, WordPiece, SentencePiece };

std::string to_string(TokenizerKind kind);
std::optional<TokenizerKind> tokenizer_kind_from_name(std::string_view name);

// One trained model of any of the three kinds, with a uniform line-level
// encode/decode surface.
class Tokenizer {
 public:
  explicit Tokenizer(BpeModel model) : model_(std::move(model)) {}
  explicit Tokenizer(WordPieceVocab model) : model_(std::move(model)) {}
  explicit Tokenizer(SpModel model) : model_(std::move(model)) {}

  TokenizerKind kind() const;

  TokenSequence encode_line(std::string_view line) const;
  std::string decode_line(const TokenSequence& tokens,
                          std::vector<std::string>* warnings = nullptr) const;

  size_t vocab_size() const;
  bool is_unk_token(const std::string& token) const;

  void save(const std::string& dir) const;
  static Tokenizer load(const std::string& dir);

  const BpeModel* bpe() const { return std::get_if<BpeModel>(&model_); }
  const WordPieceVocab* wordpiece() const { return std::get_if<WordPieceVocab>(&model_); }
  const SpModel* sentencepiece() const { return std::get_if<SpModel>(&model_); }

 private:
  std::variant<BpeModel, WordPieceVocab, SpModel> model_;
};

}  // namespace subtok
