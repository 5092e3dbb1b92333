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

#include "subtok/tokenizer.h"

#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "subtok/errors.h"

namespace subtok {

std::string to_string(TokenizerKind kind) {
  switch (kind) {
    case TokenizerKind::Bpe: return "bpe";
    case TokenizerKind::WordPiece: return "wordpiece";
    case TokenizerKind::SentencePiece: return "sentencepiece";
  }
  throw std::invalid_argument("unknown tokenizer kind");
}

std::optional<TokenizerKind> tokenizer_kind_from_name(std::string_view name) {
  if (name == "bpe") return TokenizerKind::Bpe;
  if (name == "wordpiece") return TokenizerKind::WordPiece;
  if (name == "sentencepiece") return TokenizerKind::SentencePiece;
  return std::nullopt;
}

TokenizerKind Tokenizer::kind() const {
  if (std::holds_alternative<BpeModel>(model_)) return TokenizerKind::Bpe;
  if (std::holds_alternative<WordPieceVocab>(model_)) return TokenizerKind::WordPiece;
  return TokenizerKind::SentencePiece;
}

TokenSequence Tokenizer::encode_line(std::string_view line) const {
  return std::visit(
      [&](const auto& model) -> TokenSequence {
        using T = std::decay_t<decltype(model)>;
        if constexpr (std::is_same_v<T, BpeModel>) {
          return encode_bpe(model, line);
        } else if constexpr (std::is_same_v<T, WordPieceVocab>) {
          return encode_wordpiece_sentence(model, line);
        } else {
          return encode_sp(model, line);
        }
      },
      model_);
}

std::string Tokenizer::decode_line(const TokenSequence& tokens,
                                   std::vector<std::string>* warnings) const {
  return std::visit(
      [&](const auto& model) -> std::string {
        using T = std::decay_t<decltype(model)>;
        if constexpr (std::is_same_v<T, BpeModel>) {
          return decode_bpe(tokens, model.joiner(), warnings);
        } else if constexpr (std::is_same_v<T, WordPieceVocab>) {
          return decode_wordpiece(tokens, warnings);
        } else {
          return decode_sp(tokens, model.meta_symbol());
        }
      },
      model_);
}

size_t Tokenizer::vocab_size() const {
  return std::visit(
      [](const auto& model) -> size_t {
        using T = std::decay_t<decltype(model)>;
        if constexpr (std::is_same_v<T, BpeModel>) {
          return model.base_alphabet().size() + model.merges().size() +
                 (model.unknown_policy() == UnknownPolicy::EmitUnk ? 1 : 0);
        } else if constexpr (std::is_same_v<T, WordPieceVocab>) {
          return model.size();
        } else {
          return model.size();
        }
      },
      model_);
}

bool Tokenizer::is_unk_token(const std::string& token) const {
  return std::visit(
      [&](const auto& model) -> bool {
        using T = std::decay_t<decltype(model)>;
        if constexpr (std::is_same_v<T, BpeModel>) {
          if (model.unknown_policy() != UnknownPolicy::EmitUnk) return false;
          return token == model.unk_token() || token == model.unk_token() + model.joiner();
        } else if constexpr (std::is_same_v<T, WordPieceVocab>) {
          return token == model.unk_token();
        } else {
          (void)model;
          return false;  // sentencepiece passes unknown characters through
        }
      },
      model_);
}

void Tokenizer::save(const std::string& dir) const {
  std::visit([&](const auto& model) { model.save(dir); }, model_);
}

Tokenizer Tokenizer::load(const std::string& dir) {
  namespace fs = std::filesystem;
  std::string algo;
  {
    std::ifstream in(fs::path(dir) / "meta.json", std::ios::binary);
    if (in) {
      nlohmann::json meta = nlohmann::json::parse(in, nullptr, false);
      if (!meta.is_discarded()) algo = meta.value("algo", "");
    }
  }
  if (algo.empty()) {
    // SentencePiece models are a single TSV; fall back on file probing.
    if (fs::exists(fs::path(dir) / "pieces.tsv")) {
      algo = "sentencepiece";
    } else if (fs::exists(fs::path(dir) / "vocab.txt")) {
      algo = "wordpiece";
    } else if (fs::exists(fs::path(dir) / "merges.txt")) {
      algo = "bpe";
    }
  }

  if (algo == "bpe") return Tokenizer(BpeModel::load(dir));
  if (algo == "wordpiece") return Tokenizer(WordPieceVocab::load(dir));
  if (algo == "sentencepiece") return Tokenizer(SpModel::load(dir));
  throw DataError("cannot determine tokenizer kind of model directory " + dir);
}

}  // namespace subtok
