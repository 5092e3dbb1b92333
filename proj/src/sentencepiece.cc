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

#include "subtok/sentencepiece.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "subtok/errors.h"
#include "subtok/unicode.h"

namespace subtok {

namespace {

constexpr char kModelFilePrefix[] = "#subtok-sp v1";

bool piece_order_less(const std::pair<std::string, uint64_t>& a,
                      const std::pair<std::string, uint64_t>& b) {
  if (a.second != b.second) return a.second > b.second;
  const size_t a_len = unicode::code_point_count(a.first);
  const size_t b_len = unicode::code_point_count(b.first);
  if (a_len != b_len) return a_len < b_len;
  return a.first < b.first;
}

}  // namespace

std::string sp_rewrite(std::string_view sentence, char32_t meta_symbol) {
  std::string out;
  out.reserve(sentence.size() + 4);
  unicode::append_utf8(out, meta_symbol);
  for (unicode::CodePoint cp : unicode::to_code_points(sentence)) {
    unicode::append_utf8(out, unicode::is_white_space(cp) ? meta_symbol : cp);
  }
  return out;
}

SpModel::SpModel(std::vector<std::pair<std::string, uint64_t>> pieces, SpModelType type,
                 char32_t meta_symbol, size_t max_piece_chars)
    : pieces_(std::move(pieces)),
      model_type_(type),
      meta_symbol_(meta_symbol),
      max_piece_chars_(max_piece_chars) {
  std::sort(pieces_.begin(), pieces_.end(), piece_order_less);
  for (const auto& [piece, freq] : pieces_) {
    if (piece.empty()) throw DataError("empty sentencepiece piece");
    lookup_.emplace(piece, freq);
    max_piece_bytes_ = std::max(max_piece_bytes_, piece.size());
  }
}

bool SpModel::contains(std::string_view piece) const {
  return lookup_.find(piece) != lookup_.end();
}

uint64_t SpModel::frequency(std::string_view piece) const {
  const auto it = lookup_.find(piece);
  return it == lookup_.end() ? 0 : it->second;
}

SpModel train_sp(const std::vector<std::string>& corpus, const SpTrainOptions& options) {
  if (corpus.empty()) throw EmptyCorpusError();

  std::vector<std::string> rewritten;
  rewritten.reserve(corpus.size());
  for (const std::string& sentence : corpus) {
    rewritten.push_back(sp_rewrite(sentence, SpModel::kDefaultMeta));
  }

  // Single characters are always pieces: encoding totality.
  std::map<std::string, uint64_t> char_counts;
  for (const std::string& line : rewritten) {
    for (const std::string& ch : unicode::split_code_points(line)) ++char_counts[ch];
  }
  if (options.vocab_size < char_counts.size())
    throw VocabSizeTooSmallError(options.vocab_size, char_counts.size());

  std::vector<std::pair<std::string, uint64_t>> pieces(char_counts.begin(), char_counts.end());

  if (options.model_type == SpModelType::Subword) {
    std::unordered_map<std::string, uint64_t> substring_counts;
    for (const std::string& line : rewritten) {
      const std::vector<std::string> chars = unicode::split_code_points(line);
      for (size_t i = 0; i < chars.size(); ++i) {
        std::string sub;
        const size_t limit = std::min(chars.size(), i + options.max_piece_chars);
        for (size_t j = i; j < limit; ++j) {
          sub += chars[j];
          if (j > i) ++substring_counts[sub];  // single chars handled above
        }
      }
    }

    std::vector<std::pair<std::string, uint64_t>> candidates(substring_counts.begin(),
                                                             substring_counts.end());
    std::sort(candidates.begin(), candidates.end(), piece_order_less);
    const size_t budget = options.vocab_size - pieces.size();
    for (size_t i = 0; i < candidates.size() && i < budget; ++i) {
      pieces.push_back(std::move(candidates[i]));
    }
  }

  return SpModel(std::move(pieces), options.model_type, SpModel::kDefaultMeta,
                 options.max_piece_chars);
}

TokenSequence encode_sp(const SpModel& model, std::string_view sentence) {
  const std::string stream = sp_rewrite(sentence, model.meta_symbol());

  // Code point boundaries of the rewritten stream.
  std::vector<size_t> starts;
  {
    size_t pos = 0;
    while (pos < stream.size()) {
      starts.push_back(pos);
      if (!unicode::decode_next(stream, pos))
        throw DataError("invalid UTF-8 in sentence");
    }
    starts.push_back(stream.size());
  }
  const size_t n = starts.size() - 1;  // in code points

  struct Cell {
    uint32_t count = std::numeric_limits<uint32_t>::max();
    uint64_t freq_sum = 0;
    uint32_t first_cps = 0;  // code points consumed by the first piece
  };
  std::vector<Cell> dp(n + 1);
  dp[n] = {0, 0, 0};

  for (size_t i = n; i-- > 0;) {
    Cell best;
    const size_t max_k = std::min(model.max_piece_chars(), n - i);
    for (size_t k = 1; k <= max_k; ++k) {
      const std::string_view piece(stream.data() + starts[i], starts[i + k] - starts[i]);
      const bool in_vocab = model.contains(piece);
      if (k > 1 && !in_vocab) continue;  // only single chars may be out-of-model
      const Cell& next = dp[i + k];
      if (next.count == std::numeric_limits<uint32_t>::max()) continue;
      const uint32_t count = next.count + 1;
      const uint64_t freq_sum = next.freq_sum + model.frequency(piece);
      const bool better = count < best.count ||
                          (count == best.count && freq_sum > best.freq_sum) ||
                          (count == best.count && freq_sum == best.freq_sum &&
                           k > best.first_cps);
      if (better) best = {count, freq_sum, static_cast<uint32_t>(k)};
    }
    dp[i] = best;
  }

  TokenSequence tokens;
  size_t i = 0;
  while (i < n) {
    const size_t k = dp[i].first_cps;
    tokens.emplace_back(stream.substr(starts[i], starts[i + k] - starts[i]));
    i += k;
  }
  return tokens;
}

std::string decode_sp(const TokenSequence& tokens, char32_t meta_symbol) {
  std::string joined;
  for (const std::string& token : tokens) joined += token;

  std::string out;
  out.reserve(joined.size());
  for (unicode::CodePoint cp : unicode::to_code_points(joined)) {
    if (cp == meta_symbol) {
      out.push_back(' ');
    } else {
      unicode::append_utf8(out, cp);
    }
  }
  if (!out.empty() && out.front() == ' ') out.erase(out.begin());
  return out;
}

void SpModel::save(const std::string& dir) const {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create model directory " + dir + ": " + ec.message());

  char meta_hex[16];
  std::snprintf(meta_hex, sizeof meta_hex, "U+%04X", static_cast<unsigned>(meta_symbol_));
  {
    std::ofstream out(fs::path(dir) / "pieces.tsv", std::ios::binary);
    if (!out) throw IoError("cannot write pieces.tsv in " + dir);
    out << kModelFilePrefix << " meta=" << meta_hex << " type="
        << (model_type_ == SpModelType::Subword ? "subword" : "character") << '\n';
    for (const auto& [piece, freq] : pieces_) out << piece << '\t' << freq << '\n';
  }
  {
    std::ofstream out(fs::path(dir) / "meta.json", std::ios::binary);
    if (!out) throw IoError("cannot write meta.json in " + dir);
    out << "{\n  \"schema\": \"subtok-model v1\",\n  \"algo\": \"sentencepiece\",\n"
        << "  \"meta_symbol\": \"" << meta_hex << "\",\n  \"model_type\": \""
        << (model_type_ == SpModelType::Subword ? "subword" : "character") << "\"\n}\n";
  }
}

SpModel SpModel::load(const std::string& dir) {
  namespace fs = std::filesystem;
  std::ifstream in(fs::path(dir) / "pieces.tsv", std::ios::binary);
  if (!in) throw IoError("cannot read pieces.tsv in " + dir);

  std::string header;
  if (!std::getline(in, header) || header.rfind(kModelFilePrefix, 0) != 0)
    throw DataError("bad sentencepiece model header in " + dir);

  char32_t meta = kDefaultMeta;
  SpModelType type = SpModelType::Subword;
  {
    std::istringstream fields(header);
    std::string field;
    while (fields >> field) {
      if (field.rfind("meta=U+", 0) == 0) {
        meta = static_cast<char32_t>(std::stoul(field.substr(7), nullptr, 16));
      } else if (field == "type=character") {
        type = SpModelType::Character;
      } else if (field == "type=subword") {
        type = SpModelType::Subword;
      }
    }
  }

  std::vector<std::pair<std::string, uint64_t>> pieces;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos) throw DataError("malformed piece line: " + line);
    pieces.emplace_back(line.substr(0, tab), std::stoull(line.substr(tab + 1)));
  }
  return SpModel(std::move(pieces), type, meta);
}

}  // namespace subtok
