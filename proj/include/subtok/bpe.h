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
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "subtok/token_sequence.h"

namespace subtok {

struct MergeRule {
  std::string left;
  std::string right;
  uint32_t rank = 0;

  bool operator==(const MergeRule&) const = default;
};

enum class UnknownPolicy { EmitChar, EmitUnk };

// Trained byte-pair model: character alphabet plus an ordered merge list.
// Internally words end with an end-of-word marker symbol; the surface
// convention is the "@@" joiner on every non-final piece.
class BpeModel {
 public:
  BpeModel() = default;
  BpeModel(std::set<std::string> base_alphabet, std::vector<MergeRule> merges,
           UnknownPolicy policy = UnknownPolicy::EmitChar);

  const std::set<std::string>& base_alphabet() const { return base_alphabet_; }
  const std::vector<MergeRule>& merges() const { return merges_; }
  const std::string& end_of_word_marker() const { return end_of_word_marker_; }
  const std::string& joiner() const { return joiner_; }
  const std::string& unk_token() const { return unk_token_; }
  UnknownPolicy unknown_policy() const { return unknown_policy_; }

  // Distinct internal symbols the model can produce: alphabet characters
  // plus the merged symbol of every rule.
  std::set<std::string> vocabulary() const;

  // Rank of the merge rule for (left, right), if any.
  std::optional<uint32_t> merge_rank(const std::string& left, const std::string& right) const;

  void save(const std::string& dir) const;
  static BpeModel load(const std::string& dir);

 private:
  void index_merges();

  std::set<std::string> base_alphabet_;
  std::vector<MergeRule> merges_;
  std::string end_of_word_marker_ = "</w>";
  std::string joiner_ = "@@";
  std::string unk_token_ = "<unk>";
  UnknownPolicy unknown_policy_ = UnknownPolicy::EmitChar;
  std::unordered_map<std::string, uint32_t> rank_by_pair_;
};

struct BpeTrainOptions {
  // Exactly one of the two targets must be set.
  std::optional<size_t> num_merges;
  std::optional<size_t> vocab_size;
  UnknownPolicy unknown_policy = UnknownPolicy::EmitChar;
};

using WordFrequencyTable = std::map<std::string, uint64_t>;

// Adjacent-pair counts over the given word segmentations, each occurrence
// weighted by word frequency. Overlapping identical pairs inside one word
// are counted greedily left to right.
std::map<std::pair<std::string, std::string>, uint64_t> count_pairs(
    const std::map<std::string, std::vector<std::string>>& segmentations,
    const WordFrequencyTable& freqs);

WordFrequencyTable build_word_frequencies(const std::vector<std::string>& corpus);

BpeModel train_bpe(const std::vector<std::string>& corpus, const BpeTrainOptions& options);

// Splits the sentence into words, merges each word's character sequence by
// ascending rank, and emits surface tokens with the joiner convention.
TokenSequence encode_bpe(const BpeModel& model, std::string_view sentence);

// Inverse of encode_bpe. A dangling joiner at the end of the sequence is
// reported through `warnings` and the token is kept verbatim.
std::string decode_bpe(const TokenSequence& tokens, const std::string& joiner = "@@",
                       std::vector<std::string>* warnings = nullptr);

}  // namespace subtok
