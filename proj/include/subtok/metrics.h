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
#include <vector>

#include "subtok/token_sequence.h"

namespace subtok {

struct SegmentPair {
  TokenSequence hypothesis;
  TokenSequence reference;
};

enum class MetricTokenization { WordSplitPunct, WordPlain };

struct MetricScore {
  double bleu = 0.0;          // 0..100
  double ter = 0.0;           // reported x100
  double meteor_exact = 0.0;  // 0..1
  double chrf = 0.0;          // 0..100
  double ribes = 0.0;         // 0..1
  MetricTokenization tokenization = MetricTokenization::WordSplitPunct;
};

// Corpus-level BLEU, no smoothing. Clipped n-gram matches and totals are
// summed over segments; n-gram orders with no hypothesis n-grams anywhere
// are dropped from the geometric mean, so short corpora are scored over
// the orders they support. Any remaining zero precision gives 0.
double bleu(const std::vector<SegmentPair>& pairs, int max_n = 4);

struct TerResult {
  uint64_t shifts = 0;
  uint64_t edits = 0;  // levenshtein edits after shifting
  uint64_t ref_len = 0;
  double rate = 0.0;  // (shifts + edits) / ref_len
};

// Translation edit rate with greedy block shifts: repeatedly apply the
// shift that most reduces word edit distance, then charge one edit per
// shift plus the remaining edit distance.
TerResult ter(const TokenSequence& hyp, const TokenSequence& ref);

// Character n-gram F-score. Whitespace is removed; orders where either
// side has no n-grams are skipped. Both strings empty scores 100.
double chrf(std::string_view hyp, std::string_view ref, int max_char_n = 6, double beta = 2.0);

// Word-order score: normalized Kendall's tau over one-to-one alignments of
// words unique in both sentences, damped by unigram precision and brevity
// penalty.
double ribes(const TokenSequence& hyp, const TokenSequence& ref, double alpha = 0.25,
             double beta = 0.10);

// Kendall's tau of the given rank sequence against ascending order,
// assuming distinct values.
double kendall_tau(const std::vector<int>& positions);

// Exact-match METEOR: harmonic mean weighted toward recall with a
// fragmentation penalty over the chunk count of a maximal matching.
double meteor_exact(const TokenSequence& hyp, const TokenSequence& ref);

// Tokenizes both files' lines and aggregates: BLEU and TER micro-averaged
// over the corpus, CHRF/RIBES/METEOR macro-averaged per segment.
MetricScore score_corpus(const std::vector<std::string>& hyp_lines,
                         const std::vector<std::string>& ref_lines,
                         MetricTokenization tokenization = MetricTokenization::WordSplitPunct);

std::string to_string(MetricTokenization tokenization);

}  // namespace subtok
