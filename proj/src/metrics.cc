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

#include "subtok/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <tuple>
#include <unordered_map>

#include "subtok/errors.h"
#include "subtok/normalizer.h"
#include "subtok/unicode.h"

namespace subtok {

namespace {

std::vector<int> intern(const TokenSequence& tokens,
                        std::unordered_map<std::string, int>& ids) {
  std::vector<int> out;
  out.reserve(tokens.size());
  for (const std::string& token : tokens) {
    const auto [it, inserted] = ids.emplace(token, static_cast<int>(ids.size()));
    out.push_back(it->second);
  }
  return out;
}

uint64_t levenshtein(const std::vector<int>& a, const std::vector<int>& b) {
  const size_t n = a.size();
  const size_t m = b.size();
  std::vector<uint64_t> prev(m + 1);
  std::vector<uint64_t> cur(m + 1);
  for (size_t j = 0; j <= m; ++j) prev[j] = j;
  for (size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= m; ++j) {
      const uint64_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

// TERCOM convention: shifted blocks are capped at this many words.
constexpr size_t kMaxShiftLength = 10;

bool block_matches_somewhere(const std::vector<int>& block, const std::vector<int>& ref) {
  if (block.size() > ref.size()) return false;
  for (size_t j = 0; j + block.size() <= ref.size(); ++j) {
    if (std::equal(block.begin(), block.end(), ref.begin() + static_cast<ptrdiff_t>(j)))
      return true;
  }
  return false;
}

std::vector<int> apply_shift(const std::vector<int>& hyp, size_t src, size_t len, size_t dest) {
  std::vector<int> out;
  out.reserve(hyp.size());
  for (size_t i = 0; i < hyp.size(); ++i) {
    if (i < src || i >= src + len) out.push_back(hyp[i]);
  }
  out.insert(out.begin() + static_cast<ptrdiff_t>(dest), hyp.begin() + static_cast<ptrdiff_t>(src),
             hyp.begin() + static_cast<ptrdiff_t>(src + len));
  return out;
}

struct NgramKey {
  std::vector<int> grams;
  bool operator<(const NgramKey& other) const { return grams < other.grams; }
};

}  // namespace

double bleu(const std::vector<SegmentPair>& pairs, int max_n) {
  if (pairs.empty()) throw EmptyCorpusError();

  std::vector<uint64_t> matches(static_cast<size_t>(max_n) + 1, 0);
  std::vector<uint64_t> totals(static_cast<size_t>(max_n) + 1, 0);
  uint64_t hyp_len = 0;
  uint64_t ref_len = 0;

  for (const SegmentPair& pair : pairs) {
    std::unordered_map<std::string, int> ids;
    const std::vector<int> hyp = intern(pair.hypothesis, ids);
    const std::vector<int> ref = intern(pair.reference, ids);
    hyp_len += hyp.size();
    ref_len += ref.size();
    for (int n = 1; n <= max_n; ++n) {
      if (hyp.size() < static_cast<size_t>(n)) break;
      std::map<NgramKey, uint64_t> hyp_grams;
      for (size_t i = 0; i + n <= hyp.size(); ++i) {
        hyp_grams[{std::vector<int>(hyp.begin() + i, hyp.begin() + i + n)}] += 1;
      }
      std::map<NgramKey, uint64_t> ref_grams;
      for (size_t i = 0; i + n <= ref.size(); ++i) {
        ref_grams[{std::vector<int>(ref.begin() + i, ref.begin() + i + n)}] += 1;
      }
      totals[n] += hyp.size() - n + 1;
      for (const auto& [gram, count] : hyp_grams) {
        const auto it = ref_grams.find(gram);
        if (it != ref_grams.end()) matches[n] += std::min(count, it->second);
      }
    }
  }

  int effective_orders = 0;
  double log_precision_sum = 0.0;
  for (int n = 1; n <= max_n; ++n) {
    if (totals[n] == 0) continue;
    if (matches[n] == 0) return 0.0;
    ++effective_orders;
    log_precision_sum +=
        std::log(static_cast<double>(matches[n]) / static_cast<double>(totals[n]));
  }
  if (effective_orders == 0 || hyp_len == 0) return 0.0;

  const double bp =
      hyp_len >= ref_len
          ? 1.0
          : std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(hyp_len));
  return 100.0 * bp * std::exp(log_precision_sum / effective_orders);
}

TerResult ter(const TokenSequence& hyp_tokens, const TokenSequence& ref_tokens) {
  if (ref_tokens.empty()) throw EmptyReferenceError();

  std::unordered_map<std::string, int> ids;
  std::vector<int> hyp = intern(hyp_tokens, ids);
  const std::vector<int> ref = intern(ref_tokens, ids);

  TerResult result;
  result.ref_len = ref.size();

  uint64_t distance = levenshtein(hyp, ref);
  while (distance > 0 && !hyp.empty()) {
    uint64_t best_distance = distance;
    size_t best_src = 0, best_len = 0, best_dest = 0;
    bool found = false;

    const size_t max_len = std::min(kMaxShiftLength, hyp.size());
    for (size_t len = 1; len <= max_len; ++len) {
      for (size_t src = 0; src + len <= hyp.size(); ++src) {
        // The block must appear somewhere in the reference and be
        // misaligned at its current position.
        bool misaligned = false;
        for (size_t k = 0; k < len && !misaligned; ++k) {
          if (src + k >= ref.size() || hyp[src + k] != ref[src + k]) misaligned = true;
        }
        if (!misaligned) continue;
        const std::vector<int> block(hyp.begin() + static_cast<ptrdiff_t>(src),
                                     hyp.begin() + static_cast<ptrdiff_t>(src + len));
        if (!block_matches_somewhere(block, ref)) continue;

        for (size_t dest = 0; dest + len <= hyp.size(); ++dest) {
          if (dest == src) continue;
          const std::vector<int> shifted = apply_shift(hyp, src, len, dest);
          const uint64_t d = levenshtein(shifted, ref);
          const bool improves = d < best_distance;
          const bool ties_better =
              found && d == best_distance &&
              std::tie(src, len, dest) < std::tie(best_src, best_len, best_dest);
          if (improves || ties_better) {
            best_distance = d;
            best_src = src;
            best_len = len;
            best_dest = dest;
            found = true;
          }
        }
      }
    }

    if (!found || best_distance >= distance) break;
    hyp = apply_shift(hyp, best_src, best_len, best_dest);
    distance = best_distance;
    ++result.shifts;
  }

  result.edits = distance;
  result.rate = static_cast<double>(result.shifts + result.edits) /
                static_cast<double>(result.ref_len);
  return result;
}

double chrf(std::string_view hyp, std::string_view ref, int max_char_n, double beta) {
  std::vector<unicode::CodePoint> hyp_chars;
  for (unicode::CodePoint cp : unicode::to_code_points(hyp)) {
    if (!unicode::is_white_space(cp)) hyp_chars.push_back(cp);
  }
  std::vector<unicode::CodePoint> ref_chars;
  for (unicode::CodePoint cp : unicode::to_code_points(ref)) {
    if (!unicode::is_white_space(cp)) ref_chars.push_back(cp);
  }

  if (hyp_chars.empty() && ref_chars.empty()) return 100.0;

  double precision_sum = 0.0;
  double recall_sum = 0.0;
  int orders = 0;
  for (int n = 1; n <= max_char_n; ++n) {
    if (hyp_chars.size() < static_cast<size_t>(n) || ref_chars.size() < static_cast<size_t>(n))
      continue;
    std::map<std::vector<unicode::CodePoint>, uint64_t> hyp_grams;
    for (size_t i = 0; i + n <= hyp_chars.size(); ++i) {
      hyp_grams[std::vector<unicode::CodePoint>(hyp_chars.begin() + i,
                                                hyp_chars.begin() + i + n)] += 1;
    }
    std::map<std::vector<unicode::CodePoint>, uint64_t> ref_grams;
    for (size_t i = 0; i + n <= ref_chars.size(); ++i) {
      ref_grams[std::vector<unicode::CodePoint>(ref_chars.begin() + i,
                                                ref_chars.begin() + i + n)] += 1;
    }
    uint64_t overlap = 0;
    for (const auto& [gram, count] : hyp_grams) {
      const auto it = ref_grams.find(gram);
      if (it != ref_grams.end()) overlap += std::min(count, it->second);
    }
    const uint64_t hyp_total = hyp_chars.size() - n + 1;
    const uint64_t ref_total = ref_chars.size() - n + 1;
    precision_sum += static_cast<double>(overlap) / static_cast<double>(hyp_total);
    recall_sum += static_cast<double>(overlap) / static_cast<double>(ref_total);
    ++orders;
  }

  if (orders == 0) return 0.0;
  const double precision = precision_sum / orders;
  const double recall = recall_sum / orders;
  const double beta2 = beta * beta;
  const double denom = beta2 * precision + recall;
  if (denom == 0.0) return 0.0;
  return 100.0 * (1.0 + beta2) * precision * recall / denom;
}

double kendall_tau(const std::vector<int>& positions) {
  const size_t n = positions.size();
  if (n < 2) return 0.0;
  int64_t concordant = 0;
  int64_t discordant = 0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      if (positions[i] < positions[j]) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  }
  return static_cast<double>(concordant - discordant) /
         (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

double ribes(const TokenSequence& hyp, const TokenSequence& ref, double alpha, double beta) {
  if (hyp.empty() || ref.empty()) return 0.0;

  std::unordered_map<std::string, std::vector<size_t>> hyp_positions;
  std::unordered_map<std::string, std::vector<size_t>> ref_positions;
  for (size_t i = 0; i < hyp.size(); ++i) hyp_positions[hyp[i]].push_back(i);
  for (size_t i = 0; i < ref.size(); ++i) ref_positions[ref[i]].push_back(i);

  std::vector<int> aligned_ref;
  for (const std::string& word : hyp) {
    const auto hit = hyp_positions.find(word);
    const auto rit = ref_positions.find(word);
    if (rit == ref_positions.end()) continue;
    if (hit->second.size() == 1 && rit->second.size() == 1) {
      aligned_ref.push_back(static_cast<int>(rit->second[0]));
    }
  }

  const double bp =
      hyp.size() >= ref.size()
          ? 1.0
          : std::exp(1.0 - static_cast<double>(ref.size()) / static_cast<double>(hyp.size()));

  const size_t n = aligned_ref.size();
  double nkt;
  double precision;
  if (n == 1 && ref.size() == 1) {
    // A single aligned word against a one-word reference is trivially in
    // order.
    nkt = 1.0;
    precision = 1.0 / static_cast<double>(hyp.size());
  } else if (n < 2) {
    return 0.0;
  } else {
    nkt = (kendall_tau(aligned_ref) + 1.0) / 2.0;
    precision = static_cast<double>(n) / static_cast<double>(hyp.size());
  }
  return nkt * std::pow(precision, alpha) * std::pow(bp, beta);
}

namespace {

// Exact min-chunk search over maximum matchings, with a node budget; falls
// back to the best solution found. Ref positions are tracked in a bitmask,
// so references longer than 64 tokens use the greedy path.
class ChunkMinimizer {
 public:
  ChunkMinimizer(const std::vector<int>& hyp, const std::vector<int>& ref,
                 const std::unordered_map<int, uint64_t>& match_quota, uint64_t total_matches)
      : hyp_(hyp), ref_(ref), quota_(match_quota), total_matches_(total_matches) {
    for (size_t j = 0; j < ref_.size(); ++j) ref_by_word_[ref_[j]].push_back(j);
  }

  uint64_t solve() {
    best_chunks_ = greedy();
    if (ref_.size() <= 64) {
      std::unordered_map<int, uint64_t> remaining = quota_;
      search(0, 0, 0, std::numeric_limits<size_t>::max(), remaining, total_matches_);
    }
    return best_chunks_;
  }

 private:
  uint64_t greedy() {
    std::vector<bool> used(ref_.size(), false);
    std::unordered_map<int, uint64_t> remaining = quota_;
    uint64_t chunks = 0;
    size_t prev_ref = std::numeric_limits<size_t>::max();
    bool prev_matched = false;
    for (size_t i = 0; i < hyp_.size(); ++i) {
      auto qit = remaining.find(hyp_[i]);
      if (qit == remaining.end() || qit->second == 0) {
        prev_matched = false;
        continue;
      }
      const auto& positions = ref_by_word_.at(hyp_[i]);
      size_t chosen = std::numeric_limits<size_t>::max();
      if (prev_matched && prev_ref + 1 < ref_.size() && ref_[prev_ref + 1] == hyp_[i] &&
          !used[prev_ref + 1]) {
        chosen = prev_ref + 1;
      } else {
        for (size_t j : positions) {
          if (!used[j]) {
            chosen = j;
            break;
          }
        }
      }
      if (chosen == std::numeric_limits<size_t>::max()) {
        prev_matched = false;
        continue;
      }
      used[chosen] = true;
      --qit->second;
      if (!(prev_matched && chosen == prev_ref + 1)) ++chunks;
      prev_ref = chosen;
      prev_matched = true;
    }
    return chunks;
  }

  void search(size_t i, uint64_t used_mask, uint64_t chunks, size_t prev_ref,
              std::unordered_map<int, uint64_t>& remaining, uint64_t matches_left) {
    if (chunks >= best_chunks_) return;
    if (nodes_++ > kNodeBudget) return;
    if (matches_left == 0) {
      best_chunks_ = std::min(best_chunks_, chunks);
      return;
    }
    if (i >= hyp_.size()) return;
    // Not enough hypothesis tokens left to complete the matching.
    if (hyp_.size() - i < matches_left) return;

    const int word = hyp_[i];
    const auto qit = remaining.find(word);
    const bool can_match = qit != remaining.end() && qit->second > 0;

    if (can_match) {
      // Try continuing the current chunk first.
      std::vector<size_t> order;
      for (size_t j : ref_by_word_.at(word)) {
        if (used_mask & (uint64_t(1) << j)) continue;
        if (prev_ref != std::numeric_limits<size_t>::max() && j == prev_ref + 1) {
          order.insert(order.begin(), j);
        } else {
          order.push_back(j);
        }
      }
      for (size_t j : order) {
        const bool continues =
            prev_ref != std::numeric_limits<size_t>::max() && j == prev_ref + 1;
        --qit->second;
        search(i + 1, used_mask | (uint64_t(1) << j), chunks + (continues ? 0 : 1), j,
               remaining, matches_left - 1);
        ++qit->second;
      }
    }

    // Skip this hypothesis position if the quota can still be met later.
    uint64_t later_occurrences = 0;
    if (can_match) {
      for (size_t k = i + 1; k < hyp_.size(); ++k) {
        if (hyp_[k] == word) ++later_occurrences;
      }
    }
    if (!can_match || later_occurrences >= qit->second) {
      search(i + 1, used_mask, chunks, std::numeric_limits<size_t>::max(), remaining,
             matches_left);
    }
  }

  static constexpr uint64_t kNodeBudget = 1u << 20;

  const std::vector<int>& hyp_;
  const std::vector<int>& ref_;
  std::unordered_map<int, uint64_t> quota_;
  std::unordered_map<int, std::vector<size_t>> ref_by_word_;
  uint64_t total_matches_;
  uint64_t best_chunks_ = std::numeric_limits<uint64_t>::max();
  uint64_t nodes_ = 0;
};

}  // namespace

double meteor_exact(const TokenSequence& hyp_tokens, const TokenSequence& ref_tokens) {
  if (hyp_tokens.empty() || ref_tokens.empty()) return 0.0;

  std::unordered_map<std::string, int> ids;
  const std::vector<int> hyp = intern(hyp_tokens, ids);
  const std::vector<int> ref = intern(ref_tokens, ids);

  std::unordered_map<int, uint64_t> hyp_counts;
  std::unordered_map<int, uint64_t> ref_counts;
  for (int w : hyp) ++hyp_counts[w];
  for (int w : ref) ++ref_counts[w];

  uint64_t m = 0;
  std::unordered_map<int, uint64_t> quota;
  for (const auto& [word, count] : hyp_counts) {
    const auto it = ref_counts.find(word);
    if (it == ref_counts.end()) continue;
    const uint64_t q = std::min(count, it->second);
    quota[word] = q;
    m += q;
  }
  if (m == 0) return 0.0;

  ChunkMinimizer minimizer(hyp, ref, quota, m);
  const uint64_t chunks = minimizer.solve();

  const double precision = static_cast<double>(m) / static_cast<double>(hyp.size());
  const double recall = static_cast<double>(m) / static_cast<double>(ref.size());
  const double f = 10.0 * precision * recall / (recall + 9.0 * precision);
  const double frag = static_cast<double>(chunks) / static_cast<double>(m);
  const double penalty = 0.5 * frag * frag * frag;
  return f * (1.0 - penalty);
}

std::string to_string(MetricTokenization tokenization) {
  return tokenization == MetricTokenization::WordSplitPunct ? "word-split-punct" : "word-plain";
}

MetricScore score_corpus(const std::vector<std::string>& hyp_lines,
                         const std::vector<std::string>& ref_lines,
                         MetricTokenization tokenization) {
  if (hyp_lines.size() != ref_lines.size())
    throw LineCountMismatchError(hyp_lines.size(), ref_lines.size());
  if (hyp_lines.empty()) throw EmptyCorpusError();

  const auto tokenize = [&](const std::string& line) {
    return tokenization == MetricTokenization::WordSplitPunct ? pretokenize_split_punct(line)
                                                              : pretokenize(line);
  };

  std::vector<SegmentPair> pairs;
  pairs.reserve(hyp_lines.size());
  for (size_t i = 0; i < hyp_lines.size(); ++i) {
    pairs.push_back({tokenize(hyp_lines[i]), tokenize(ref_lines[i])});
  }

  MetricScore score;
  score.tokenization = tokenization;
  score.bleu = bleu(pairs);

  uint64_t total_ter_edits = 0;
  uint64_t total_ref_words = 0;
  double chrf_sum = 0.0;
  double ribes_sum = 0.0;
  double meteor_sum = 0.0;
  for (size_t i = 0; i < pairs.size(); ++i) {
    const SegmentPair& pair = pairs[i];
    if (pair.reference.empty()) {
      // Empty reference line: every hypothesis word must be deleted.
      total_ter_edits += pair.hypothesis.size();
    } else {
      const TerResult t = ter(pair.hypothesis, pair.reference);
      total_ter_edits += t.shifts + t.edits;
      total_ref_words += t.ref_len;
    }
    chrf_sum += chrf(hyp_lines[i], ref_lines[i]);
    ribes_sum += ribes(pair.hypothesis, pair.reference);
    meteor_sum += meteor_exact(pair.hypothesis, pair.reference);
  }
  if (total_ref_words == 0) throw EmptyReferenceError();

  score.ter =
      100.0 * static_cast<double>(total_ter_edits) / static_cast<double>(total_ref_words);
  score.chrf = chrf_sum / static_cast<double>(pairs.size());
  score.ribes = ribes_sum / static_cast<double>(pairs.size());
  score.meteor_exact = meteor_sum / static_cast<double>(pairs.size());
  return score;
}

}  // namespace subtok
