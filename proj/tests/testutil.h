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

#include <random>
#include <string>
#include <vector>

#include "subtok/unicode.h"

namespace subtok::testutil {

inline std::string fixture_path(const std::string& name) {
  return std::string(SUBTOK_FIXTURE_DIR) + "/" + name;
}

// Mixed alphabet for fuzzing: ASCII, Latin-1 accents, Devanagari (with
// halant and nukta), digits, punctuation, format characters.
inline const std::vector<char32_t>& fuzz_alphabet() {
  static const std::vector<char32_t> chars = {
      U'a', U'b', U'c', U'x', U'y', U'z', U'A', U'Z', U'0', U'4', U'9',
      U' ', U' ', U' ', U'\t',
      U'.', U',', U'!', U'-', U'"', U'\'',
      U'é',  // é
      U'É',  // É
      U'ï',  // ï
      U'‘', U'’', U'“', U'”',  // curly quotes
      U'—', U'…',                        // em dash, ellipsis
      U'क', U'ख', U'म', U'ा',  // क ख म ा
      U'्',  // halant
      U'़',  // nukta
      U'क़',  // precomposed क़
      U'०', U'४',  // devanagari digits
      U'।',  // danda
      U'​', U'‍',  // zero width space / joiner
  };
  return chars;
}

inline std::string random_fuzz_string(std::mt19937& rng, size_t max_len = 24) {
  std::uniform_int_distribution<size_t> len_dist(0, max_len);
  const auto& alphabet = fuzz_alphabet();
  std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);
  std::string out;
  const size_t len = len_dist(rng);
  for (size_t i = 0; i < len; ++i) unicode::append_utf8(out, alphabet[pick(rng)]);
  return out;
}

// Simple word tokens over a small vocabulary, whitespace-free.
inline std::vector<std::string> random_tokens(std::mt19937& rng, size_t min_len, size_t max_len) {
  static const std::vector<std::string> vocab = {
      "a", "b", "c", "d", "the", "cat", "sat", "mat", "on",
      "यह", "खोज", "कहा", "में", "पक्षियों", "x1", "x2", "42"};
  std::uniform_int_distribution<size_t> len_dist(min_len, max_len);
  std::uniform_int_distribution<size_t> pick(0, vocab.size() - 1);
  std::vector<std::string> out;
  const size_t len = len_dist(rng);
  for (size_t i = 0; i < len; ++i) out.push_back(vocab[pick(rng)]);
  return out;
}

// Tokens distinct within the sequence (drawn without replacement).
inline std::vector<std::string> random_distinct_tokens(std::mt19937& rng, size_t min_len,
                                                       size_t max_len) {
  static const std::vector<std::string> vocab = {
      "a",  "b",  "c",  "d",   "e",   "f",    "g",     "h",     "the", "cat",
      "sat", "mat", "on", "यह", "खोज", "कहा", "में", "पक्षियों", "पंखों", "विकास",
      "x1", "x2", "x3", "42",  "now", "we",  "have",  "months"};
  std::vector<std::string> pool = vocab;
  std::shuffle(pool.begin(), pool.end(), rng);
  std::uniform_int_distribution<size_t> len_dist(min_len, std::min(max_len, pool.size()));
  pool.resize(len_dist(rng));
  return pool;
}

}  // namespace subtok::testutil
