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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracles.h"
#include "subtok/errors.h"
#include "subtok/metrics.h"
#include "subtok/normalizer.h"
#include "testutil.h"

using namespace subtok;

namespace {

TokenSequence words(const std::string& joined) { return pretokenize(joined); }

}  // namespace

TEST_CASE("bleu identity and zero cases") {
  CHECK(bleu({{words("a b c d"), words("a b c d")}}) == doctest::Approx(100.0));
  CHECK(bleu({{words("x x x x"), words("a b c d")}}) == 0.0);
  CHECK_THROWS_AS(bleu({}), EmptyCorpusError);
}

TEST_CASE("bleu short segment caps the order to the hypothesis length") {
  const double score = bleu({{words("the cat sat"), words("the cat sat on the mat")}});
  CHECK(score == doctest::Approx(100.0 * std::exp(-1.0)).epsilon(1e-9));
}

TEST_CASE("bleu empty hypothesis scores zero") {
  CHECK(bleu({{TokenSequence{}, words("a b")}}) == 0.0);
}

TEST_CASE("bleu clips repeated n-grams") {
  // hyp repeats "the" 4 times, ref has it twice: p1 = 2/4.
  const double score = bleu({{words("the the the the"), words("the cat the mat")}}, 1);
  CHECK(score == doctest::Approx(50.0));
}

TEST_CASE("ter trivial and derived examples") {
  CHECK(ter(words("a b c"), words("a b c")).rate == 0.0);
  CHECK(ter(words("a X c d e"), words("a b c d e")).rate == doctest::Approx(0.2));
  const TerResult shifted = ter(words("c a b"), words("a b c"));
  CHECK(shifted.shifts == 1);
  CHECK(shifted.edits == 0);
  CHECK(shifted.rate == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("ter rejects an empty reference") {
  CHECK_THROWS_AS(ter(words("a"), {}), EmptyReferenceError);
}

TEST_CASE("ter empty hypothesis needs one deletion per reference word") {
  const TerResult r = ter({}, words("a b c"));
  CHECK(r.edits == 3);
  CHECK(r.rate == doctest::Approx(1.0));
}

TEST_CASE("greedy ter never beats the brute force optimum") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> len(1, 5);
  std::uniform_int_distribution<int> sym(0, 3);
  const std::vector<std::string> alphabet = {"w0", "w1", "w2", "w3"};
  int equal = 0;
  const int trials = 400;
  for (int trial = 0; trial < trials; ++trial) {
    TokenSequence hyp, ref;
    for (int i = len(rng); i > 0; --i) hyp.push_back(alphabet[sym(rng)]);
    for (int i = len(rng); i > 0; --i) ref.push_back(alphabet[sym(rng)]);
    const TerResult greedy = ter(hyp, ref);

    std::map<std::string, int> ids;
    std::vector<int> h, r;
    for (const auto& t : hyp) h.push_back(ids.emplace(t, (int)ids.size()).first->second);
    for (const auto& t : ref) r.push_back(ids.emplace(t, (int)ids.size()).first->second);
    const uint64_t optimal = oracles::brute_force_ter_edits(h, r);
    CHECK(greedy.shifts + greedy.edits >= optimal);
    if (greedy.shifts + greedy.edits == optimal) ++equal;
  }
  CHECK(equal >= trials * 95 / 100);
}

TEST_CASE("chrf trivial and derived examples") {
  CHECK(chrf("कहा", "कहा") == doctest::Approx(100.0));
  CHECK(chrf("abcd", "wxyz") == 0.0);
  // n=1: P=1 R=2/3; n=2: P=1 R=1/2; F beta=2 over P=1, R=7/12.
  CHECK(chrf("ab", "abc") == doctest::Approx(100.0 * 35.0 / 55.0).epsilon(1e-9));
  CHECK(chrf("", "") == 100.0);
  CHECK(chrf("", "abc") == 0.0);
}

TEST_CASE("chrf ignores whitespace") {
  CHECK(chrf("a b", "ab") == doctest::Approx(100.0));
}

TEST_CASE("chrf recall term never rises when appending junk to the hypothesis") {
  // Spot-check monotonicity: extra non-matching hypothesis characters can
  // only dilute precision, never add recall.
  const double base = chrf("abc", "abc");
  const double extended = chrf("abcqqq", "abc");
  CHECK(extended < base);
}

TEST_CASE("ribes trivial and derived examples") {
  CHECK(ribes(words("a b c d"), words("a b c d")) == doctest::Approx(1.0));
  CHECK(ribes(words("d c b a"), words("a b c d")) == 0.0);
  CHECK(ribes(words("a c b"), words("a b c")) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("ribes edge cases") {
  CHECK(ribes({}, words("a")) == 0.0);
  CHECK(ribes(words("a"), words("a")) == doctest::Approx(1.0));  // single-word identity
  CHECK(ribes(words("x"), words("a b")) == 0.0);                 // nothing aligns
}

TEST_CASE("kendall tau equals pair enumeration for all short permutations") {
  for (int n = 2; n <= 6; ++n) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    do {
      CHECK(kendall_tau(perm) == oracles::kendall_tau_ref(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("meteor trivial and derived examples") {
  // identity with 4 tokens: F=1, chunks=1, penalty=0.5/64.
  CHECK(meteor_exact(words("a b c d"), words("a b c d")) == doctest::Approx(0.9921875));
  CHECK(meteor_exact(words("x y"), words("a b")) == 0.0);
  CHECK(meteor_exact(words("b a"), words("a b")) == doctest::Approx(0.5));
}

TEST_CASE("meteor chunk minimization prefers contiguous runs") {
  // "a b" appears contiguous in the reference; matching it as one chunk
  // beats interleaved matchings.
  const double two_chunks = meteor_exact(words("a b d c"), words("a b c d"));
  const double one_chunk = meteor_exact(words("a b c d"), words("a b c d"));
  CHECK(one_chunk > two_chunks);

  // duplicates: hyp "a a" vs ref "a a" must match both in one chunk.
  CHECK(meteor_exact(words("a a"), words("a a")) == doctest::Approx(1.0 - 0.5 / 8.0));
}

TEST_CASE("meteor greedy path on references beyond the exact-search limit") {
  // 70 distinct tokens: the bitmask search only covers references up to 64
  // tokens, so this exercises the greedy matcher.
  TokenSequence long_seq;
  for (int i = 0; i < 70; ++i) long_seq.push_back("tok" + std::to_string(i));
  const double n = 70.0;
  CHECK(meteor_exact(long_seq, long_seq) == doctest::Approx(1.0 - 0.5 / (n * n * n)));

  TokenSequence reversed(long_seq.rbegin(), long_seq.rend());
  const double scrambled = meteor_exact(reversed, long_seq);
  CHECK(scrambled > 0.0);
  CHECK(scrambled < 1.0);
}

TEST_CASE("metric bounds hold on fuzzed inputs") {
  std::mt19937 rng(31);
  for (int i = 0; i < 300; ++i) {
    const TokenSequence hyp = testutil::random_tokens(rng, 0, 8);
    const TokenSequence ref = testutil::random_tokens(rng, 1, 8);
    const double r = ribes(hyp, ref);
    CHECK(r >= 0.0);
    CHECK(r <= 1.0);
    const double m = meteor_exact(hyp, ref);
    CHECK(m >= 0.0);
    CHECK(m <= 1.0);
    const TerResult t = ter(hyp, ref);
    CHECK(t.rate >= 0.0);
    std::string hyp_joined, ref_joined;
    for (const auto& w : hyp) hyp_joined += w + " ";
    for (const auto& w : ref) ref_joined += w + " ";
    const double c = chrf(hyp_joined, ref_joined);
    CHECK(c >= 0.0);
    CHECK(c <= 100.0);
    const double b = bleu({{hyp, ref}});
    CHECK(b >= 0.0);
    CHECK(b <= 100.0);
  }
}

TEST_CASE("ter numerator never falls when appending a junk token") {
  std::mt19937 rng(37);
  for (int i = 0; i < 100; ++i) {
    const TokenSequence ref = testutil::random_tokens(rng, 1, 6);
    TokenSequence hyp = testutil::random_tokens(rng, 0, 6);
    const TerResult before = ter(hyp, ref);
    hyp.push_back("zzz_unmatched");
    const TerResult after = ter(hyp, ref);
    CHECK(after.shifts + after.edits >= before.shifts + before.edits);
  }
}

TEST_CASE("score_corpus identity") {
  const std::vector<std::string> lines = {"यह खोज पूरी है ।", "the cat sat on a mat ."};
  const MetricScore score = score_corpus(lines, lines);
  CHECK(score.bleu == doctest::Approx(100.0));
  CHECK(score.ter == 0.0);
  CHECK(score.chrf == doctest::Approx(100.0));
  CHECK(score.ribes == doctest::Approx(1.0));
}

TEST_CASE("score_corpus micro-averages ter") {
  const std::vector<std::string> refs = {"a b c d e", "v w x y z"};
  const std::vector<std::string> hyps = {"a b c d e", "v w QQQ y z"};
  const MetricScore score = score_corpus(hyps, refs);
  CHECK(score.ter == doctest::Approx(10.0));
}

TEST_CASE("score_corpus rejects mismatched line counts") {
  CHECK_THROWS_AS(score_corpus({"a"}, {"a", "b"}), LineCountMismatchError);
}

TEST_CASE("score_corpus with empty hypothesis lines") {
  const std::vector<std::string> refs = {"a b c d"};
  const std::vector<std::string> hyps = {""};
  const MetricScore score = score_corpus(hyps, refs);
  CHECK(score.bleu == 0.0);
  CHECK(score.ter == doctest::Approx(100.0));
}

TEST_CASE("punctuation splitting changes tokenization mode") {
  const std::vector<std::string> refs = {"कहा, अब ठीक"};
  const std::vector<std::string> hyps = {"कहा , अब ठीक"};
  const MetricScore split = score_corpus(hyps, refs, MetricTokenization::WordSplitPunct);
  CHECK(split.ter == 0.0);  // both sides tokenize to the same 4 tokens
  const MetricScore plain = score_corpus(hyps, refs, MetricTokenization::WordPlain);
  CHECK(plain.ter > 0.0);  // "कहा," differs from "कहा" and ","
}
