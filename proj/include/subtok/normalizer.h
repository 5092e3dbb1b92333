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
#include <vector>

namespace subtok {

// Scripts with a contiguous decimal-digit block. Assamese shares the
// Bengali block.
enum class ScriptId {
  Latin,
  Devanagari,
  Bengali,
  Gurmukhi,
  Gujarati,
  Odia,
  Tamil,
  Telugu,
  Kannada,
  Malayalam,
  AssameseBengali,
};

char32_t digit_zero(ScriptId script);
std::optional<ScriptId> script_from_name(std::string_view name);
std::string script_name(ScriptId script);

// One switch per cleanup step. All steps independent; any subset may be
// enabled. normalize() applies the enabled steps in a fixed order so the
// result is idempotent under the same config.
struct NormalizationConfig {
  bool lowercase_latin = false;
  bool strip_latin_accents = false;
  bool map_extended_punctuation = false;
  std::optional<ScriptId> numeral_target;
  bool remove_nonprintable = false;
  bool collapse_whitespace = false;
  bool strip_redundant_quotes = false;
  bool canonicalize_indic = false;

  static NormalizationConfig all_on(std::optional<ScriptId> numeral = std::nullopt);
  static NormalizationConfig from_json_file(const std::string& path);
  static NormalizationConfig from_json_text(std::string_view json_text);
};

// Applies the enabled steps in order: nonprintable removal, punctuation
// mapping, accent stripping, Indic canonicalization, numeral conversion,
// lowercasing, quote stripping, whitespace collapse.
std::string normalize(std::string_view text, const NormalizationConfig& config);

// Replaces ASCII digits with the digit at the same offset in the target
// script's block. Latin target is the identity.
std::string convert_numerals(std::string_view text, ScriptId target);

// Removes combining marks attached to Latin base letters (after canonical
// decomposition of the letter itself). Marks on non-Latin bases, such as
// matras, halant and nukta, pass through untouched.
std::string strip_latin_accents(std::string_view text);

// Canonical composition (NFC) so visually identical halant/nukta sequences
// become byte-identical. Idempotent.
std::string canonicalize_indic(std::string_view text);

// Maximal non-whitespace runs, in order. Punctuation stays attached.
std::vector<std::string> pretokenize(std::string_view text);

// pretokenize plus splitting every punctuation code point into its own
// token. Used for metric tokenization.
std::vector<std::string> pretokenize_split_punct(std::string_view text);

}  // namespace subtok
